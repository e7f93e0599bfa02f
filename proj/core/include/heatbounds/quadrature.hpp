#pragma once

#include <vector>

#include "heatbounds/domain.hpp"

namespace heatbounds::geo {

/// Quadrature rule on the unit sphere S_{m-1}. Weights are nonnegative and
/// sum to the sphere measure: 2 (m=1), 2*pi (m=2), 4*pi (m=3).
struct SphereQuadrature {
    int dim = 2;
    std::vector<Vec> directions;
    std::vector<double> weights;

    int size() const { return static_cast<int>(directions.size()); }
    double total_weight() const;
    double sphere_measure() const;  // area(S_{m-1}) for this->dim

    /// m=1: the two directions +1 and -1, weight 1 each.
    static SphereQuadrature line();

    /// m=2: uniform angles theta_k = phase + 2*pi*k/n, trapezoid weights.
    /// Spectrally accurate for smooth periodic integrands.
    static SphereQuadrature circle(int n = 256, double phase = 0.0);

    /// m=3: Fibonacci sphere with equal weights 4*pi/n.
    static SphereQuadrature fibonacci_sphere(int n = 512);

    /// Default rule for a given dimension (n = 0 picks the default size).
    static SphereQuadrature for_dimension(int m, int n = 0);

    void validate() const;  // unit directions, weight sum, nonnegativity
};

}  // namespace heatbounds::geo
