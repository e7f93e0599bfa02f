#include "heatbounds/quadrature.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace heatbounds::geo {

double SphereQuadrature::total_weight() const {
    return std::accumulate(weights.begin(), weights.end(), 0.0);
}

double SphereQuadrature::sphere_measure() const {
    switch (dim) {
        case 1: return 2.0;
        case 2: return 2.0 * M_PI;
        case 3: return 4.0 * M_PI;
        default: throw std::invalid_argument("sphere quadrature dimension must be 1, 2 or 3");
    }
}

SphereQuadrature SphereQuadrature::line() {
    SphereQuadrature q;
    q.dim = 1;
    q.directions = {{1, 0, 0}, {-1, 0, 0}};
    q.weights = {1.0, 1.0};
    return q;
}

SphereQuadrature SphereQuadrature::circle(int n, double phase) {
    if (n < 4) throw std::invalid_argument("circle quadrature needs at least 4 nodes");
    SphereQuadrature q;
    q.dim = 2;
    q.directions.reserve(n);
    q.weights.assign(n, 2.0 * M_PI / n);
    for (int k = 0; k < n; ++k) {
        const double theta = phase + 2.0 * M_PI * k / n;
        q.directions.push_back({std::cos(theta), std::sin(theta), 0});
    }
    return q;
}

SphereQuadrature SphereQuadrature::fibonacci_sphere(int n) {
    if (n < 8) throw std::invalid_argument("fibonacci sphere needs at least 8 nodes");
    SphereQuadrature q;
    q.dim = 3;
    q.directions.reserve(n);
    q.weights.assign(n, 4.0 * M_PI / n);
    const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < n; ++k) {
        const double z = 1.0 - (2.0 * k + 1.0) / n;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden_angle * k;
        q.directions.push_back({r * std::cos(phi), r * std::sin(phi), z});
    }
    return q;
}

SphereQuadrature SphereQuadrature::for_dimension(int m, int n) {
    switch (m) {
        case 1: return line();
        case 2: return circle(n > 0 ? n : 256);
        case 3: return fibonacci_sphere(n > 0 ? n : 512);
        default: throw std::invalid_argument("sphere quadrature dimension must be 1, 2 or 3");
    }
}

void SphereQuadrature::validate() const {
    if (directions.size() != weights.size()) {
        throw std::invalid_argument("quadrature direction/weight count mismatch");
    }
    for (const auto& u : directions) {
        const double norm = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
        if (std::abs(norm - 1.0) > 1e-12) {
            throw std::invalid_argument("quadrature direction is not unit length");
        }
    }
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("quadrature weight is negative");
    }
    const double sum = total_weight();
    if (std::abs(sum - sphere_measure()) > 1e-12 * sphere_measure()) {
        throw std::invalid_argument("quadrature weights do not sum to the sphere measure");
    }
}

}  // namespace heatbounds::geo
