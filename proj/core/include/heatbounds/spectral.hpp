#pragma once

#include <span>
#include <vector>

#include "heatbounds/grid.hpp"

namespace heatbounds::pde {

/// Hard cap on n_active for the dense eigendecomposition behind heat_trace.
inline constexpr std::int64_t kDenseSpectrumCap = 4096;

/// Smallest eigenvalue of the discrete Dirichlet Laplacian, by inverse power
/// iteration with CG inner solves. Relative eigenvalue tolerance rel_tol;
/// throws NumericalError past max_outer iterations.
double principal_eigenvalue(const Grid& grid, double rel_tol = 1e-8, int max_outer = 500);

/// Full spectrum of -Delta_h on the active set (ascending). Dense solve;
/// throws CapacityError when n_active exceeds kDenseSpectrumCap.
std::vector<double> dirichlet_spectrum(const Grid& grid);

double trace_from_spectrum(std::span<const double> spectrum, double t);

/// trace(e^{t*Delta_h}) = sum_i exp(-lambda_i t) over the full discrete
/// spectrum. Prefer dirichlet_spectrum + trace_from_spectrum when several
/// times are needed.
double heat_trace(const Grid& grid, double t);

struct SpectralSummary {
    double lambda = 0;                          // principal eigenvalue
    std::vector<double> spectrum;               // optional, small grids only
    std::vector<std::array<double, 3>> trace_samples;  // (t, trace, abs_uncertainty)

    void validate() const;  // lambda > 0, trace decreasing, trace >= exp(-lambda t)
};

}  // namespace heatbounds::pde
