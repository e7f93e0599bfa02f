#include "heatbounds/spectral.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "heatbounds/errors.hpp"

namespace heatbounds::pde {

double principal_eigenvalue(const Grid& grid, double rel_tol, int max_outer) {
    const std::int64_t n = grid.n_active();
    if (n == 0) throw std::invalid_argument("principal_eigenvalue: empty grid");
    // CG terminates in at most n steps in exact arithmetic; allow some slack
    // on top of the usual cap for the ill-conditioned pure-Laplacian solve.
    const std::int64_t cg_cap = std::max<std::int64_t>(default_cg_cap(grid), 2 * n);

    Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
    x /= x.norm();
    Eigen::VectorXd y = x;
    Eigen::VectorXd lx(n);
    double lambda_prev = 0.0;
    for (int it = 1; it <= max_outer; ++it) {
        conjugate_gradient(grid, 0.0, 1.0, x, y, 1e-12, cg_cap);
        y /= y.norm();
        grid.apply_operator(0.0, 1.0, y, lx);
        const double lambda = y.dot(lx);
        if (it > 1 && std::abs(lambda - lambda_prev) <= rel_tol * std::abs(lambda)) {
            return lambda;
        }
        lambda_prev = lambda;
        x = y;
    }
    throw NumericalError("inverse power iteration exhausted its iteration cap", lambda_prev);
}

std::vector<double> dirichlet_spectrum(const Grid& grid) {
    const std::int64_t n = grid.n_active();
    if (n == 0) throw std::invalid_argument("dirichlet_spectrum: empty grid");
    if (n > kDenseSpectrumCap) {
        throw CapacityError("dense spectrum limited to 4096 active nodes; use a coarser h");
    }
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    const double inv_h2 = 1.0 / (grid.h * grid.h);
    const int stride = 2 * grid.dim;
    for (std::int64_t i = 0; i < n; ++i) {
        a(i, i) = 2.0 * grid.dim * inv_h2;
        for (int k = 0; k < stride; ++k) {
            const std::int32_t j = grid.neighbors[static_cast<std::size_t>(i * stride + k)];
            if (j >= 0) a(i, j) = -inv_h2;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("dense eigendecomposition failed", 0.0);
    }
    std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    return out;
}

double trace_from_spectrum(std::span<const double> spectrum, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("heat trace requires t > 0");
    double acc = 0.0;
    for (double lambda : spectrum) acc += std::exp(-lambda * t);
    return acc;
}

double heat_trace(const Grid& grid, double t) {
    const std::vector<double> spec = dirichlet_spectrum(grid);
    return trace_from_spectrum(spec, t);
}

void SpectralSummary::validate() const {
    if (!(lambda > 0.0)) throw std::logic_error("principal eigenvalue must be positive");
    double prev_t = 0.0;
    double prev_trace = std::numeric_limits<double>::infinity();
    for (const auto& [t, tr, unc] : trace_samples) {
        if (!(t > prev_t)) throw std::logic_error("trace samples must be increasing in t");
        if (!(tr < prev_trace)) throw std::logic_error("heat trace must decrease in t");
        if (tr < std::exp(-lambda * t)) {
            throw std::logic_error("heat trace fell below the principal-eigenvalue term");
        }
        prev_t = t;
        prev_trace = tr;
    }
}

}  // namespace heatbounds::pde
