#include "heatbounds/heat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "heatbounds/errors.hpp"

namespace heatbounds::pde {

std::string to_string(TimeScheme scheme) {
    return scheme == TimeScheme::implicit_euler ? "implicit-euler" : "crank-nicolson";
}

TimeScheme time_scheme_from_string(const std::string& s) {
    if (s == "implicit-euler") return TimeScheme::implicit_euler;
    if (s == "crank-nicolson") return TimeScheme::crank_nicolson;
    throw std::invalid_argument("unknown time scheme: " + s);
}

void HeatContentCurve::validate() const {
    const double vol_tol = discrete_volume * 1e-12;
    double prev_t = 0.0;
    double prev_q = discrete_volume;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(t[i] > prev_t)) throw std::logic_error("heat content samples must be increasing in t");
        if (q[i] > prev_q + vol_tol) throw std::logic_error("heat content must be nonincreasing");
        if (q[i] < -vol_tol || q[i] > discrete_volume + vol_tol) {
            throw std::logic_error("heat content outside [0, vol]");
        }
        prev_t = t[i];
        prev_q = q[i];
    }
}

std::vector<double> heat_time_grid(std::span<const double> t_samples, double h, double dt0) {
    std::vector<double> grid;
    double prev = 0.0;
    for (double target : t_samples) {
        const double gap = target - prev;
        // Step scale grows with t so the work per decade stays flat.
        const double local = prev == 0.0 ? dt0 : std::min(std::max(dt0, prev / 20.0), h);
        const auto nsub = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(gap / local - 1e-9)));
        for (std::int64_t k = 1; k <= nsub; ++k) {
            grid.push_back(prev + gap * static_cast<double>(k) / static_cast<double>(nsub));
        }
        grid.back() = target;  // land exactly on the sample
        prev = target;
    }
    return grid;
}

HeatContentCurve heat_content(const Grid& grid, std::span<const double> t_samples,
                              const HeatOptions& options) {
    if (t_samples.empty()) throw std::invalid_argument("heat_content needs at least one sample time");
    double prev = 0.0;
    for (double t : t_samples) {
        if (!(t > prev)) throw std::invalid_argument("sample times must be positive and increasing");
        prev = t;
    }
    const double dt0 = options.dt > 0.0 ? options.dt : std::min(t_samples[0] / 20.0, grid.h);

    HeatContentCurve curve;
    curve.h = grid.h;
    curve.dt0 = dt0;
    curve.scheme = options.scheme;
    curve.discrete_volume = grid.cell_volume() * static_cast<double>(grid.n_active());
    if (grid.domain.kind == geo::DomainKind::horn) {
        curve.tail_volume = geo::horn_tail_volume(grid.domain.alpha, grid.domain.truncation);
    }

    const std::int64_t n = grid.n_active();
    const std::int64_t cg_cap = default_cg_cap(grid);
    Eigen::VectorXd u = Eigen::VectorXd::Ones(n);
    Eigen::VectorXd rhs(n);

    const std::vector<double> times = heat_time_grid(t_samples, grid.h, dt0);
    std::size_t next_sample = 0;
    double t_now = 0.0;
    for (double t_next : times) {
        const double dt = t_next - t_now;
        if (options.scheme == TimeScheme::implicit_euler) {
            // (I + dt*L) u_next = u; the M-matrix keeps u in [0,1].
            rhs = u;
            conjugate_gradient(grid, 1.0, dt, rhs, u, options.cg_rel_tol, cg_cap);
            double lo = 0.0, hi = 0.0;
            for (Eigen::Index i = 0; i < u.size(); ++i) {
                lo = std::min(lo, u[i]);
                hi = std::max(hi, u[i] - 1.0);
            }
            if (lo < -1e-8 || hi > 1e-8) {
                throw NumericalError("implicit Euler step left [0,1] beyond solver round-off",
                                     std::max(-lo, hi));
            }
            u = u.cwiseMax(0.0).cwiseMin(1.0);
        } else {
            // (I + dt/2*L) u_next = (I - dt/2*L) u
            grid.apply_operator(1.0, -0.5 * dt, u, rhs);
            conjugate_gradient(grid, 1.0, 0.5 * dt, rhs, u, options.cg_rel_tol, cg_cap);
        }
        t_now = t_next;
        if (options.step_observer) options.step_observer(t_now, u);
        if (next_sample < t_samples.size() && t_now == t_samples[next_sample]) {
            curve.t.push_back(t_now);
            curve.q.push_back(grid.cell_volume() * u.sum());
            double unc = 0.0;
            if (curve.tail_volume && std::isfinite(*curve.tail_volume)) unc = *curve.tail_volume;
            curve.abs_uncertainty.push_back(unc);
            ++next_sample;
        }
    }
    if (options.scheme == TimeScheme::implicit_euler) curve.validate();
    return curve;
}

}  // namespace heatbounds::pde
