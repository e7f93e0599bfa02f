#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "heatbounds/grid.hpp"

namespace heatbounds::pde {

enum class TimeScheme { implicit_euler, crank_nicolson };

std::string to_string(TimeScheme scheme);
TimeScheme time_scheme_from_string(const std::string& s);

/// Sampled heat content Q(t) = h^m * sum(u) with discretization metadata.
struct HeatContentCurve {
    std::vector<double> t;
    std::vector<double> q;
    std::vector<double> abs_uncertainty;  // per-sample; tail bound plus any refinement margin

    double h = 0;
    double dt0 = 0;   // step used up to the first sample
    TimeScheme scheme = TimeScheme::implicit_euler;
    double discrete_volume = 0;
    std::optional<double> tail_volume;  // truncated horn only; may be infinite

    std::size_t size() const { return t.size(); }
    void validate() const;  // t increasing, q nonincreasing, 0 <= q <= volume
};

struct HeatOptions {
    double dt = 0;  // 0 = policy min(t1/20, h)
    TimeScheme scheme = TimeScheme::implicit_euler;
    double cg_rel_tol = 1e-10;
    /// Called after every accepted time step with (t, u).
    std::function<void(double, const Eigen::VectorXd&)> step_observer;
};

/// Evolves u0 = 1 under the discrete Dirichlet heat semigroup and samples the
/// heat content at the requested times. Implicit Euler keeps 0 <= u <= 1
/// (values are checked, then snapped onto [0,1] to absorb iterative-solver
/// round-off); Crank-Nicolson is available for accuracy studies and is exempt
/// from that check.
HeatContentCurve heat_content(const Grid& grid, std::span<const double> t_samples,
                              const HeatOptions& options = {});

/// The time grid the stepper will use: step min(t1/20, h) up to the first
/// sample, then geometrically growing steps (about t/20, still capped by h)
/// between consecutive samples, always landing on each sample exactly.
std::vector<double> heat_time_grid(std::span<const double> t_samples, double h, double dt0);

}  // namespace heatbounds::pde
