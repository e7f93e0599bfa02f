#pragma once

#include <cstdint>

#include "heatbounds/domain.hpp"

namespace heatbounds::pde {

struct McEstimate {
    double value = 0;      // surviving fraction, estimates u(x;t)
    double std_error = 0;  // binomial standard error
    std::int64_t paths = 0;
};

/// Monte Carlo estimate of the survival probability u(x;t) of Brownian motion
/// killed on the boundary. The heat equation here uses generator Delta (not
/// Delta/2), so each Euler-Maruyama step adds variance 2*dtau per coordinate.
/// A path dies the first time a step lands outside the open domain.
/// Per-path RNG streams are derived from (seed, path index), making the
/// result independent of evaluation order.
McEstimate mc_survival(const geo::Domain& domain, const geo::Point& x, double t, double dtau,
                       std::int64_t paths, std::uint64_t seed);

}  // namespace heatbounds::pde
