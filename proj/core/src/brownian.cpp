#include "heatbounds/brownian.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace heatbounds::pde {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

McEstimate mc_survival(const geo::Domain& domain, const geo::Point& x, double t, double dtau,
                       std::int64_t paths, std::uint64_t seed) {
    if (!geo::inside(domain, x)) {
        throw std::domain_error("mc_survival: start point is not inside the domain");
    }
    if (!(dtau > 0.0)) throw std::invalid_argument("mc_survival: dtau must be positive");
    if (paths < 100) throw std::invalid_argument("mc_survival: need at least 100 paths");
    if (!(t > 0.0)) throw std::invalid_argument("mc_survival: t must be positive");

    const auto nsteps = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround(t / dtau)));
    const double sigma = std::sqrt(2.0 * (t / static_cast<double>(nsteps)));

    std::int64_t survived = 0;
#pragma omp parallel for schedule(static) reduction(+ : survived)
    for (std::int64_t p = 0; p < paths; ++p) {
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(p) + 1)));
        std::normal_distribution<double> gauss(0.0, sigma);
        geo::Point pos = x;
        bool alive = true;
        for (std::int64_t s = 0; s < nsteps && alive; ++s) {
            for (int k = 0; k < domain.dim; ++k) pos[k] += gauss(rng);
            alive = geo::inside(domain, pos);
        }
        if (alive) ++survived;
    }

    McEstimate est;
    est.paths = paths;
    est.value = static_cast<double>(survived) / static_cast<double>(paths);
    est.std_error = std::sqrt(std::max(est.value * (1.0 - est.value), 1.0 / static_cast<double>(paths)) /
                              static_cast<double>(paths));
    return est;
}

}  // namespace heatbounds::pde
