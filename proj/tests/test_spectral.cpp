#include <doctest.h>

#include <cmath>

#include "heatbounds/errors.hpp"
#include "heatbounds/heat.hpp"
#include "heatbounds/spectral.hpp"
#include "oracles.hpp"

using namespace heatbounds;
using geo::Domain;

TEST_CASE("principal eigenvalue analytic oracles") {
    const auto iv = pde::build_grid(Domain::interval(1.0), 1.0 / 256);
    CHECK(pde::principal_eigenvalue(*iv) == doctest::Approx(M_PI * M_PI).epsilon(0.01));

    const auto sq = pde::build_grid(Domain::rectangle(std::vector<double>{1.0, 1.0}), 1.0 / 96);
    CHECK(pde::principal_eigenvalue(*sq) == doctest::Approx(2.0 * M_PI * M_PI).epsilon(0.01));

    const double j01 = oracles::bessel_j0_first_zero();
    CHECK(j01 == doctest::Approx(2.404825557695773).epsilon(1e-12));
    const auto disk = pde::build_grid(Domain::disk(1.0), 1.0 / 96);
    CHECK(pde::principal_eigenvalue(*disk) == doctest::Approx(j01 * j01).epsilon(0.015));
}

TEST_CASE("heat trace against the interval series") {
    const auto grid = pde::build_grid(Domain::interval(1.0), 1.0 / 128);
    CHECK(pde::heat_trace(*grid, 0.05) ==
          doctest::Approx(oracles::trace_interval(0.05)).epsilon(0.01));
}

TEST_CASE("heat trace monotonicity and eigenvalue floor") {
    const auto grid = pde::build_grid(Domain::rectangle(std::vector<double>{1.0, 1.0}), 1.0 / 24);
    const auto spectrum = pde::dirichlet_spectrum(*grid);
    const double lambda = pde::principal_eigenvalue(*grid);
    CHECK(spectrum.front() == doctest::Approx(lambda).epsilon(1e-6));

    double prev = std::numeric_limits<double>::infinity();
    for (double t : {0.01, 0.02, 0.05, 0.1, 0.5, 1.0}) {
        const double tr = pde::trace_from_spectrum(spectrum, t);
        CHECK(tr < prev);
        CHECK(tr >= std::exp(-lambda * t));
        prev = tr;
    }

    pde::SpectralSummary summary;
    summary.lambda = lambda;
    summary.spectrum = spectrum;
    for (double t : {0.05, 0.1, 0.2}) {
        summary.trace_samples.push_back({t, pde::trace_from_spectrum(spectrum, t), 0.0});
    }
    CHECK_NOTHROW(summary.validate());
}

TEST_CASE("heat kernel sup bound dominates the trace on compact kinds") {
    // trace(t) <= (4 pi t)^(-m/2) vol(M) up to the discretization margin.
    const auto grid = pde::build_grid(Domain::rectangle(std::vector<double>{1.0, 1.0}), 1.0 / 48);
    const auto spectrum = pde::dirichlet_spectrum(*grid);
    const double vol = grid->cell_volume() * static_cast<double>(grid->n_active());
    for (double t : {0.02, 0.05, 0.1}) {
        const double tr = pde::trace_from_spectrum(spectrum, t);
        const double cap = std::pow(4.0 * M_PI * t, -1.0) * vol;
        CHECK(tr <= cap * 1.05);
    }
}

TEST_CASE("dense spectrum capacity cap") {
    const auto big = pde::build_grid(Domain::rectangle(std::vector<double>{1.0, 1.0}), 1.0 / 80);
    REQUIRE(big->n_active() > pde::kDenseSpectrumCap);
    CHECK_THROWS_AS(pde::dirichlet_spectrum(*big), CapacityError);
    CHECK_THROWS_AS(pde::heat_trace(*big, 0.1), CapacityError);

    const auto ok = pde::build_grid(Domain::rectangle(std::vector<double>{1.0, 1.0}), 1.0 / 64);
    REQUIRE(ok->n_active() <= pde::kDenseSpectrumCap);
    CHECK_NOTHROW(pde::dirichlet_spectrum(*ok));
}

TEST_CASE("known square spectrum shows up in the dense solve") {
    const auto grid = pde::build_grid(Domain::rectangle(std::vector<double>{1.0, 1.0}), 1.0 / 32);
    const auto spectrum = pde::dirichlet_spectrum(*grid);
    // Discrete eigenvalues of the 5-point stencil on the aligned unit square:
    // (4/h^2)(sin^2(m pi h/2) + sin^2(n pi h/2)).
    const double h = 1.0 / 32;
    auto discrete = [h](int m, int n) {
        auto s = [h](int k) {
            const double v = std::sin(k * M_PI * h / 2.0);
            return v * v;
        };
        return 4.0 / (h * h) * (s(m) + s(n));
    };
    CHECK(spectrum[0] == doctest::Approx(discrete(1, 1)).epsilon(1e-10));
    CHECK(spectrum[1] == doctest::Approx(discrete(1, 2)).epsilon(1e-10));
    CHECK(spectrum[2] == doctest::Approx(discrete(2, 1)).epsilon(1e-10));
}
