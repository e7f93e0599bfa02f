// Analytic series oracles for the model domains, independent of the solver
// implementations they are used to check.
#pragma once

#include <cmath>

namespace oracles {

// Heat content of the interval (0, L): L * sum over odd k of
// 8/(pi^2 k^2) exp(-k^2 pi^2 t / L^2).
inline double q_interval(double t, double length = 1.0) {
    double acc = 0.0;
    for (int k = 1; k < 2000; k += 2) {
        acc += 8.0 / (M_PI * M_PI * k * k) *
               std::exp(-k * k * M_PI * M_PI * t / (length * length));
    }
    return length * acc;
}

// Temperature at an interior point of the unit interval.
inline double u_interval(double x, double t) {
    double acc = 0.0;
    for (int k = 1; k < 800; k += 2) {
        acc += 4.0 / (k * M_PI) * std::sin(k * M_PI * x) * std::exp(-k * k * M_PI * M_PI * t);
    }
    return acc;
}

// Dirichlet heat trace of the unit interval: sum exp(-k^2 pi^2 t).
inline double trace_interval(double t) {
    double acc = 0.0;
    for (int k = 1; k < 2000; ++k) {
        const double term = std::exp(-static_cast<double>(k) * k * M_PI * M_PI * t);
        acc += term;
        if (term < 1e-18) break;
    }
    return acc;
}

// Bessel J0 by its power series; accurate for the |x| < 4 range used here.
inline double bessel_j0(double x) {
    const double q = x * x / 4.0;
    double term = 1.0, acc = 1.0;
    for (int k = 1; k < 60; ++k) {
        term *= -q / (k * static_cast<double>(k));
        acc += term;
    }
    return acc;
}

// First zero of J0 by bisection on the series.
inline double bessel_j0_first_zero() {
    double lo = 2.0, hi = 3.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (bessel_j0(lo) * bessel_j0(mid) <= 0.0) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

// Torsional rigidity of the unit square via the classical double Fourier
// series (64/pi^6) sum over odd m,n of 1/(m^2 n^2 (m^2+n^2)); the frozen
// value below was cross-checked against the single-series cosh form.
inline constexpr double kSquareRigidity = 0.035144253738132875;

// Max of the square torsion function (series value at the center).
inline constexpr double kSquareTorsionSup = 0.0736713532815138;

}  // namespace oracles
