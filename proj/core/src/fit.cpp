#include "heatbounds/fit.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace heatbounds::bounds {

SlopeFit least_squares_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("least squares needs matching arrays with >= 2 points");
    }
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("least squares: degenerate abscissae");
    SlopeFit fit;
    fit.samples = static_cast<int>(x.size());
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - fit.intercept - fit.slope * x[i];
        ss_res += r * r;
    }
    fit.std_error = x.size() > 2 ? std::sqrt(ss_res / (n - 2.0) / sxx) : 0.0;
    return fit;
}

SlopeFit fit_decay_exponent(const pde::HeatContentCurve& curve, double t_lo, double t_hi) {
    if (!(t_lo < t_hi)) throw std::invalid_argument("fit window must satisfy t_lo < t_hi");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (curve.t[i] < t_lo || curve.t[i] > t_hi) continue;
        if (!(curve.q[i] > 0.0)) {
            throw std::invalid_argument("fit window contains a nonpositive heat content sample");
        }
        lx.push_back(std::log(curve.t[i]));
        ly.push_back(std::log(curve.q[i]));
    }
    if (lx.size() < 5) {
        throw std::invalid_argument("fit window too narrow: fewer than 5 curve samples inside");
    }
    return least_squares_line(lx, ly);
}

double horn_predicted_exponent(double alpha) { return (alpha - 1.0) / (2.0 * alpha); }

SqrtFit fit_sqrt_coefficient(std::span<const double> t, std::span<const double> y) {
    if (t.size() != y.size() || t.size() < 2) {
        throw std::invalid_argument("sqrt fit needs matching arrays with >= 2 points");
    }
    // Normal equations for the basis {sqrt(t), t}.
    double s11 = 0, s12 = 0, s22 = 0, b1 = 0, b2 = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double f1 = std::sqrt(t[i]);
        const double f2 = t[i];
        s11 += f1 * f1;
        s12 += f1 * f2;
        s22 += f2 * f2;
        b1 += f1 * y[i];
        b2 += f2 * y[i];
    }
    const double det = s11 * s22 - s12 * s12;
    if (!(std::abs(det) > 0.0)) throw std::invalid_argument("sqrt fit: singular normal equations");
    SqrtFit fit;
    fit.sqrt_coefficient = (b1 * s22 - b2 * s12) / det;
    fit.linear_coefficient = (s11 * b2 - s12 * b1) / det;
    return fit;
}

}  // namespace heatbounds::bounds
