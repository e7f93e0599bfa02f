#pragma once

#include <span>

#include "heatbounds/heat.hpp"

namespace heatbounds::bounds {

struct SlopeFit {
    double slope = 0;
    double intercept = 0;
    double std_error = 0;  // standard error of the slope
    int samples = 0;
};

/// Ordinary least squares y = intercept + slope * x.
SlopeFit least_squares_line(std::span<const double> x, std::span<const double> y);

/// Slope of log Q versus log t over the samples of the curve that fall in
/// [t_lo, t_hi]. Needs at least 5 samples in the window and positive Q.
SlopeFit fit_decay_exponent(const pde::HeatContentCurve& curve, double t_lo, double t_hi);

/// Predicted horn decay exponent (alpha-1)/(2*alpha).
double horn_predicted_exponent(double alpha);

struct SqrtFit {
    double sqrt_coefficient = 0;  // a in y = a*sqrt(t) + b*t
    double linear_coefficient = 0;
};

/// Two-term small-time fit y(t) = a*sqrt(t) + b*t, by least squares. Used to
/// read off the boundary-area coefficient of vol - Q(t).
SqrtFit fit_sqrt_coefficient(std::span<const double> t, std::span<const double> y);

}  // namespace heatbounds::bounds
