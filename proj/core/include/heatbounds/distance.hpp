#pragma once

#include <functional>

#include "heatbounds/domain.hpp"
#include "heatbounds/grid.hpp"
#include "heatbounds/quadrature.hpp"

namespace heatbounds::geo {

enum class FieldKind { delta, rho };

std::string to_string(FieldKind which);

/// Distance from x to the boundary along the line through x with direction u,
/// minimized over both signs (Eq. d_u convention). May return +infinity when
/// neither ray meets the boundary.
///
/// For a truncated horn the truncation face is transparent here: rays leaving
/// through it are continued against the analytic (untruncated) horn boundary.
double directional_distance(const Domain& domain, const Point& x, const Vec& u);

/// Harmonic-in-square angular mean of the directional distance:
/// rho(x) = [ mean over S_{m-1} of 1/d_u(x)^2 ]^{-1/2}.
/// Directions with d_u = infinity contribute zero to the mean.
double mean_distance(const Domain& domain, const Point& x, const SphereQuadrature& quad);

/// Midpoint-rule integral of f^beta over the (truncated) domain, where f is
/// the delta or rho field. Cells count when their center is inside. beta = 0
/// gives the discrete volume without evaluating f.
double moment_integral(const Domain& domain, FieldKind which, double beta, double h,
                       const SphereQuadrature* quad = nullptr);

/// Midpoint-rule volume of { x in M : f(x) < eps }. eps = infinity gives the
/// full discrete volume via the identical summation as moment_integral(0).
double sublevel_volume(const Domain& domain, FieldKind which, double eps, double h,
                       const SphereQuadrature* quad = nullptr);

/// Field values at the midpoint-rule cell centers that lie inside, in the
/// fixed cell order used by moment_integral and sublevel_volume. Lets callers
/// evaluate many moments or thresholds from one field computation.
std::vector<double> cell_field_values(const Domain& domain, FieldKind which, double h,
                                      const SphereQuadrature* quad = nullptr);

double moment_from_cells(std::span<const double> values, double cell_volume, double beta);
double sublevel_from_cells(std::span<const double> values, double cell_volume, double eps);

/// delta or rho sampled on the active nodes of a grid.
struct DistanceField {
    FieldKind which = FieldKind::delta;
    pde::ScalarField field;

    void validate() const;  // positivity (and rho >= delta is checked at build)
};

DistanceField compute_distance_field(const Domain& domain, std::shared_ptr<const pde::Grid> grid,
                                     FieldKind which, const SphereQuadrature* quad = nullptr);

}  // namespace heatbounds::geo
