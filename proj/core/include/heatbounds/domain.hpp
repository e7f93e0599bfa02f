#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace heatbounds::geo {

/// Point in R^m, m <= 3. Unused trailing coordinates are zero.
using Point = std::array<double, 3>;
using Vec = std::array<double, 3>;

enum class DomainKind { interval, rectangle, disk, convex_polygon, horn };

std::string to_string(DomainKind kind);
DomainKind domain_kind_from_string(const std::string& s);

struct BoundingBox {
    std::array<double, 3> lo{0, 0, 0};
    std::array<double, 3> hi{0, 0, 0};

    double edge(int axis) const { return hi[axis] - lo[axis]; }
    double min_edge(int dim) const;
    double diameter(int dim) const;
};

/// Implicit description of an open Euclidean region M0 in R^m, m in {1,2,3}.
///
/// Supported shapes: interval (0,L); axis-aligned rectangle/box with one
/// corner at the origin; disk/ball of radius R centered at the origin;
/// convex polygon in the plane; and the planar horn region
/// { (x1,x2) : x1 > 0, |x2| < (x1+1)^(-alpha) } truncated at x1 = L.
///
/// Points exactly on the boundary count as outside (open-set convention).
struct Domain {
    DomainKind kind = DomainKind::interval;
    int dim = 1;
    bool is_convex = false;
    bool is_simply_connected = false;
    BoundingBox bbox;

    // Shape parameters; which ones are meaningful depends on `kind`.
    std::array<double, 3> lengths{0, 0, 0};               // interval, rectangle
    double radius = 0;                                     // disk/ball
    std::vector<std::array<double, 2>> vertices;           // convex_polygon, CCW
    double alpha = 0;                                      // horn exponent
    double truncation = 0;                                 // horn cutoff L

    static Domain interval(double length);
    static Domain rectangle(std::span<const double> edge_lengths);
    static Domain disk(double radius, int dim = 2);
    static Domain convex_polygon(std::vector<std::array<double, 2>> verts);

    /// Horn with exponent alpha > 0, truncated at x1 = truncation.
    /// If tail_budget is given (only meaningful when alpha > 1), requires the
    /// analytic tail volume beyond the truncation to stay below the budget.
    static Domain horn(double alpha, double truncation,
                       std::optional<double> tail_budget = std::nullopt);

    double volume_analytic_hint() const;  // NaN when not known in closed form
};

/// Strict membership test for the open region M0.
bool inside(const Domain& domain, const Point& x);

/// Distance to the boundary of the (truncated) domain. Requires inside(x).
double boundary_distance(const Domain& domain, const Point& x);

/// Half-width (x1+1)^(-alpha) of the horn at abscissa x1.
double horn_half_width(double alpha, double x1);

/// Volume of the untruncated horn beyond x1 = truncation:
/// 2*int_L^inf (s+1)^(-alpha) ds. Infinite for alpha <= 1.
double horn_tail_volume(double alpha, double truncation);

/// Analytic volume of the full (untruncated) horn; infinite for alpha <= 1.
double horn_full_volume(double alpha);

void to_json(nlohmann::json& j, const Domain& domain);
void from_json(const nlohmann::json& j, Domain& domain);

}  // namespace heatbounds::geo
