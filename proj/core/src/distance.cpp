#include "heatbounds/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace heatbounds::geo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double cross2(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

// First boundary crossing along the ray x + t*d, t > 0, for shapes with a
// closed-form intersection. Directions are unit length.
double ray_exit_interval(const Domain& dom, const Point& x, const Vec& d) {
    double t = kInf;
    for (int k = 0; k < dom.dim; ++k) {
        if (d[k] > 0.0) t = std::min(t, (dom.lengths[k] - x[k]) / d[k]);
        else if (d[k] < 0.0) t = std::min(t, -x[k] / d[k]);
    }
    return t;
}

double ray_exit_ball(const Domain& dom, const Point& x, const Vec& d) {
    double xd = 0.0, x2 = 0.0;
    for (int k = 0; k < dom.dim; ++k) {
        xd += x[k] * d[k];
        x2 += x[k] * x[k];
    }
    const double disc = xd * xd + dom.radius * dom.radius - x2;
    return -xd + std::sqrt(std::max(disc, 0.0));
}

double ray_exit_polygon(const Domain& dom, const Point& x, const Vec& d) {
    const auto& v = dom.vertices;
    double t_min = kInf;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& a = v[i];
        const auto& b = v[(i + 1) % v.size()];
        const double ex = b[0] - a[0], ey = b[1] - a[1];
        const double denom = cross2(d[0], d[1], ex, ey);
        if (denom == 0.0) continue;  // parallel to the edge
        const double wx = a[0] - x[0], wy = a[1] - x[1];
        const double t = cross2(wx, wy, ex, ey) / denom;
        const double s = cross2(wx, wy, d[0], d[1]) / denom;
        if (t > 0.0 && s >= 0.0 && s <= 1.0) t_min = std::min(t_min, t);
    }
    return t_min;
}

// Membership in the analytic (untruncated) horn; the truncation face is
// transparent for directional distances.
bool horn_inside_analytic(double alpha, double x1, double x2) {
    return x1 > 0.0 && std::abs(x2) < horn_half_width(alpha, x1);
}

double ray_exit_horn(const Domain& dom, const Point& x, const Vec& d, double march_step) {
    const double alpha = dom.alpha;
    // Horizontal rays admit a closed form: the half-width is monotone in x1.
    if (d[1] == 0.0) {
        if (d[0] > 0.0) {
            if (x[1] == 0.0) return kInf;  // the ray runs down the cusp forever
            return std::pow(std::abs(x[1]), -1.0 / alpha) - x[0] - 1.0;
        }
        return x[0] / -d[0];  // wall hit; |x2| < 1 lands on the wall segment
    }

    double t_cap;
    if (d[0] >= 0.0) {
        // Width only shrinks ahead, so once |x2 + t*d2| reaches the current
        // width the ray must be outside.
        t_cap = (horn_half_width(alpha, x[0]) + std::abs(x[1])) / std::abs(d[1]);
    } else {
        t_cap = std::min(x[0] / -d[0], (1.0 + std::abs(x[1])) / std::abs(d[1]));
    }
    t_cap += 2.0 * march_step;

    const std::int64_t steps = static_cast<std::int64_t>(std::ceil(t_cap / march_step));
    double t_in = 0.0;
    double t_out = -1.0;
    for (std::int64_t k = 1; k <= steps; ++k) {
        const double t = static_cast<double>(k) * march_step;
        if (!horn_inside_analytic(alpha, x[0] + t * d[0], x[1] + t * d[1])) {
            t_out = t;
            break;
        }
        t_in = t;
    }
    if (t_out < 0.0) return kInf;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (t_in + t_out);
        if (horn_inside_analytic(alpha, x[0] + mid * d[0], x[1] + mid * d[1])) t_in = mid;
        else t_out = mid;
    }
    return 0.5 * (t_in + t_out);
}

double ray_exit(const Domain& dom, const Point& x, const Vec& d, double march_step) {
    switch (dom.kind) {
        case DomainKind::interval:
        case DomainKind::rectangle: return ray_exit_interval(dom, x, d);
        case DomainKind::disk: return ray_exit_ball(dom, x, d);
        case DomainKind::convex_polygon: return ray_exit_polygon(dom, x, d);
        case DomainKind::horn: return ray_exit_horn(dom, x, d, march_step);
    }
    return kInf;
}

double march_step_for(const Domain& dom) { return dom.bbox.min_edge(dom.dim) / 64.0; }

struct CellLattice {
    std::array<double, 3> lo{0, 0, 0};
    std::array<std::int64_t, 3> ncells{1, 1, 1};
    std::int64_t total = 1;
    int dim = 1;
    double h = 0;

    Point center(std::int64_t flat) const {
        Point c{0, 0, 0};
        std::int64_t rest = flat;
        for (int k = 0; k < dim; ++k) {
            c[k] = lo[k] + h * (static_cast<double>(rest % ncells[k]) + 0.5);
            rest /= ncells[k];
        }
        return c;
    }
};

CellLattice make_cell_lattice(const Domain& dom, double h) {
    CellLattice lat;
    lat.dim = dom.dim;
    lat.h = h;
    for (int k = 0; k < dom.dim; ++k) {
        lat.lo[k] = dom.bbox.lo[k];
        lat.ncells[k] = std::max<std::int64_t>(
            1, static_cast<std::int64_t>(std::ceil(dom.bbox.edge(k) / h - 1e-12)));
        lat.total *= lat.ncells[k];
    }
    return lat;
}

std::vector<std::int64_t> inside_cell_indices(const Domain& dom, const CellLattice& lat) {
    std::vector<std::int64_t> cells;
    for (std::int64_t flat = 0; flat < lat.total; ++flat) {
        if (inside(dom, lat.center(flat))) cells.push_back(flat);
    }
    return cells;
}

// Shared accumulation for moment_integral and sublevel_volume: sums
// cell_term(f) over inside cells in index order, then scales by h^m once.
// The beta = 0, eps = inf and eps >= sup f paths all reduce to the count of
// inside cells times h^m, so they agree exactly.
double integrate_cells(const Domain& dom, FieldKind which, double h,
                       const SphereQuadrature* quad,
                       const std::function<double(double)>& cell_term, bool needs_field) {
    if (!(h > 0.0)) throw std::invalid_argument("integration resolution h must be positive");
    if (!needs_field) {
        const CellLattice lat = make_cell_lattice(dom, h);
        return static_cast<double>(inside_cell_indices(dom, lat).size()) * std::pow(h, dom.dim);
    }
    const std::vector<double> values = cell_field_values(dom, which, h, quad);
    double acc = 0.0;
    for (double f : values) acc += cell_term(f);
    return acc * std::pow(h, dom.dim);
}

}  // namespace

std::string to_string(FieldKind which) {
    return which == FieldKind::delta ? "delta" : "rho";
}

double directional_distance(const Domain& domain, const Point& x, const Vec& u) {
    if (!inside(domain, x)) {
        throw std::domain_error("directional_distance: point is not inside the domain");
    }
    double norm2 = 0.0;
    for (int k = 0; k < domain.dim; ++k) norm2 += u[k] * u[k];
    for (int k = domain.dim; k < 3; ++k) {
        if (u[k] != 0.0) throw std::invalid_argument("direction has components beyond the dimension");
    }
    if (std::abs(norm2 - 1.0) > 1e-9) {
        throw std::invalid_argument("direction must be a unit vector");
    }
    const double step = march_step_for(domain);
    const double forward = ray_exit(domain, x, u, step);
    Vec back{-u[0], -u[1], -u[2]};
    const double backward = ray_exit(domain, x, back, step);
    return std::min(forward, backward);
}

double mean_distance(const Domain& domain, const Point& x, const SphereQuadrature& quad) {
    if (quad.dim != domain.dim) {
        throw std::invalid_argument("quadrature dimension does not match the domain");
    }
    if (!inside(domain, x)) {
        throw std::domain_error("mean_distance: point is not inside the domain");
    }
    const double step = march_step_for(domain);
    double acc = 0.0;
    for (int i = 0; i < quad.size(); ++i) {
        const double t_fwd = ray_exit(domain, x, quad.directions[static_cast<std::size_t>(i)], step);
        const auto& u = quad.directions[static_cast<std::size_t>(i)];
        Vec back{-u[0], -u[1], -u[2]};
        const double d = std::min(t_fwd, ray_exit(domain, x, back, step));
        if (std::isfinite(d)) acc += quad.weights[static_cast<std::size_t>(i)] / (d * d);
    }
    if (acc == 0.0) return kInf;
    return std::sqrt(quad.sphere_measure() / acc);
}

double moment_integral(const Domain& domain, FieldKind which, double beta, double h,
                       const SphereQuadrature* quad) {
    if (beta < 0.0) throw std::invalid_argument("moment exponent beta must be >= 0");
    if (beta == 0.0) {
        return integrate_cells(domain, which, h, quad, [](double) { return 1.0; }, false);
    }
    return integrate_cells(domain, which, h, quad,
                           [beta](double f) { return std::pow(f, beta); }, true);
}

double sublevel_volume(const Domain& domain, FieldKind which, double eps, double h,
                       const SphereQuadrature* quad) {
    if (!(eps > 0.0)) throw std::invalid_argument("sublevel threshold must be positive");
    if (std::isinf(eps)) {
        return integrate_cells(domain, which, h, quad, [](double) { return 1.0; }, false);
    }
    return integrate_cells(domain, which, h, quad,
                           [eps](double f) { return f < eps ? 1.0 : 0.0; }, true);
}

std::vector<double> cell_field_values(const Domain& domain, FieldKind which, double h,
                                      const SphereQuadrature* quad) {
    if (!(h > 0.0)) throw std::invalid_argument("integration resolution h must be positive");
    const CellLattice lat = make_cell_lattice(domain, h);
    const std::vector<std::int64_t> cells = inside_cell_indices(domain, lat);

    SphereQuadrature local_quad;
    if (which == FieldKind::rho && quad == nullptr) {
        local_quad = SphereQuadrature::for_dimension(domain.dim);
        quad = &local_quad;
    }
    std::vector<double> values(cells.size());
    const std::int64_t n = static_cast<std::int64_t>(cells.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < n; ++i) {
        const Point c = lat.center(cells[static_cast<std::size_t>(i)]);
        values[static_cast<std::size_t>(i)] =
            which == FieldKind::delta ? boundary_distance(domain, c)
                                      : mean_distance(domain, c, *quad);
    }
    return values;
}

double moment_from_cells(std::span<const double> values, double cell_volume, double beta) {
    double acc = 0.0;
    if (beta == 0.0) return static_cast<double>(values.size()) * cell_volume;
    for (double f : values) acc += std::pow(f, beta);
    return acc * cell_volume;
}

double sublevel_from_cells(std::span<const double> values, double cell_volume, double eps) {
    if (std::isinf(eps)) return static_cast<double>(values.size()) * cell_volume;
    double acc = 0.0;
    for (double f : values) acc += f < eps ? 1.0 : 0.0;
    return acc * cell_volume;
}

void DistanceField::validate() const {
    for (Eigen::Index i = 0; i < field.values.size(); ++i) {
        if (!(field.values[i] > 0.0)) {
            throw std::logic_error("distance field must be strictly positive on active nodes");
        }
    }
}

DistanceField compute_distance_field(const Domain& domain, std::shared_ptr<const pde::Grid> grid,
                                     FieldKind which, const SphereQuadrature* quad) {
    SphereQuadrature local_quad;
    if (which == FieldKind::rho && quad == nullptr) {
        local_quad = SphereQuadrature::for_dimension(domain.dim);
        quad = &local_quad;
    }
    DistanceField out;
    out.which = which;
    out.field.grid = grid;
    out.field.values.resize(grid->n_active());
    const std::int64_t n = grid->n_active();
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < n; ++i) {
        const Point p = grid->point(i);
        out.field.values[i] =
            which == FieldKind::delta ? boundary_distance(domain, p) : mean_distance(domain, p, *quad);
    }
    out.validate();
    return out;
}

}  // namespace heatbounds::geo
