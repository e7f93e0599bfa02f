#include "heatbounds/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace heatbounds::geo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double point_segment_distance(double px, double py, const std::array<double, 2>& a,
                              const std::array<double, 2>& b) {
    const double ex = b[0] - a[0];
    const double ey = b[1] - a[1];
    const double len2 = ex * ex + ey * ey;
    double s = 0.0;
    if (len2 > 0.0) {
        s = std::clamp(((px - a[0]) * ex + (py - a[1]) * ey) / len2, 0.0, 1.0);
    }
    const double dx = px - (a[0] + s * ex);
    const double dy = py - (a[1] + s * ey);
    return std::hypot(dx, dy);
}

// Signed area of the polygon; > 0 when the vertex order is counterclockwise.
double polygon_signed_area(const std::vector<std::array<double, 2>>& v) {
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& p = v[i];
        const auto& q = v[(i + 1) % v.size()];
        acc += p[0] * q[1] - q[0] * p[1];
    }
    return 0.5 * acc;
}

// Squared distance from (x1,|x2|) to the horn graph point (s, (s+1)^(-alpha)).
double horn_curve_dist2(double alpha, double x1, double ax2, double s) {
    const double w = horn_half_width(alpha, s);
    const double du = s - x1;
    const double dv = w - ax2;
    return du * du + dv * dv;
}

// Distance from an interior point to the curve |x2| = (x1+1)^(-alpha),
// restricted to curve parameters in [0, s_max]. The minimizer lies within the
// vertical gap g of x1, so a coarse scan over that window followed by
// golden-section refinement brackets it.
double horn_curve_distance(double alpha, double x1, double ax2, double s_max) {
    const double g = horn_half_width(alpha, x1) - ax2;  // > 0 strictly inside
    const double lo = std::max(0.0, x1 - g);
    const double hi = std::min(s_max, x1 + g);
    if (hi <= lo) {
        return std::sqrt(horn_curve_dist2(alpha, x1, ax2, lo));
    }

    constexpr int kScan = 96;
    double best_s = lo;
    double best = horn_curve_dist2(alpha, x1, ax2, lo);
    const double step = (hi - lo) / kScan;
    for (int i = 1; i <= kScan; ++i) {
        const double s = lo + i * step;
        const double d2 = horn_curve_dist2(alpha, x1, ax2, s);
        if (d2 < best) {
            best = d2;
            best_s = s;
        }
    }

    double a = std::max(lo, best_s - step);
    double b = std::min(hi, best_s + step);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = horn_curve_dist2(alpha, x1, ax2, c);
    double fd = horn_curve_dist2(alpha, x1, ax2, d);
    for (int it = 0; it < 80; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = horn_curve_dist2(alpha, x1, ax2, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = horn_curve_dist2(alpha, x1, ax2, d);
        }
    }
    return std::sqrt(std::min(fc, fd));
}

}  // namespace

std::string to_string(DomainKind kind) {
    switch (kind) {
        case DomainKind::interval: return "interval";
        case DomainKind::rectangle: return "rectangle";
        case DomainKind::disk: return "disk";
        case DomainKind::convex_polygon: return "convex-polygon";
        case DomainKind::horn: return "horn";
    }
    throw std::logic_error("unreachable domain kind");
}

DomainKind domain_kind_from_string(const std::string& s) {
    if (s == "interval") return DomainKind::interval;
    if (s == "rectangle") return DomainKind::rectangle;
    if (s == "disk") return DomainKind::disk;
    if (s == "convex-polygon") return DomainKind::convex_polygon;
    if (s == "horn") return DomainKind::horn;
    throw std::invalid_argument("unknown domain kind: " + s);
}

double BoundingBox::min_edge(int dim) const {
    double m = kInf;
    for (int k = 0; k < dim; ++k) m = std::min(m, edge(k));
    return m;
}

double BoundingBox::diameter(int dim) const {
    double acc = 0.0;
    for (int k = 0; k < dim; ++k) acc += edge(k) * edge(k);
    return std::sqrt(acc);
}

Domain Domain::interval(double length) {
    if (!(length > 0.0)) throw std::invalid_argument("interval length must be positive");
    Domain d;
    d.kind = DomainKind::interval;
    d.dim = 1;
    d.is_convex = true;
    d.is_simply_connected = true;
    d.lengths = {length, 0, 0};
    d.bbox.lo = {0, 0, 0};
    d.bbox.hi = {length, 0, 0};
    return d;
}

Domain Domain::rectangle(std::span<const double> edge_lengths) {
    const int m = static_cast<int>(edge_lengths.size());
    if (m < 1 || m > 3) throw std::invalid_argument("rectangle needs 1 to 3 edge lengths");
    Domain d;
    d.kind = m == 1 ? DomainKind::interval : DomainKind::rectangle;
    d.dim = m;
    d.is_convex = true;
    d.is_simply_connected = true;
    for (int k = 0; k < m; ++k) {
        if (!(edge_lengths[k] > 0.0)) throw std::invalid_argument("rectangle edges must be positive");
        d.lengths[k] = edge_lengths[k];
        d.bbox.hi[k] = edge_lengths[k];
    }
    return d;
}

Domain Domain::disk(double radius, int dim) {
    if (!(radius > 0.0)) throw std::invalid_argument("disk radius must be positive");
    if (dim < 2 || dim > 3) throw std::invalid_argument("disk dimension must be 2 or 3");
    Domain d;
    d.kind = DomainKind::disk;
    d.dim = dim;
    d.is_convex = true;
    d.is_simply_connected = true;
    d.radius = radius;
    for (int k = 0; k < dim; ++k) {
        d.bbox.lo[k] = -radius;
        d.bbox.hi[k] = radius;
    }
    return d;
}

Domain Domain::convex_polygon(std::vector<std::array<double, 2>> verts) {
    if (verts.size() < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
    if (polygon_signed_area(verts) < 0.0) {
        std::reverse(verts.begin(), verts.end());
    }
    const std::size_t n = verts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = verts[i];
        const auto& b = verts[(i + 1) % n];
        const auto& c = verts[(i + 2) % n];
        const double cross =
            (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
        if (cross < 0.0) throw std::invalid_argument("polygon is not convex");
    }
    Domain d;
    d.kind = DomainKind::convex_polygon;
    d.dim = 2;
    d.is_convex = true;
    d.is_simply_connected = true;
    d.vertices = std::move(verts);
    d.bbox.lo = {kInf, kInf, 0};
    d.bbox.hi = {-kInf, -kInf, 0};
    for (const auto& v : d.vertices) {
        d.bbox.lo[0] = std::min(d.bbox.lo[0], v[0]);
        d.bbox.lo[1] = std::min(d.bbox.lo[1], v[1]);
        d.bbox.hi[0] = std::max(d.bbox.hi[0], v[0]);
        d.bbox.hi[1] = std::max(d.bbox.hi[1], v[1]);
    }
    return d;
}

Domain Domain::horn(double alpha, double truncation, std::optional<double> tail_budget) {
    if (!(alpha > 0.0)) throw std::invalid_argument("horn exponent alpha must be positive");
    if (!(truncation > 0.0)) throw std::invalid_argument("horn truncation must be positive");
    if (tail_budget) {
        if (!(*tail_budget > 0.0)) throw std::invalid_argument("tail budget must be positive");
        const double tail = horn_tail_volume(alpha, truncation);
        if (!(tail <= *tail_budget)) {
            throw std::invalid_argument("horn truncation leaves tail volume above the budget");
        }
    }
    Domain d;
    d.kind = DomainKind::horn;
    d.dim = 2;
    d.is_convex = false;
    d.is_simply_connected = true;
    d.alpha = alpha;
    d.truncation = truncation;
    d.bbox.lo = {0, -1, 0};
    d.bbox.hi = {truncation, 1, 0};
    return d;
}

double Domain::volume_analytic_hint() const {
    switch (kind) {
        case DomainKind::interval:
            return lengths[0];
        case DomainKind::rectangle: {
            double v = 1.0;
            for (int k = 0; k < dim; ++k) v *= lengths[k];
            return v;
        }
        case DomainKind::disk:
            return dim == 2 ? M_PI * radius * radius
                            : 4.0 / 3.0 * M_PI * radius * radius * radius;
        case DomainKind::convex_polygon:
            return polygon_signed_area(vertices);
        case DomainKind::horn: {
            // Truncated region only.
            if (alpha == 1.0) return 2.0 * std::log1p(truncation);
            return 2.0 * (std::pow(truncation + 1.0, 1.0 - alpha) - 1.0) / (1.0 - alpha);
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double horn_half_width(double alpha, double x1) {
    // Hot path of the horn ray marcher; avoid pow for common exponents.
    const double b = x1 + 1.0;
    if (alpha == 1.0) return 1.0 / b;
    if (alpha == 2.0) return 1.0 / (b * b);
    if (alpha == 0.5) return 1.0 / std::sqrt(b);
    if (alpha == 0.75) {
        const double r = std::sqrt(std::sqrt(b));
        return 1.0 / (r * r * r);
    }
    return std::pow(b, -alpha);
}

double horn_tail_volume(double alpha, double truncation) {
    if (alpha <= 1.0) return kInf;
    return 2.0 * std::pow(truncation + 1.0, 1.0 - alpha) / (alpha - 1.0);
}

double horn_full_volume(double alpha) {
    if (alpha <= 1.0) return kInf;
    return 2.0 / (alpha - 1.0);
}

bool inside(const Domain& domain, const Point& x) {
    switch (domain.kind) {
        case DomainKind::interval:
            return x[0] > 0.0 && x[0] < domain.lengths[0];
        case DomainKind::rectangle:
            for (int k = 0; k < domain.dim; ++k) {
                if (!(x[k] > 0.0 && x[k] < domain.lengths[k])) return false;
            }
            return true;
        case DomainKind::disk: {
            double r2 = 0.0;
            for (int k = 0; k < domain.dim; ++k) r2 += x[k] * x[k];
            return r2 < domain.radius * domain.radius;
        }
        case DomainKind::convex_polygon: {
            const auto& v = domain.vertices;
            const std::size_t n = v.size();
            for (std::size_t i = 0; i < n; ++i) {
                const auto& a = v[i];
                const auto& b = v[(i + 1) % n];
                const double cross =
                    (b[0] - a[0]) * (x[1] - a[1]) - (b[1] - a[1]) * (x[0] - a[0]);
                if (cross <= 0.0) return false;  // on or outside an edge line
            }
            return true;
        }
        case DomainKind::horn:
            return x[0] > 0.0 && x[0] < domain.truncation &&
                   std::abs(x[1]) < horn_half_width(domain.alpha, x[0]);
    }
    return false;
}

double boundary_distance(const Domain& domain, const Point& x) {
    if (!inside(domain, x)) {
        throw std::domain_error("boundary_distance: point is not inside the domain");
    }
    switch (domain.kind) {
        case DomainKind::interval:
            return std::min(x[0], domain.lengths[0] - x[0]);
        case DomainKind::rectangle: {
            double d = kInf;
            for (int k = 0; k < domain.dim; ++k) {
                d = std::min({d, x[k], domain.lengths[k] - x[k]});
            }
            return d;
        }
        case DomainKind::disk: {
            double r2 = 0.0;
            for (int k = 0; k < domain.dim; ++k) r2 += x[k] * x[k];
            return domain.radius - std::sqrt(r2);
        }
        case DomainKind::convex_polygon: {
            const auto& v = domain.vertices;
            double d = kInf;
            for (std::size_t i = 0; i < v.size(); ++i) {
                d = std::min(d, point_segment_distance(x[0], x[1], v[i], v[(i + 1) % v.size()]));
            }
            return d;
        }
        case DomainKind::horn: {
            const double wall = x[0];  // wall segment spans |x2| <= 1, projection always lands on it
            const double wl = horn_half_width(domain.alpha, domain.truncation);
            const double face = point_segment_distance(x[0], x[1], {domain.truncation, -wl},
                                                       {domain.truncation, wl});
            const double curve = horn_curve_distance(domain.alpha, x[0], std::abs(x[1]),
                                                     domain.truncation);
            return std::min({wall, face, curve});
        }
    }
    return 0.0;
}

void to_json(nlohmann::json& j, const Domain& domain) {
    j = nlohmann::json{{"kind", to_string(domain.kind)}};
    switch (domain.kind) {
        case DomainKind::interval:
            j["length"] = domain.lengths[0];
            break;
        case DomainKind::rectangle: {
            std::vector<double> ls(domain.lengths.begin(), domain.lengths.begin() + domain.dim);
            j["lengths"] = ls;
            break;
        }
        case DomainKind::disk:
            j["radius"] = domain.radius;
            if (domain.dim != 2) j["dim"] = domain.dim;
            break;
        case DomainKind::convex_polygon:
            j["vertices"] = domain.vertices;
            break;
        case DomainKind::horn:
            j["alpha"] = domain.alpha;
            j["truncation"] = domain.truncation;
            break;
    }
}

void from_json(const nlohmann::json& j, Domain& domain) {
    if (!j.is_object() || !j.contains("kind")) {
        throw std::invalid_argument("domain spec must be an object with a \"kind\" key");
    }
    const DomainKind kind = domain_kind_from_string(j.at("kind").get<std::string>());
    auto require_keys = [&j](std::initializer_list<const char*> required,
                             std::initializer_list<const char*> optional = {}) {
        for (const char* k : required) {
            if (!j.contains(k)) {
                throw std::invalid_argument(std::string("domain spec missing key: ") + k);
            }
        }
        for (const auto& [key, _] : j.items()) {
            if (key == "kind") continue;
            const bool known =
                std::find_if(required.begin(), required.end(),
                             [&](const char* r) { return key == r; }) != required.end() ||
                std::find_if(optional.begin(), optional.end(),
                             [&](const char* o) { return key == o; }) != optional.end();
            if (!known) throw std::invalid_argument("unknown domain spec key: " + key);
        }
    };
    switch (kind) {
        case DomainKind::interval:
            require_keys({"length"});
            domain = Domain::interval(j.at("length").get<double>());
            break;
        case DomainKind::rectangle: {
            require_keys({"lengths"});
            const auto ls = j.at("lengths").get<std::vector<double>>();
            domain = Domain::rectangle(ls);
            break;
        }
        case DomainKind::disk: {
            require_keys({"radius"}, {"dim"});
            const int dim = j.value("dim", 2);
            domain = Domain::disk(j.at("radius").get<double>(), dim);
            break;
        }
        case DomainKind::convex_polygon:
            require_keys({"vertices"});
            domain = Domain::convex_polygon(
                j.at("vertices").get<std::vector<std::array<double, 2>>>());
            break;
        case DomainKind::horn:
            require_keys({"alpha", "truncation"});
            domain = Domain::horn(j.at("alpha").get<double>(), j.at("truncation").get<double>());
            break;
    }
}

}  // namespace heatbounds::geo
