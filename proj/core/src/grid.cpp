#include "heatbounds/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "heatbounds/errors.hpp"

namespace heatbounds::pde {

geo::Point Grid::point(std::int64_t active_index) const {
    const std::int64_t flat = lattice_of_active[static_cast<std::size_t>(active_index)];
    geo::Point p{0, 0, 0};
    std::int64_t rest = flat;
    for (int k = 0; k < dim; ++k) {
        p[k] = origin[k] + h * static_cast<double>(rest % npts[k]);
        rest /= npts[k];
    }
    return p;
}

double Grid::cell_volume() const {
    double v = 1.0;
    for (int k = 0; k < dim; ++k) v *= h;
    return v;
}

void Grid::apply_operator(double a, double b, const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
    const std::int64_t n = n_active();
    const double inv_h2 = 1.0 / (h * h);
    const double diag = a + b * 2.0 * dim * inv_h2;
    const double off = -b * inv_h2;
    const std::int32_t* nb = neighbors.data();
    const double* xv = x.data();
    double* yv = y.data();
    const int stride = 2 * dim;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        double acc = diag * xv[i];
        const std::int32_t* row = nb + i * stride;
        for (int k = 0; k < stride; ++k) {
            const std::int32_t j = row[k];
            if (j >= 0) acc += off * xv[j];
        }
        yv[i] = acc;
    }
}

std::shared_ptr<const Grid> build_grid(const geo::Domain& domain, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("grid spacing h must be positive");
    auto grid = std::make_shared<Grid>();
    grid->domain = domain;
    grid->h = h;
    grid->dim = domain.dim;
    std::int64_t total = 1;
    for (int k = 0; k < domain.dim; ++k) {
        grid->origin[k] = domain.bbox.lo[k];
        grid->npts[k] = static_cast<std::int64_t>(std::floor(domain.bbox.edge(k) / h)) + 1;
        total *= grid->npts[k];
    }
    if (total > (std::int64_t{1} << 31)) {
        throw CapacityError("grid lattice exceeds 2^31 nodes; increase h");
    }

    grid->active_of_lattice.assign(static_cast<std::size_t>(total), -1);
    geo::Point p{0, 0, 0};
    for (std::int64_t flat = 0; flat < total; ++flat) {
        std::int64_t rest = flat;
        for (int k = 0; k < domain.dim; ++k) {
            p[k] = grid->origin[k] + h * static_cast<double>(rest % grid->npts[k]);
            rest /= grid->npts[k];
        }
        if (geo::inside(domain, p)) {
            grid->active_of_lattice[static_cast<std::size_t>(flat)] =
                static_cast<std::int32_t>(grid->lattice_of_active.size());
            grid->lattice_of_active.push_back(flat);
        }
    }
    if (grid->lattice_of_active.empty()) {
        throw std::invalid_argument("grid spacing too coarse: no lattice node falls inside");
    }
    if (grid->lattice_of_active.size() > std::size_t{1} << 30) {
        throw CapacityError("active node count exceeds 2^30");
    }

    const int stride = 2 * domain.dim;
    grid->neighbors.assign(grid->lattice_of_active.size() * stride, -1);
    std::array<std::int64_t, 3> axis_stride{1, 1, 1};
    for (int k = 1; k < domain.dim; ++k) axis_stride[k] = axis_stride[k - 1] * grid->npts[k - 1];
    for (std::size_t i = 0; i < grid->lattice_of_active.size(); ++i) {
        const std::int64_t flat = grid->lattice_of_active[i];
        std::int64_t rest = flat;
        std::array<std::int64_t, 3> idx{0, 0, 0};
        for (int k = 0; k < domain.dim; ++k) {
            idx[k] = rest % grid->npts[k];
            rest /= grid->npts[k];
        }
        for (int k = 0; k < domain.dim; ++k) {
            if (idx[k] > 0) {
                grid->neighbors[i * stride + 2 * k] =
                    grid->active_of_lattice[static_cast<std::size_t>(flat - axis_stride[k])];
            }
            if (idx[k] + 1 < grid->npts[k]) {
                grid->neighbors[i * stride + 2 * k + 1] =
                    grid->active_of_lattice[static_cast<std::size_t>(flat + axis_stride[k])];
            }
        }
    }
    return grid;
}

std::int64_t default_cg_cap(const Grid& grid) {
    return static_cast<std::int64_t>(
        std::ceil(10.0 * std::sqrt(static_cast<double>(grid.n_active()))));
}

CgResult conjugate_gradient(const Grid& grid, double a, double b, const Eigen::VectorXd& rhs,
                            Eigen::VectorXd& x, double rel_tol, std::int64_t max_iter) {
    const std::int64_t n = grid.n_active();
    const double rhs_norm = rhs.norm();
    if (rhs_norm == 0.0) {
        x.setZero(n);
        return {0, 0.0};
    }
    Eigen::VectorXd r(n), q(n);
    grid.apply_operator(a, b, x, q);
    r = rhs - q;
    Eigen::VectorXd d = r;
    double rho = r.squaredNorm();
    const double stop = rel_tol * rhs_norm;
    if (std::sqrt(rho) <= stop) return {0, std::sqrt(rho) / rhs_norm};
    for (std::int64_t it = 1; it <= max_iter; ++it) {
        grid.apply_operator(a, b, d, q);
        const double denom = d.dot(q);
        if (!(denom > 0.0)) {
            throw NumericalError("conjugate gradient: operator lost positive definiteness",
                                 std::sqrt(rho) / rhs_norm);
        }
        const double step = rho / denom;
        x += step * d;
        r -= step * q;
        const double rho_next = r.squaredNorm();
        if (std::sqrt(rho_next) <= stop) {
            return {static_cast<int>(it), std::sqrt(rho_next) / rhs_norm};
        }
        d = r + (rho_next / rho) * d;
        rho = rho_next;
    }
    throw NumericalError("conjugate gradient failed to converge within the iteration cap",
                         std::sqrt(rho) / rhs_norm);
}

}  // namespace heatbounds::pde
