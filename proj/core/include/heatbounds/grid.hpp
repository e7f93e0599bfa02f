#pragma once

#include <array>
#include <cstdint>
#include <memory>

#include <Eigen/Core>

#include "heatbounds/domain.hpp"

namespace heatbounds::pde {

/// Uniform Cartesian grid over the bounding box of a domain. Lattice nodes
/// are origin + h * (integer multi-index); a node is active when it lies
/// strictly inside the (truncated) domain. The Dirichlet value 0 is implied
/// at every inactive neighbor, so the grid carries the discrete Dirichlet
/// Laplacian implicitly.
struct Grid {
    geo::Domain domain;
    double h = 0;
    int dim = 1;
    std::array<double, 3> origin{0, 0, 0};
    std::array<std::int64_t, 3> npts{1, 1, 1};  // lattice points per axis

    std::vector<std::int32_t> active_of_lattice;     // lattice -> active index or -1
    std::vector<std::int64_t> lattice_of_active;     // active index -> flat lattice index
    std::vector<std::int32_t> neighbors;             // 2*dim entries per active node, -1 = Dirichlet

    std::int64_t n_active() const { return static_cast<std::int64_t>(lattice_of_active.size()); }
    geo::Point point(std::int64_t active_index) const;
    double cell_volume() const;  // h^dim

    /// y = (a*I + b*L_h) x with L_h = -Delta_h (positive semidefinite stencil).
    void apply_operator(double a, double b, const Eigen::VectorXd& x, Eigen::VectorXd& y) const;
};

std::shared_ptr<const Grid> build_grid(const geo::Domain& domain, double h);

/// One value per active grid node.
struct ScalarField {
    std::shared_ptr<const Grid> grid;
    Eigen::VectorXd values;
};

struct CgResult {
    int iterations = 0;
    double rel_residual = 0;
};

/// Conjugate gradient for (a*I + b*L_h) x = rhs, starting from the passed x.
/// Throws NumericalError when max_iter is exhausted above rel_tol.
CgResult conjugate_gradient(const Grid& grid, double a, double b, const Eigen::VectorXd& rhs,
                            Eigen::VectorXd& x, double rel_tol, std::int64_t max_iter);

/// Default iteration cap for the heat/torsion solves.
std::int64_t default_cg_cap(const Grid& grid);

}  // namespace heatbounds::pde
