#include "heatbounds/torsion.hpp"

#include <stdexcept>

namespace heatbounds::pde {

TorsionResult torsion(std::shared_ptr<const Grid> grid, double cg_rel_tol) {
    if (!grid || grid->n_active() == 0) throw std::invalid_argument("torsion: empty grid");
    const std::int64_t n = grid->n_active();
    TorsionResult out;
    out.w.grid = grid;
    out.w.values = Eigen::VectorXd::Zero(n);
    const Eigen::VectorXd rhs = Eigen::VectorXd::Ones(n);
    conjugate_gradient(*grid, 0.0, 1.0, rhs, out.w.values, cg_rel_tol, default_cg_cap(*grid));
    // The exact discrete solution is nonnegative (M-matrix inverse); snap off
    // solver round-off so downstream positivity checks see the invariant.
    out.w.values = out.w.values.cwiseMax(0.0);
    out.rigidity = grid->cell_volume() * out.w.values.sum();
    out.sup_norm = out.w.values.maxCoeff();
    return out;
}

}  // namespace heatbounds::pde
