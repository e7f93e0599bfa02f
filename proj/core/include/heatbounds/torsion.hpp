#pragma once

#include "heatbounds/grid.hpp"

namespace heatbounds::pde {

struct TorsionResult {
    ScalarField w;       // torsion function, -Delta_h w = 1, w = 0 outside
    double rigidity = 0; // P = h^m * sum(w)
    double sup_norm = 0; // max of w
};

TorsionResult torsion(std::shared_ptr<const Grid> grid, double cg_rel_tol = 1e-10);

}  // namespace heatbounds::pde
