#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "z2osp/eom.hpp"
#include "z2osp/hierarchy.hpp"

namespace z2osp {

// A candidate charge density still carries a formal antiderivative symbol
// after reduction modulo total derivatives, so the charge is not local.
struct ResidualNonlocal : std::runtime_error {
    explicit ResidualNonlocal(const std::string& what) : std::runtime_error(what) {}
};

// Second column of a formal series solution of the transport problem
//     d/dx G(i) = (M G)(i) - G(i) (M G)(2),        G(2) = 1,
// where M is the 6x6 matrix of the KdV-type x-operator with the rescaled
// parameter powers. Each row is expanded in inverse powers of the parameter;
// rows 1, 3, 4 carry even orders and rows 5, 6 odd orders. entries maps
// (row, order k) to the coefficient of the (-k)-th power.
struct GammaColumn {
    int order = 0;    // largest expansion order kept
    int epsilon = 1;  // sign of the leading entry of row 1
    std::map<std::pair<int, int>, ScalarExpr> entries;
    std::vector<std::string> notes;

    bool has_entry(int row, int k) const { return entries.count({row, k}) != 0; }
    const ScalarExpr& entry(int row, int k) const;  // std::out_of_range if absent
};

// Solves the transport recursion order by order up to max_order (even,
// >= 0). epsilon = +1 or -1 picks the branch of the leading entry; all other
// integration constants are set to zero. The recursion integrates one
// right-hand side per even stage; when the non-exact part of a right-hand
// side has no antiderivative in the ring it is carried by a registered
// antiderivative symbol (the first is the row-3 order-2 potential, the next
// the row-3 order-6 entry), and each such order is recorded in notes. A
// stage whose solved entry cannot be isolated throws Underdetermined.
// Before returning, every power of the parameter in the matrix-built
// residual of the transport condition is checked to vanish identically.
GammaColumn gamma_solve(int max_order, int epsilon);

// One local density whose x-integral is a conserved charge of a flow.
struct ConservedDensity {
    int order = 0;
    ScalarExpr density;
    Grade grade = g00;
};

// Reads the densities off row 1 of the column: the entry at each even order
// from 4 up, reduced modulo total x-derivatives and scaled so the first
// monomial of lowest degree has unit coefficient. Throws ResidualNonlocal if
// an antiderivative symbol survives the reduction.
std::vector<ConservedDensity> extract_densities(const GammaColumn& col);

// The flow derivative of the density, normalized by the equations of motion,
// is a total x-derivative.
bool verify_conservation(const ConservedDensity& d, const EomSystem& eom);

// Image of a density under the quadratic substitution, reduced and scaled
// the same way. The order and grade labels carry over.
ConservedDensity map_charges_via_miura(const ConservedDensity& d);

// The two graded charges that exist beside the even-sector tower: the
// integral of the [11] potential on the mKdV side, and its counterpart
// combination on the KdV side, which is exhibited as the x-derivative of a
// transport entry (so its charge vanishes on decaying fields) and is
// likewise conserved.
std::vector<EquationCheck> graded_charge_checks();

}  // namespace z2osp
