#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "z2osp/algebra_element.hpp"
#include "z2osp/eom.hpp"

namespace z2osp {

// A derivation step needed an exact antiderivative or an exact cancellation
// and did not get one.
struct NotExact : std::runtime_error {
    explicit NotExact(const std::string& what) : std::runtime_error(what) {}
};

// A graded component left an unknown coefficient free (beyond the documented
// integration constants), or an unknown entered nonlinearly.
struct Underdetermined : std::runtime_error {
    explicit Underdetermined(const std::string& what) : std::runtime_error(what) {}
};

// One derived and verified flow: the Lax pair, the equations of motion read
// off from the curvature components, and the curvature after normalization.
struct FlowSystem {
    std::string name;
    AlgebraElement lx, lt;
    EomSystem eom;
    AlgebraElement residual;
    std::vector<std::string> notes;

    bool flat() const { return residual.is_zero(); }
};

// ---------------------------------------------------------------------------
// first negative flow: the relativistic systems
// ---------------------------------------------------------------------------

// Chiral prefactors of the two exponential potentials in the t-part of the
// Lax pair. The named systems fix both to constants; the general form keeps
// them as arbitrary chiral symbols.
struct ExponentialCase {
    std::string name;
    ScalarExpr kplus, kminus;
};

ExponentialCase liouville_case();    // (0, -1)
ExponentialCase sinh_gordon_case();  // (1/2, 1/2)
ExponentialCase cosh_gordon_case();  // (1/2, -1/2)
ExponentialCase chiral_case();       // both prefactors arbitrary

// The Lax pair of the first negative flow. The x-part carries the derivative
// potentials (d/dx phi00) K00 + (d/dx phi11) L00, the odd potentials on
// P+0/Q+0 and the constant grade-1 element K+0 + K-1. The t-part carries
// rho10 P-0 + rho01 Q-0 plus the four exponential coefficients obtained by
// integrating the bottom-grade component.
std::pair<AlgebraElement, AlgebraElement> build_negative_pair(const ExponentialCase& c);

// Reads the equations of motion off the graded curvature components (x-rules
// for the rho fields, mixed rules for the phi fields, t-rules for the sigma
// fields), after checking that the bottom-grade component vanishes
// identically. The residual is the full curvature normalized by those rules.
FlowSystem derive_negative_flow(const ExponentialCase& c);

// One equation of a transformed system checked against a derived flow.
struct EquationCheck {
    std::string name;
    bool holds = false;
    ScalarExpr residual;  // zero exactly when holds
};

// Rewrites the sinh-Gordon system in the paired-field variables
//   psi10 ~ sigma10, psi01 ~ -i sigma01 (both scaled by 1/sqrt(2)),
//   psibar10 = e^{phi00} (rho10 cosh(phi11) - i rho01 sinh(phi11)),
//   psibar01 = e^{phi00} (rho10 sinh(phi11) - i rho01 cosh(phi11)),
// and checks each equation of the transformed six-equation form against the
// flow derived from the curvature. Each equation is scaled so that only
// integer powers of 2 appear. The last entry checks the classical limit
// (odd fields and phi11 dropped) against the scalar sinh-Gordon equation.
std::vector<EquationCheck> change_variables_check();

// ---------------------------------------------------------------------------
// first positive flow: the third-order (mKdV-type) system
// ---------------------------------------------------------------------------

// x-part shared by the positive flow: u00 K00 + u11 L00 + sigma10 P+0 +
// sigma01 Q+0 + K+0 + K-1.
AlgebraElement mkdv_lax_x();

// Everything solve_positive_hierarchy determines: the eighteen named
// coefficient functions of the t-part, the assembled pair, the equations of
// motion from the two lowest graded components, and the normalized residual.
struct HierarchySolution {
    std::map<std::string, ScalarExpr> coeffs;
    AlgebraElement lx, lt;
    EomSystem eom;
    AlgebraElement residual;
    std::vector<std::string> notes;

    bool flat() const { return residual.is_zero(); }
};

// Solves the curvature components grade by grade from the top (grade 4) to
// the bottom (grade 0). Components algebraic in an unknown are eliminated
// directly; the two components of the form d/dx(unknown) = expr are resolved
// by integrate_x; integration constants are [00]-graded, with the top
// normalization fixed to 4 and the [11]-graded constant dropped. Throws
// NotExact / Underdetermined when the construction degenerates.
HierarchySolution solve_positive_hierarchy();

// The closed-form coefficient table of the third-order flow, keyed
// a00, b11, c00, d00, e11, f11, h00, k11, rho10, rho01, xi10, xi01,
// eta10, eta01, l00, p00, r11, s11.
std::map<std::string, ScalarExpr> mkdv_coefficient_table();

// t-part of the positive-flow pair assembled from a coefficient table.
AlgebraElement mkdv_lax_t(const std::map<std::string, ScalarExpr>& coeffs);

// The mKdV-type equations of motion in closed form: d/dt u = (a00)',
// d/dt u11 = (b11)', and the third-order sigma rules.
EomSystem mkdv_eom();

// Builds the pair from the closed-form table and checks flatness under
// mkdv_eom().
FlowSystem verify_mkdv();

// The two odd bilinears that appear throughout the coefficient table:
// sigma10' sigma10 + sigma01' sigma01 (grade [00]) and
// sigma01' sigma10 - sigma10' sigma01 (grade [11]).
ScalarExpr sigma_bilinear_00();
ScalarExpr sigma_bilinear_11();

}  // namespace z2osp
