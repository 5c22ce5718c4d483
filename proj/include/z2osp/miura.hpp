#pragma once

#include <vector>

#include "z2osp/hierarchy.hpp"

namespace z2osp {

// Images of the KdV-type potentials under the quadratic substitution in the
// diagonal mKdV potentials and their first derivatives.
ScalarExpr miura_u00();
ScalarExpr miura_u11();

// Replace every occurrence of the KdV potentials (any derivative order) by
// the corresponding image.
ScalarExpr miura_apply(const ScalarExpr& e);
AlgebraElement miura_apply(const AlgebraElement& a);

// Off-shell factorization: the first-order operator built from the mKdV
// potentials maps the mKdV flow residuals onto the KdV flow residuals of the
// images. Checked as exact ring identities with free t-derivative jets,
// together with the on-shell corollary that the images obey the KdV flow.
std::vector<EquationCheck> miura_factorization_check();

// The substitution written as a 2x2 matrix Riccati equation U = Y' + Y^2.
std::vector<EquationCheck> riccati_form_check();

// Conjugation by exp of the raising element with the mKdV potentials as
// coefficients, minus the Maurer-Cartan term of the chosen direction.
// The adjoint series is evaluated exactly; it must terminate (the element
// is nilpotent in the adjoint action), otherwise NotExact is thrown.
AlgebraElement gauge_transform(const AlgebraElement& l, Dir d);

// Lax pair of the KdV-type flow in the KdV potentials.
AlgebraElement kdv_lax_x();
AlgebraElement kdv_lax_t();

// Third-order polynomial parts of the KdV flow.
ScalarExpr kdv_a00();
ScalarExpr kdv_b11();

// Evolution rules of the KdV-type flow (even potentials and both odd
// fields; the odd rules coincide with the mKdV ones with the images kept
// as primitive potentials).
EomSystem kdv_eom();

// Zero-curvature residual of the KdV pair, normalized on-shell.
FlowSystem verify_kdv();

// Term-by-term comparison of the gauge-transformed mKdV pair against the
// image of the KdV pair, plus flatness of the transformed pair.
std::vector<EquationCheck> gauge_agreement_check();

}  // namespace z2osp
