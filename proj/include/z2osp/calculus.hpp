#pragma once

#include <optional>
#include <utility>

#include "z2osp/scalar_expr.hpp"

namespace z2osp {

// Splits e as d/dx(first) + second by greedy elimination of the leading
// monomial. The residue is zero exactly when the greedy pass integrates
// everything; a nonzero residue is still a valid representative of e
// modulo total x-derivatives.
std::pair<ScalarExpr, ScalarExpr> split_exact_x(const ScalarExpr& e);

// Exact antiderivative in x with no integration constant, if one exists in
// the ring (registered antiderivative generators may appear in the result).
// Returns nullopt when no representation is found.
std::optional<ScalarExpr> integrate_x(const ScalarExpr& e);

// Greedy representative of e modulo total x-derivatives.
ScalarExpr reduce_mod_dx(const ScalarExpr& e);

// Variational derivative with respect to the named field: sum over n of
// (-d/dx)^n applied to the graded left partial by the n-th x-jet.
// Transcendental factors contribute through the chain rule at order zero.
ScalarExpr euler_x(const ScalarExpr& e, uint32_t field);

// True when e = d/dx(q) for some q in the ring. Decided by the variational
// criterion after greedily removing what integrates directly; expressions
// still carrying antiderivative generators at that point are rejected.
bool is_total_x_derivative(const ScalarExpr& e);

// True when a - b is a total x-derivative.
bool equal_mod_dx(const ScalarExpr& a, const ScalarExpr& b);

// Finds a constant c with a = c*b modulo total x-derivatives, if any.
std::optional<GaussianRational> proportional_mod_dx(const ScalarExpr& a, const ScalarExpr& b);

}  // namespace z2osp
