#pragma once

#include <map>
#include <string>

#include "z2osp/algebra_element.hpp"
#include "z2osp/rep6.hpp"
#include "z2osp/scalar_expr.hpp"

namespace z2osp {

// LaTeX rendering. Jets print as primed symbols (u00 -> u_{00}, two x-derivatives
// -> u_{00}''), fourth and higher derivatives as u_{00}^{(4)}; t-derivative jets
// carry an explicit \partial_t prefix. Transcendental generators render as
// \mathrm{e}^{k\varphi}, \cosh(k\varphi), \sinh(k\varphi). Output is a
// deterministic function of the canonical form.
std::string to_latex(const ScalarExpr& e);
std::string to_latex(const AlgebraElement& a);
std::string to_latex(const LaurentMatrix& m);

// Expression JSON:
//   { "terms": [ { "coeff": { "re": "p/q", "im": "p/q" },
//                  "monomial": [ [ descriptor, multiplicity ], ... ] } ] }
// where descriptor = { "kind", "field", "dx", "dt", ("param",) "grade" } with
// exact rational strings throughout. Round-trips exactly through
// expr_from_json; the only symbols that must already be registered are
// antiderivatives, whose defining derivative is not part of the schema.
std::string to_json(const ScalarExpr& e);
ScalarExpr expr_from_json(const std::string& text);

// Algebra-valued element: array of { "family", "mode", "grade", "coeff" }.
std::string to_json(const AlgebraElement& a);

// Laurent matrix: nested row/column arrays, each cell an array of
// { "power", "coeff" } pairs sorted by power.
std::string to_json(const LaurentMatrix& m);

// Named coefficient table (the solved third-order flow), keyed by name.
std::string coefficient_table_json(const std::map<std::string, ScalarExpr>& table);
std::string coefficient_table_latex(const std::map<std::string, ScalarExpr>& table);

// Nonzero brackets of the loop algebra in canonical pair order. The scalar
// coefficient of every bracket is mode-independent and the result mode is the
// sum of the input modes, which the dump states once per pair as mode_offset.
std::string structure_constants_json();
std::string structure_constants_latex();

}  // namespace z2osp
