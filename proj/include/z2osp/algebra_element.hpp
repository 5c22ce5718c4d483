#pragma once

#include <functional>
#include <map>
#include <string>

#include "z2osp/loop_algebra.hpp"
#include "z2osp/scalar_expr.hpp"

namespace z2osp {

// Element of the loop algebra with differential-ring coefficients. Each
// coefficient must be grade-homogeneous; the bracket moves generators past
// coefficients and needs their grades.
class AlgebraElement {
public:
    using PartMap = std::map<LoopGen, ScalarExpr>;

    AlgebraElement() = default;

    static AlgebraElement term(const ScalarExpr& c, const LoopGen& g);
    static AlgebraElement term(const LoopGen& g) { return term(ScalarExpr(1), g); }

    const PartMap& parts() const { return parts_; }
    bool is_zero() const { return parts_.empty(); }
    ScalarExpr coeff(const LoopGen& g) const;

    void add(const ScalarExpr& c, const LoopGen& g);

    friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
    AlgebraElement operator-() const;
    AlgebraElement& operator+=(const AlgebraElement& b) { return *this = *this + b; }
    AlgebraElement& operator-=(const AlgebraElement& b) { return *this = *this - b; }

    // left multiplication by a ring element
    friend AlgebraElement operator*(const ScalarExpr& c, const AlgebraElement& a);

    friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

    AlgebraElement derive(Dir d) const;

    // apply a ring map to every coefficient (on-shell normalization, ...)
    AlgebraElement map_coeffs(const std::function<ScalarExpr(const ScalarExpr&)>& fn) const;

    // terms whose generator passes the predicate
    AlgebraElement filter(const std::function<bool(const LoopGen&)>& keep) const;

    std::string str() const;

private:
    PartMap parts_;
};

// Graded bracket extended to ring coefficients:
//     [[c X, d Y]] = sign(X, d) (c d) [[X, Y]]
// where sign is the grade pairing of the generator moved past the
// coefficient. Throws if a coefficient is not grade-homogeneous.
AlgebraElement algebra_bracket(const AlgebraElement& a, const AlgebraElement& b);

// dLx/dt - dLt/dx + [[Lx, Lt]]
AlgebraElement zero_curvature(const AlgebraElement& lx, const AlgebraElement& lt);

// split by eigenvalue of the principal gradation
std::map<Rational, AlgebraElement> principal_decompose(const AlgebraElement& a);

}  // namespace z2osp
