#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "z2osp/algebra_element.hpp"
#include "z2osp/loop_algebra.hpp"
#include "z2osp/scalar_expr.hpp"

namespace z2osp {

// 6x6 matrix whose entries are Laurent polynomials in the spectral parameter
// with differential-ring coefficients. Entry products keep the left factor on
// the left, which is what the graded ring requires.
class LaurentMatrix {
public:
    static constexpr int dim = 6;
    using Entry = std::map<int, ScalarExpr>;  // power of the parameter -> coefficient

    LaurentMatrix() = default;

    const Entry& entry(int r, int c) const { return e_[r][c]; }
    ScalarExpr coeff(int r, int c, int power) const;
    void add(int r, int c, int power, const ScalarExpr& v);

    bool is_zero() const;
    // smallest and largest power present; {0, 0} for the zero matrix
    std::pair<int, int> power_range() const;

    friend LaurentMatrix operator+(const LaurentMatrix& a, const LaurentMatrix& b);
    friend LaurentMatrix operator-(const LaurentMatrix& a, const LaurentMatrix& b);
    LaurentMatrix operator-() const;
    friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b);
    friend LaurentMatrix operator*(const ScalarExpr& s, const LaurentMatrix& a);

    friend bool operator==(const LaurentMatrix&, const LaurentMatrix&) = default;

    LaurentMatrix derive(Dir d) const;
    LaurentMatrix map_coeffs(const std::function<ScalarExpr(const ScalarExpr&)>& fn) const;
    LaurentMatrix shift_power(int by) const;

    std::string str() const;

private:
    std::array<std::array<Entry, dim>, dim> e_;
};

// grade attached to each row (and column) of the representation space
Grade rep_row_grade(int r);

// matrix of one basis generator; the power of the parameter is the mode
LaurentMatrix rep_gen(const LoopGen& g);

// Representation of an element with ring coefficients. A term c (x) X
// contributes (-1)^{<c,row>} c times the generator matrix, row by row; every
// coefficient must be grade-homogeneous.
LaurentMatrix rep(const AlgebraElement& a);

// Same, but the parameter power follows the mode-rescaling map instead of
// the raw mode, which makes the powers match the principal gradation.
LaurentMatrix rep_homogeneous(const AlgebraElement& a);

// a b - sign(ga, gb) b a for matrices representing elements of the given grades
LaurentMatrix matrix_bracket(const LaurentMatrix& a, Grade ga, const LaurentMatrix& b,
                             Grade gb);

// dMx/dt - dMt/dx + Mx Mt - Mt Mx (both arguments total-even)
LaurentMatrix matrix_zero_curvature(const LaurentMatrix& mx, const LaurentMatrix& mt);

// generators whose matrix has an entry outside the grade pattern
// row + column = generator grade
std::vector<LoopGen> rep_grading_violations(int window);

// pairs where the matrix bracket disagrees with the represented bracket
std::vector<std::pair<LoopGen, LoopGen>> rep_violations(int window);

}  // namespace z2osp
