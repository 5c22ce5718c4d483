#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "z2osp/generator.hpp"
#include "z2osp/grade.hpp"
#include "z2osp/rational.hpp"

namespace z2osp {

enum class Dir { X, T }; // d/dx_+ (x) and d/dx_- (t)

// Product of generators, sorted in canonical order, multiplicities > 0.
// Generators of odd parity (grade [10] or [01]) never repeat; a squared odd
// factor kills the monomial during multiplication.
struct Monomial {
    std::vector<std::pair<GenId, int>> factors;

    bool empty() const { return factors.empty(); } // the constant monomial 1
    Grade grade() const;
    int degree() const;

    bool contains(const GenId& g) const;
    int multiplicity(const GenId& g) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

// map order; any total order works, name-based generator order keeps it stable
bool operator<(const Monomial& a, const Monomial& b);

// Canonical-form element of the graded-commutative differential ring:
// a finite sum of monomials with nonzero Gaussian-rational coefficients.
class ScalarExpr {
public:
    using TermMap = std::map<Monomial, GaussianRational>;

    ScalarExpr() = default;
    ScalarExpr(long long c) { add_term(Monomial{}, GaussianRational(c)); }
    ScalarExpr(const Rational& c) { add_term(Monomial{}, GaussianRational(c)); }
    ScalarExpr(const GaussianRational& c) { add_term(Monomial{}, c); }

    static ScalarExpr generator(const GenId& g);
    static ScalarExpr i() { return ScalarExpr(GaussianRational::i()); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    GaussianRational constant_term() const;
    GaussianRational coeff(const Monomial& m) const;

    // zero expression is homogeneous of every grade; mixed grades -> nullopt
    std::optional<Grade> homogeneous_grade() const;

    ScalarExpr operator-() const;
    friend ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b);
    friend ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b);
    friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b);
    ScalarExpr& operator+=(const ScalarExpr& b) { return *this = *this + b; }
    ScalarExpr& operator-=(const ScalarExpr& b) { return *this = *this - b; }
    ScalarExpr& operator*=(const ScalarExpr& b) { return *this = *this * b; }

    friend ScalarExpr operator*(const GaussianRational& c, const ScalarExpr& a);

    friend bool operator==(const ScalarExpr&, const ScalarExpr&) = default;

    ScalarExpr derive(Dir d) const;
    ScalarExpr derive(Dir d, int times) const;

    // Replace every occurrence of the field: jets prolong (value is derived),
    // transcendental generators of the field only allow value == 0
    // (exp, cosh -> 1, sinh -> 0). Antiderivative symbols substitute directly.
    ScalarExpr substitute_field(uint32_t field, const ScalarExpr& value) const;

    // Graded left partial derivative with respect to one generator occurrence.
    // For order-0 jets this includes the chain rule through exp/cosh/sinh factors
    // of the same field.
    ScalarExpr partial(const GenId& g) const;

    // sum of terms the predicate keeps
    ScalarExpr filter(const std::function<bool(const Monomial&, const GaussianRational&)>& keep) const;

    bool depends_on_field(uint32_t field) const;
    bool has_dt_jets() const;
    bool has_antiderivative() const;

    std::string str() const; // compact text form for diagnostics

    void add_term(const Monomial& m, const GaussianRational& c);

private:
    TermMap terms_;
};

// convenience builders
ScalarExpr jet(uint32_t field, int dx = 0, int dt = 0);
ScalarExpr chiral_sym(uint32_t field, int dt = 0);
ScalarExpr exp_of(uint32_t field, const Rational& k);
ScalarExpr cosh_of(uint32_t field, const Rational& k);
ScalarExpr sinh_of(uint32_t field, const Rational& k);
ScalarExpr anti_sym(uint32_t field);

} // namespace z2osp
