#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "z2osp/algebra_element.hpp"
#include "z2osp/fields.hpp"
#include "z2osp/loop_algebra.hpp"
#include "z2osp/eom.hpp"

using namespace z2osp;

namespace {

LoopGen gen(Family f, int m) { return LoopGen{f, m}; }

GaussianRational gr(long long n) { return GaussianRational(n); }
GaussianRational gi(long long n) { return GaussianRational(Rational(0), Rational(n)); }

// coefficient of the nested bracket [[a, [[b, c]]]], zero when either level
// vanishes; `where` receives the resulting generator
GaussianRational nested(const LoopGen& a, const LoopGen& b, const LoopGen& c,
                        std::optional<LoopGen>* where = nullptr) {
    auto inner = bracket_basis(b, c);
    if (!inner) return GaussianRational();
    auto outer = bracket_basis(a, inner->g);
    if (!outer) return GaussianRational();
    if (where) *where = outer->g;
    return inner->c * outer->c;
}

}  // namespace

TEST_CASE("bracket table spot values") {
    // sl(2)-like even triples
    auto r = bracket_basis(gen(Family::K0, 0), gen(Family::Kp, 1));
    REQUIRE(r);
    CHECK(r->c == gr(2));
    CHECK(r->g == gen(Family::Kp, 1));

    r = bracket_basis(gen(Family::Kp, 0), gen(Family::Km, 0));
    REQUIRE(r);
    CHECK(r->c == gr(1));
    CHECK(r->g == gen(Family::K0, 0));

    // modes add
    r = bracket_basis(gen(Family::L0, 2), gen(Family::Lm, -1));
    REQUIRE(r);
    CHECK(r->c == gr(-2));
    CHECK(r->g == gen(Family::Km, 1));

    // nilpotent sector closes on K with a nonzero diagonal anticommutator
    r = bracket_basis(gen(Family::Pp, 0), gen(Family::Pp, 0));
    REQUIRE(r);
    CHECK(r->c == gr(2));
    CHECK(r->g == gen(Family::Kp, 0));

    r = bracket_basis(gen(Family::Pp, 1), gen(Family::Pm, 0));
    REQUIRE(r);
    CHECK(r->c == gr(1));
    CHECK(r->g == gen(Family::K0, 1));

    // cross P/Q products land in L with imaginary coefficients
    r = bracket_basis(gen(Family::Pp, 0), gen(Family::Qm, 0));
    REQUIRE(r);
    CHECK(r->c == gi(1));
    CHECK(r->g == gen(Family::L0, 0));

    r = bracket_basis(gen(Family::Pp, 0), gen(Family::Qp, 0));
    REQUIRE(r);
    CHECK(r->c == gi(2));
    CHECK(r->g == gen(Family::Lp, 0));

    // vanishing pairs
    CHECK(!bracket_basis(gen(Family::K0, 0), gen(Family::K0, 3)));
    CHECK(!bracket_basis(gen(Family::Kp, 0), gen(Family::Pp, 0)));
    CHECK(!bracket_basis(gen(Family::Lp, 1), gen(Family::Qp, 0)));
}

TEST_CASE("bracket completion respects the graded exchange rule") {
    // even pair: commutator, so the reversed bracket flips sign
    auto r = bracket_basis(gen(Family::Km, 0), gen(Family::Kp, 0));
    REQUIRE(r);
    CHECK(r->c == gr(-1));
    CHECK(r->g == gen(Family::K0, 0));

    // P and Q carry orthogonal odd grades: still a commutator
    r = bracket_basis(gen(Family::Qm, 0), gen(Family::Pp, 0));
    REQUIRE(r);
    CHECK(r->c == gi(-1));
    CHECK(r->g == gen(Family::L0, 0));

    // P against P: anticommutator, symmetric under exchange
    auto ab = bracket_basis(gen(Family::Pp, 1), gen(Family::Pm, 0));
    auto ba = bracket_basis(gen(Family::Pm, 0), gen(Family::Pp, 1));
    REQUIRE(ab);
    REQUIRE(ba);
    CHECK(ab->c == ba->c);
    CHECK(ab->g == ba->g);

    // L against P: grades [11] and [10] pair oddly, anticommutator again
    ab = bracket_basis(gen(Family::L0, 0), gen(Family::Pp, 0));
    ba = bracket_basis(gen(Family::Pp, 0), gen(Family::L0, 0));
    REQUIRE(ab);
    REQUIRE(ba);
    CHECK(ab->c == ba->c);
    CHECK(ab->g == ba->g);
}

TEST_CASE("graded Jacobi on a frozen mixed triple") {
    // (P+, P-, Q+) at mode zero exercises both odd sectors and the even core
    LoopGen a = gen(Family::Pp, 0), b = gen(Family::Pm, 0), c = gen(Family::Qp, 0);

    std::optional<LoopGen> g1, g2, g3;
    GaussianRational t1 = GaussianRational(grade_sign(loop_grade(a), loop_grade(c))) *
                          nested(a, b, c, &g1);
    GaussianRational t2 = GaussianRational(grade_sign(loop_grade(b), loop_grade(a))) *
                          nested(b, c, a, &g2);
    GaussianRational t3 = GaussianRational(grade_sign(loop_grade(c), loop_grade(b))) *
                          nested(c, a, b, &g3);

    REQUIRE(g1);
    REQUIRE(g2);
    REQUIRE(g3);
    CHECK(*g1 == gen(Family::Qp, 0));
    CHECK(*g2 == gen(Family::Qp, 0));
    CHECK(*g3 == gen(Family::Qp, 0));
    CHECK(t1 == gr(-1));
    CHECK(t2 == gr(2));
    CHECK(t3 == gr(-1));
    CHECK((t1 + t2 + t3).is_zero());
}

TEST_CASE("structure sweeps over a mode window") {
    CHECK(antisymmetry_violations(2).empty());
    CHECK(jacobi_violations(2).empty());
    CHECK(hom_violations(2).empty());
    CHECK(derivation_violations(Derivation::ModeCount, 2).empty());
    CHECK(derivation_violations(Derivation::Swap, 2).empty());
}

TEST_CASE("jacobi sweep gives the same answer threaded") {
    auto serial = jacobi_violations(1);
    setenv("ZOSP_WORKERS", "4", 1);
    auto threaded = jacobi_violations(1);
    unsetenv("ZOSP_WORKERS");
    CHECK(serial.empty());
    CHECK(serial.size() == threaded.size());
}

TEST_CASE("derivation actions") {
    auto r = apply_derivation(Derivation::ModeCount, gen(Family::K0, 3));
    REQUIRE(r);
    CHECK(r->c == gr(3));
    CHECK(r->g == gen(Family::K0, 3));
    CHECK(!apply_derivation(Derivation::ModeCount, gen(Family::Qm, 0)));

    r = apply_derivation(Derivation::Swap, gen(Family::K0, 2));
    REQUIRE(r);
    CHECK(r->c == gr(2));
    CHECK(r->g == gen(Family::L0, 2));

    r = apply_derivation(Derivation::Swap, gen(Family::Lp, -1));
    REQUIRE(r);
    CHECK(r->c == gr(-1));
    CHECK(r->g == gen(Family::Kp, -1));

    r = apply_derivation(Derivation::Swap, gen(Family::Pp, 1));
    REQUIRE(r);
    CHECK(r->c == gi(1));
    CHECK(r->g == gen(Family::Qp, 1));

    r = apply_derivation(Derivation::Swap, gen(Family::Qm, 2));
    REQUIRE(r);
    CHECK(r->c == gi(-2));
    CHECK(r->g == gen(Family::Pm, 2));

    // the swap squares to the squared mode counter
    for (const LoopGen& g : basis_window(2)) {
        auto once = apply_derivation(Derivation::Swap, g);
        if (!once) {
            CHECK(g.mode == 0);
            continue;
        }
        auto twice = apply_derivation(Derivation::Swap, once->g);
        REQUIRE(twice);
        CHECK(twice->g == g);
        CHECK(once->c * twice->c == gr(g.mode) * gr(g.mode));
    }
}

TEST_CASE("principal gradation") {
    CHECK(principal_grade(gen(Family::K0, -1)) == Rational(-2));
    CHECK(principal_grade(gen(Family::Kp, 0)) == Rational(1));
    CHECK(principal_grade(gen(Family::Km, 1)) == Rational(1));
    CHECK(principal_grade(gen(Family::Lm, 0)) == Rational(-1));
    CHECK(principal_grade(gen(Family::Pp, 0)) == Rational(1, 2));
    CHECK(principal_grade(gen(Family::Qm, 2)) == Rational(7, 2));

    // additive on nonzero brackets
    for (const LoopGen& a : basis_window(2))
        for (const LoopGen& b : basis_window(2))
            if (auto r = bracket_basis(a, b))
                CHECK(principal_grade(r->g) == principal_grade(a) + principal_grade(b));

    // realized by half the K0 charge plus twice the mode counter
    for (const LoopGen& x : basis_window(3)) {
        GaussianRational eig;
        if (auto br = bracket_basis(gen(Family::K0, 0), x)) {
            CHECK(br->g == x);
            eig = GaussianRational(Rational(1, 2)) * br->c;
        }
        eig = eig + gr(2 * x.mode);
        CHECK(eig == GaussianRational(principal_grade(x)));
    }
}

TEST_CASE("mode rescaling map") {
    CHECK(hom_f(gen(Family::K0, 1)) == gen(Family::K0, 4));
    CHECK(hom_f(gen(Family::L0, -2)) == gen(Family::L0, -8));
    CHECK(hom_f(gen(Family::Pp, 0)) == gen(Family::Pp, 1));
    CHECK(hom_f(gen(Family::Qm, 0)) == gen(Family::Qm, -1));
    CHECK(hom_f(gen(Family::Kp, 1)) == gen(Family::Kp, 6));
    CHECK(hom_f(gen(Family::Lm, -1)) == gen(Family::Lm, -6));
}

TEST_CASE("elements with ring coefficients") {
    ScalarExpr s10 = jet(fields::sigma10());
    ScalarExpr s01 = jet(fields::sigma01());
    ScalarExpr u = jet(fields::u00());

    AlgebraElement a = AlgebraElement::term(u, gen(Family::Kp, 0)) +
                       AlgebraElement::term(s10, gen(Family::Pp, 0));
    CHECK(a.coeff(gen(Family::Kp, 0)) == u);
    CHECK(a.coeff(gen(Family::Km, 0)).is_zero());
    CHECK((a - a).is_zero());

    AlgebraElement b = ScalarExpr(2) * a;
    CHECK(b.coeff(gen(Family::Pp, 0)) == ScalarExpr(2) * s10);

    AlgebraElement d = a.derive(Dir::X);
    CHECK(d.coeff(gen(Family::Kp, 0)) == jet(fields::u00(), 1));
    CHECK(d.coeff(gen(Family::Pp, 0)) == jet(fields::sigma10(), 1));

    // moving an odd generator past an odd coefficient costs a sign
    AlgebraElement lhs = algebra_bracket(AlgebraElement::term(gen(Family::Pp, 0)),
                                         AlgebraElement::term(s10, gen(Family::Qp, 0)));
    AlgebraElement want =
        AlgebraElement::term(-(gi(2) * s10), gen(Family::Lp, 0));
    CHECK(lhs == want);

    // same pairing through a grade-[01] coefficient needs no sign
    lhs = algebra_bracket(AlgebraElement::term(gen(Family::Pp, 0)),
                          AlgebraElement::term(s01, gen(Family::Qp, 0)));
    CHECK(lhs == AlgebraElement::term(gi(2) * s01, gen(Family::Lp, 0)));

    // only the right slot's coefficient is moved past a generator, so only
    // it must be grade-homogeneous; the left slot is plain bilinear
    AlgebraElement mixed = AlgebraElement::term(u + s10, gen(Family::Kp, 0));
    AlgebraElement km = AlgebraElement::term(gen(Family::Km, 0));
    CHECK_THROWS_AS(algebra_bracket(km, mixed), std::invalid_argument);
    AlgebraElement split =
        algebra_bracket(AlgebraElement::term(u, gen(Family::Kp, 0)), km) +
        algebra_bracket(AlgebraElement::term(s10, gen(Family::Kp, 0)), km);
    CHECK(algebra_bracket(mixed, km) == split);
}

TEST_CASE("element bracket is gradedly antisymmetric") {
    ScalarExpr s10 = jet(fields::sigma10());
    ScalarExpr s01 = jet(fields::sigma01());

    // both carry total grade [11] after pairing coefficient with generator
    AlgebraElement a = AlgebraElement::term(s10, gen(Family::Qp, 0));
    AlgebraElement b = AlgebraElement::term(s01, gen(Family::Pp, 1));
    CHECK(algebra_bracket(a, b) == -algebra_bracket(b, a));

    // a total-even combination commutes with itself
    AlgebraElement even = AlgebraElement::term(s10, gen(Family::Pp, 0)) +
                          AlgebraElement::term(s01, gen(Family::Qp, 0));
    CHECK(algebra_bracket(even, even).is_zero());
}

TEST_CASE("flatness of a transported pair") {
    // L_x = u K+, L_t = u K+ is flat exactly on u_t = u_x
    ScalarExpr u = jet(fields::u00());
    AlgebraElement lx = AlgebraElement::term(u, gen(Family::Kp, 0));
    AlgebraElement lt = AlgebraElement::term(u, gen(Family::Kp, 0));

    AlgebraElement f = zero_curvature(lx, lt);
    CHECK(!f.is_zero());

    EomSystem eom;
    eom.add_rule(fields::u00(), 0, 1, jet(fields::u00(), 1));
    AlgebraElement on_shell =
        f.map_coeffs([&](const ScalarExpr& c) { return eom.normalize(c); });
    CHECK(on_shell.is_zero());
}

TEST_CASE("principal decomposition of an element") {
    AlgebraElement a = AlgebraElement::term(gen(Family::Kp, 0)) +
                       AlgebraElement::term(gen(Family::Km, 1)) +
                       AlgebraElement::term(gen(Family::Pp, 0)) +
                       AlgebraElement::term(gen(Family::K0, 0));
    auto parts = principal_decompose(a);
    CHECK(parts.size() == 3);
    CHECK(parts.count(Rational(1)) == 1);
    CHECK(parts.count(Rational(1, 2)) == 1);
    CHECK(parts.count(Rational(0)) == 1);
    CHECK(parts[Rational(1)].parts().size() == 2);
    CHECK(parts[Rational(1)].coeff(gen(Family::Km, 1)) == ScalarExpr(1));
}
