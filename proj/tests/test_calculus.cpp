#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "z2osp/calculus.hpp"
#include "z2osp/eom.hpp"
#include "z2osp/scalar_expr.hpp"

using namespace z2osp;

namespace {

struct Ids {
    uint32_t u, s, t, ph;
};

Ids ids() {
    auto& reg = FieldRegistry::instance();
    static Ids v{
        reg.register_field("calc_u00", g00),
        reg.register_field("calc_s10", g10),
        reg.register_field("calc_t01", g01),
        reg.register_field("calc_ph00", g00),
    };
    return v;
}

// brute-force exactness oracle: search for an antiderivative in the span of
// all jet monomials up to the given differential order and degree
bool exact_by_ansatz(const ScalarExpr& e, uint32_t field, int max_dx, int max_deg) {
    std::vector<ScalarExpr> cols;
    std::function<void(int, int, const ScalarExpr&)> walk = [&](int from, int deg,
                                                                const ScalarExpr& cur) {
        if (deg > 0) cols.push_back(cur.derive(Dir::X));
        if (deg == max_deg) return;
        for (int dx = from; dx <= max_dx; ++dx) {
            ScalarExpr nxt = cur * jet(field, dx);
            if (nxt.is_zero()) continue; // repeated odd factor
            walk(dx, deg + 1, nxt);
        }
    };
    walk(0, 0, ScalarExpr(1));
    // Gaussian elimination over the exact coefficient field
    ScalarExpr target = e;
    for (size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].is_zero()) continue;
        auto lead = std::prev(cols[c].terms().end());
        for (size_t c2 = c + 1; c2 < cols.size(); ++c2) {
            GaussianRational r = cols[c2].coeff(lead->first) / lead->second;
            if (!r.is_zero()) cols[c2] = cols[c2] - r * cols[c];
        }
        GaussianRational r = target.coeff(lead->first) / lead->second;
        if (!r.is_zero()) target = target - r * cols[c];
    }
    return target.is_zero();
}

}  // namespace

TEST_CASE("exact integration of jet monomials") {
    Ids f = ids();
    ScalarExpr s2s = jet(f.s, 2) * jet(f.s, 0);
    auto q = integrate_x(s2s);
    REQUIRE(q);
    CHECK(*q == jet(f.s, 1) * jet(f.s, 0));
    CHECK(q->derive(Dir::X) == s2s);
}

TEST_CASE("obstructed integrands are reported as not exact") {
    Ids f = ids();
    ScalarExpr s2s1 = jet(f.s, 2) * jet(f.s, 1);
    CHECK(!integrate_x(s2s1));
    CHECK(!exact_by_ansatz(s2s1, f.s, 3, 3));
    CHECK(!integrate_x(jet(f.u, 0)));
    CHECK(!integrate_x(ScalarExpr(3)));
    // the ansatz oracle agrees on the exact example too
    CHECK(exact_by_ansatz(jet(f.s, 2) * jet(f.s, 0), f.s, 3, 3));
}

TEST_CASE("integration through transcendental factors") {
    Ids f = ids();
    ScalarExpr e = ScalarExpr(2) * jet(f.ph, 1) * exp_of(f.ph, Rational(2));
    auto q = integrate_x(e);
    REQUIRE(q);
    CHECK(*q == exp_of(f.ph, Rational(2)));
    ScalarExpr h = ScalarExpr(2) * jet(f.ph, 1) * cosh_of(f.ph, Rational(2));
    auto qh = integrate_x(h);
    REQUIRE(qh);
    CHECK(*qh == sinh_of(f.ph, Rational(2)));
    // phi'' exp(phi) alone is not exact, but adding phi'^2 exp(phi) makes it so
    ScalarExpr mixed = (jet(f.ph, 2) + jet(f.ph, 1) * jet(f.ph, 1)) * exp_of(f.ph, Rational(1));
    auto qm = integrate_x(mixed);
    REQUIRE(qm);
    CHECK(*qm == jet(f.ph, 1) * exp_of(f.ph, Rational(1)));
    CHECK(!integrate_x(jet(f.ph, 2) * exp_of(f.ph, Rational(1))));
}

TEST_CASE("random round trips: integrate the derivative back") {
    Ids f = ids();
    std::mt19937 rng(402217);
    std::vector<ScalarExpr> pool = {
        jet(f.u, 0), jet(f.u, 1), jet(f.s, 0), jet(f.s, 1),
        jet(f.t, 0), jet(f.t, 1), exp_of(f.ph, Rational(1)), jet(f.ph, 1),
    };
    std::uniform_int_distribution<int> nf(1, 3), pick(0, (int)pool.size() - 1), num(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
        ScalarExpr q;
        int terms = 1 + trial % 3;
        for (int k = 0; k < terms; ++k) {
            ScalarExpr m(1);
            int n = nf(rng);
            for (int j = 0; j < n; ++j) m = m * pool[pick(rng)];
            int c = num(rng);
            if (c == 0) c = 2;
            q += ScalarExpr(c) * m;
        }
        ScalarExpr d = q.derive(Dir::X);
        auto back = integrate_x(d);
        REQUIRE(back);
        CHECK(back->derive(Dir::X) == d);
        CHECK(is_total_x_derivative(d));
    }
}

TEST_CASE("euler operator annihilates exactly the total derivatives") {
    Ids f = ids();
    ScalarExpr u0 = jet(f.u, 0), u1 = jet(f.u, 1), u2 = jet(f.u, 2);
    CHECK(euler_x(u1 * u0, f.u).is_zero());
    CHECK(euler_x(u0 * u0, f.u) == ScalarExpr(2) * u0);
    CHECK(euler_x(u2 * u0, f.u) == ScalarExpr(2) * u2);
    CHECK(euler_x(exp_of(f.ph, Rational(1)) * jet(f.ph, 1), f.ph).is_zero());
    ScalarExpr s0 = jet(f.s, 0), s1 = jet(f.s, 1), s2 = jet(f.s, 2);
    CHECK(euler_x(s2 * s0, f.s).is_zero());       // equals d/dx(s' s) for odd s
    CHECK(euler_x(s2 * s1, f.s) == ScalarExpr(2) * jet(f.s, 3));
    CHECK(euler_x((s1 * s0).derive(Dir::X), f.s).is_zero());
}

TEST_CASE("total-derivative classification") {
    Ids f = ids();
    ScalarExpr u0 = jet(f.u, 0), u1 = jet(f.u, 1), u2 = jet(f.u, 2);
    CHECK(is_total_x_derivative(u2 * u0 + u1 * u1));
    CHECK(!is_total_x_derivative(u2 * u0));
    CHECK(!is_total_x_derivative(u2 * u0 + u1 * u1 + ScalarExpr(1)));
    // a lone t-jet integrates in x for no local expression
    CHECK(!is_total_x_derivative(jet(f.u, 0, 1)));
    CHECK(is_total_x_derivative(jet(f.u, 1, 1)));
    CHECK(equal_mod_dx(u2 * u0, -(u1 * u1)));
    auto c = proportional_mod_dx(ScalarExpr(2) * u2 * u0, u1 * u1);
    REQUIRE(c);
    CHECK(*c == GaussianRational(-2));
}

TEST_CASE("antiderivative symbols participate in integration") {
    auto& reg = FieldRegistry::instance();
    Ids f = ids();
    ScalarExpr def = jet(f.u, 0);
    uint32_t w = reg.register_antiderivative("calc_W", g00, def);
    ScalarExpr W = anti_sym(w);
    auto q0 = integrate_x(jet(f.u, 0));
    REQUIRE(q0);
    CHECK(*q0 == W);
    // u' W + u^2 = d/dx (u W)
    ScalarExpr e = jet(f.u, 1) * W + jet(f.u, 0) * jet(f.u, 0);
    auto q = integrate_x(e);
    REQUIRE(q);
    CHECK(*q == jet(f.u, 0) * W);
    // W u = d/dx (W^2 / 2)
    auto q2 = integrate_x(W * jet(f.u, 0));
    REQUIRE(q2);
    CHECK(*q2 == GaussianRational(Rational(1, 2)) * W * W);
    CHECK(q2->derive(Dir::X) == W * jet(f.u, 0));
}

TEST_CASE("on-shell normalization replaces solved jets recursively") {
    auto& reg = FieldRegistry::instance();
    uint32_t a = reg.register_field("calc_eom_a", g00);
    uint32_t b = reg.register_field("calc_eom_b", g00);
    EomSystem sys;
    // a_t = b b', b_t = a'
    sys.add_rule(a, 0, 1, jet(b, 0) * jet(b, 1));
    sys.add_rule(b, 0, 1, jet(a, 1));
    ScalarExpr e = jet(a, 0, 1);
    CHECK(sys.normalize(e) == jet(b, 0) * jet(b, 1));
    // d/dt then normalize equals normalize of the prolonged rule
    ScalarExpr e2 = jet(a, 1, 1);
    CHECK(sys.normalize(e2) == (jet(b, 0) * jet(b, 1)).derive(Dir::X));
    // chained substitution: a_{tt} needs the rule for b_t inside
    ScalarExpr e3 = jet(a, 0, 2);
    ScalarExpr expect = jet(a, 1) * jet(b, 1) + jet(b, 0) * jet(a, 2);
    CHECK(sys.normalize(e3) == expect);
    CHECK_THROWS_AS(sys.add_rule(a, 0, 1, jet(b, 0)), std::invalid_argument);
    EomSystem bad;
    CHECK_THROWS_AS(bad.add_rule(a, 0, 1, jet(a, 0, 1)), std::invalid_argument);
}
