#include "z2osp/miura.hpp"

#include <array>

#include "z2osp/calculus.hpp"
#include "z2osp/fields.hpp"

namespace z2osp {

namespace {

LoopGen gen(Family f, int m) { return LoopGen{f, m}; }

// the raising element whose exponential conjugates the mKdV pair into the
// KdV pair
AlgebraElement gauge_generator() {
    AlgebraElement n = AlgebraElement::term(jet(fields::u00()), gen(Family::Kp, -1));
    n += AlgebraElement::term(jet(fields::u11()), gen(Family::Lp, -1));
    return n;
}

Rational min_principal_grade(const AlgebraElement& a) {
    auto dec = principal_decompose(a);
    return dec.begin()->first;
}

}  // namespace

ScalarExpr miura_u00() {
    ScalarExpr u = jet(fields::u00()), v = jet(fields::u11());
    return -jet(fields::u00(), 1) + u * u + v * v;
}

ScalarExpr miura_u11() {
    return -jet(fields::u11(), 1) +
           ScalarExpr(2) * jet(fields::u00()) * jet(fields::u11());
}

ScalarExpr miura_apply(const ScalarExpr& e) {
    return e.substitute_field(fields::cap_u00(), miura_u00())
        .substitute_field(fields::cap_u11(), miura_u11());
}

AlgebraElement miura_apply(const AlgebraElement& a) {
    return a.map_coeffs([](const ScalarExpr& c) { return miura_apply(c); });
}

std::vector<EquationCheck> miura_factorization_check() {
    uint32_t uf = fields::u00(), vf = fields::u11();
    ScalarExpr I = ScalarExpr::i();
    ScalarExpr u = jet(uf), v = jet(vf);
    ScalarExpr s00 = sigma_bilinear_00(), s11 = sigma_bilinear_11();

    auto table = mkdv_coefficient_table();
    // flow residuals with the t-derivatives kept as free jets
    ScalarExpr eu = -jet(uf, 0, 1) + table.at("a00").derive(Dir::X);
    ScalarExpr ev = -jet(vf, 0, 1) + table.at("b11").derive(Dir::X);

    ScalarExpr U = miura_u00(), V = miura_u11();
    ScalarExpr A = U.derive(Dir::X, 2) -
                   ScalarExpr(3) * (U * U + V * V + s00.derive(Dir::X, 2)) +
                   ScalarExpr(6) * (U * s00 + I * V * s11);
    ScalarExpr B = V.derive(Dir::X, 2) -
                   ScalarExpr(3) * (ScalarExpr(2) * U * V + I * s11.derive(Dir::X, 2)) +
                   ScalarExpr(6) * (V * s00 + I * U * s11);
    ScalarExpr flow_u = A.derive(Dir::X) +
                        ScalarExpr(6) * (U * s00.derive(Dir::X) + I * V * s11.derive(Dir::X));
    ScalarExpr flow_v = B.derive(Dir::X) +
                        ScalarExpr(6) * (V * s00.derive(Dir::X) + I * U * s11.derive(Dir::X));

    std::vector<EquationCheck> checks;
    auto record = [&](const std::string& name, const ScalarExpr& res) {
        checks.push_back({name, res.is_zero(), res});
    };

    ScalarExpr lhs1 = -(eu.derive(Dir::X)) + ScalarExpr(2) * u * eu + ScalarExpr(2) * v * ev;
    ScalarExpr lhs2 = -(ev.derive(Dir::X)) + ScalarExpr(2) * u * ev + ScalarExpr(2) * v * eu;
    record("even factorization", lhs1 - (-(U.derive(Dir::T)) + flow_u));
    record("swap factorization", lhs2 - (-(V.derive(Dir::T)) + flow_v));

    // corollary: on the mKdV flow the images obey the KdV flow
    EomSystem eom = mkdv_eom();
    record("even image flow on-shell", eom.normalize(U.derive(Dir::T)) - eom.normalize(flow_u));
    record("swap image flow on-shell", eom.normalize(V.derive(Dir::T)) - eom.normalize(flow_v));
    return checks;
}

std::vector<EquationCheck> riccati_form_check() {
    ScalarExpr u = jet(fields::u00()), v = jet(fields::u11());
    std::array<std::array<ScalarExpr, 2>, 2> Y = {{{-u, -v}, {-v, -u}}};
    std::array<std::array<ScalarExpr, 2>, 2> U = {{{miura_u00(), miura_u11()},
                                                   {miura_u11(), miura_u00()}}};
    std::vector<EquationCheck> checks;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            ScalarExpr rhs = Y[i][j].derive(Dir::X);
            for (int k = 0; k < 2; ++k) rhs = rhs + Y[i][k] * Y[k][j];
            ScalarExpr res = U[i][j] - rhs;
            checks.push_back({"riccati entry (" + std::to_string(i + 1) + "," +
                                  std::to_string(j + 1) + ")",
                              res.is_zero(), res});
        }
    }
    return checks;
}

AlgebraElement gauge_transform(const AlgebraElement& l, Dir d) {
    AlgebraElement n = gauge_generator();
    AlgebraElement acc = l, cur = l;
    for (int k = 1; !cur.is_zero(); ++k) {
        cur = ScalarExpr(Rational(-1, k)) * algebra_bracket(n, cur);
        if (!cur.is_zero() && min_principal_grade(cur) < Rational(-4)) {
            throw NotExact("gauge_transform: adjoint series fell below the grade floor");
        }
        if (k > 16) throw NotExact("gauge_transform: adjoint series did not terminate");
        acc += cur;
    }
    return acc - n.derive(d);
}

AlgebraElement kdv_lax_x() {
    AlgebraElement l = AlgebraElement::term(jet(fields::cap_u00()), gen(Family::Kp, -1));
    l += AlgebraElement::term(jet(fields::cap_u11()), gen(Family::Lp, -1));
    l += AlgebraElement::term(jet(fields::sigma10()), gen(Family::Pp, 0));
    l += AlgebraElement::term(jet(fields::sigma01()), gen(Family::Qp, 0));
    l += AlgebraElement::term(gen(Family::Kp, 0));
    l += AlgebraElement::term(gen(Family::Km, 1));
    return l;
}

ScalarExpr kdv_a00() {
    ScalarExpr I = ScalarExpr::i();
    ScalarExpr U = jet(fields::cap_u00()), V = jet(fields::cap_u11());
    ScalarExpr s00 = sigma_bilinear_00(), s11 = sigma_bilinear_11();
    return jet(fields::cap_u00(), 2) -
           ScalarExpr(3) * (U * U + V * V + s00.derive(Dir::X, 2)) +
           ScalarExpr(6) * (U * s00 + I * V * s11);
}

ScalarExpr kdv_b11() {
    ScalarExpr I = ScalarExpr::i();
    ScalarExpr U = jet(fields::cap_u00()), V = jet(fields::cap_u11());
    ScalarExpr s00 = sigma_bilinear_00(), s11 = sigma_bilinear_11();
    return jet(fields::cap_u11(), 2) -
           ScalarExpr(3) * (ScalarExpr(2) * U * V + I * s11.derive(Dir::X, 2)) +
           ScalarExpr(6) * (V * s00 + I * U * s11);
}

AlgebraElement kdv_lax_t() {
    ScalarExpr I = ScalarExpr::i();
    ScalarExpr U = jet(fields::cap_u00()), V = jet(fields::cap_u11());
    ScalarExpr s = jet(fields::sigma10()), q = jet(fields::sigma01());
    ScalarExpr s1 = jet(fields::sigma10(), 1), q1 = jet(fields::sigma01(), 1);
    ScalarExpr s2 = jet(fields::sigma10(), 2), q2 = jet(fields::sigma01(), 2);
    ScalarExpr s00 = sigma_bilinear_00(), s11 = sigma_bilinear_11();
    ScalarExpr d00 = ScalarExpr(2) * (-U + ScalarExpr(3) * s00);
    ScalarExpr f11 = ScalarExpr(2) * (-V + ScalarExpr(3) * I * s11);

    AlgebraElement l;
    l += AlgebraElement::term(kdv_a00() + U * U + V * V, gen(Family::Kp, -1));
    l += AlgebraElement::term(kdv_b11() + ScalarExpr(2) * U * V, gen(Family::Lp, -1));
    ScalarExpr half(Rational(1, 2));
    l += AlgebraElement::term(half * d00.derive(Dir::X), gen(Family::K0, 0));
    l += AlgebraElement::term(half * f11.derive(Dir::X), gen(Family::L0, 0));
    l += AlgebraElement::term(ScalarExpr(4) * s2 + d00 * s + I * f11 * q, gen(Family::Pp, 0));
    l += AlgebraElement::term(ScalarExpr(4) * q2 + d00 * q - I * f11 * s, gen(Family::Qp, 0));
    l += AlgebraElement::term(ScalarExpr(2) * (U + s00), gen(Family::Kp, 0));
    l += AlgebraElement::term(ScalarExpr(2) * (V + I * s11), gen(Family::Lp, 0));
    l += AlgebraElement::term(d00, gen(Family::Km, 1));
    l += AlgebraElement::term(f11, gen(Family::Lm, 1));
    l += AlgebraElement::term(ScalarExpr(-4) * s1, gen(Family::Pm, 1));
    l += AlgebraElement::term(ScalarExpr(-4) * q1, gen(Family::Qm, 1));
    l += AlgebraElement::term(ScalarExpr(4) * s, gen(Family::Pp, 1));
    l += AlgebraElement::term(ScalarExpr(4) * q, gen(Family::Qp, 1));
    l += AlgebraElement::term(ScalarExpr(4), gen(Family::Kp, 1));
    l += AlgebraElement::term(ScalarExpr(4), gen(Family::Km, 2));
    return l;
}

EomSystem kdv_eom() {
    ScalarExpr I = ScalarExpr::i();
    ScalarExpr U = jet(fields::cap_u00()), V = jet(fields::cap_u11());
    ScalarExpr U1 = jet(fields::cap_u00(), 1), V1 = jet(fields::cap_u11(), 1);
    ScalarExpr s1 = jet(fields::sigma10(), 1), q1 = jet(fields::sigma01(), 1);
    ScalarExpr s3 = jet(fields::sigma10(), 3), q3 = jet(fields::sigma01(), 3);
    ScalarExpr s00 = sigma_bilinear_00(), s11 = sigma_bilinear_11();

    EomSystem eom;
    eom.add_rule(fields::cap_u00(), 0, 1,
                 kdv_a00().derive(Dir::X) +
                     ScalarExpr(6) * (U * s00.derive(Dir::X) + I * V * s11.derive(Dir::X)));
    eom.add_rule(fields::cap_u11(), 0, 1,
                 kdv_b11().derive(Dir::X) +
                     ScalarExpr(6) * (V * s00.derive(Dir::X) + I * U * s11.derive(Dir::X)));
    eom.add_rule(fields::sigma10(), 0, 1,
                 ScalarExpr(4) * s3 - ScalarExpr(6) * U * s1 - ScalarExpr(6) * I * V * q1 -
                     ScalarExpr(3) * U1 * jet(fields::sigma10()) -
                     ScalarExpr(3) * I * V1 * jet(fields::sigma01()));
    eom.add_rule(fields::sigma01(), 0, 1,
                 ScalarExpr(4) * q3 - ScalarExpr(6) * U * q1 + ScalarExpr(6) * I * V * s1 -
                     ScalarExpr(3) * U1 * jet(fields::sigma01()) +
                     ScalarExpr(3) * I * V1 * jet(fields::sigma10()));
    return eom;
}

FlowSystem verify_kdv() {
    FlowSystem sys;
    sys.name = "kdv";
    sys.lx = kdv_lax_x();
    sys.lt = kdv_lax_t();
    sys.eom = kdv_eom();
    AlgebraElement curv = zero_curvature(sys.lx, sys.lt);
    sys.residual = curv.map_coeffs([&](const ScalarExpr& e) { return sys.eom.normalize(e); });
    sys.notes.push_back("closed-form pair in the KdV potentials");
    return sys;
}

std::vector<EquationCheck> gauge_agreement_check() {
    AlgebraElement gx = gauge_transform(mkdv_lax_x(), Dir::X);
    AlgebraElement gt = gauge_transform(mkdv_lax_t(mkdv_coefficient_table()), Dir::T);
    AlgebraElement ex = miura_apply(kdv_lax_x());
    AlgebraElement et = miura_apply(kdv_lax_t());

    // the Maurer-Cartan term of the t direction brings in free t-derivative
    // jets of the potentials, so the comparison is made on the mKdV flow
    EomSystem eom = mkdv_eom();
    std::vector<EquationCheck> checks;
    auto compare = [&](const std::string& side, const AlgebraElement& got,
                       const AlgebraElement& want) {
        AlgebraElement diff = got - want;
        std::map<LoopGen, ScalarExpr> all;
        for (const auto& [g, c] : want.parts()) all[g] = ScalarExpr(0);
        for (const auto& [g, c] : diff.parts()) all[g] = eom.normalize(c);
        for (const auto& [g, c] : all) {
            checks.push_back({side + " part " + loop_gen_str(g), c.is_zero(), c});
        }
    };
    compare("x", gx, ex);
    compare("t", gt, et);

    // the transformed pair must itself be flat on the mKdV flow
    AlgebraElement curv = zero_curvature(gx, gt);
    AlgebraElement res = curv.map_coeffs([&](const ScalarExpr& e) { return eom.normalize(e); });
    ScalarExpr flag = res.is_zero() ? ScalarExpr(0) : ScalarExpr(1);
    checks.push_back({"transformed pair stays flat", res.is_zero(), flag});
    return checks;
}

}  // namespace z2osp
