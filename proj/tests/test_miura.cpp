#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "z2osp/calculus.hpp"
#include "z2osp/fields.hpp"
#include "z2osp/miura.hpp"

using namespace z2osp;

TEST_CASE("substitution images and prolongation") {
    ScalarExpr u = jet(fields::u00()), v = jet(fields::u11());
    CHECK(miura_u00() == -jet(fields::u00(), 1) + u * u + v * v);
    CHECK(miura_u11() == -jet(fields::u11(), 1) + ScalarExpr(2) * u * v);

    // derivatives of the substituted potential prolong
    CHECK(miura_apply(jet(fields::cap_u00(), 1)) == miura_u00().derive(Dir::X));
    CHECK(miura_apply(jet(fields::cap_u11(), 2)) == miura_u11().derive(Dir::X, 2));

    // products and untouched fields pass through
    ScalarExpr mixed = jet(fields::cap_u00()) * jet(fields::sigma10(), 1);
    CHECK(miura_apply(mixed) == miura_u00() * jet(fields::sigma10(), 1));
}

TEST_CASE("factorization of the mKdV flow through the substitution") {
    auto checks = miura_factorization_check();
    REQUIRE(checks.size() == 4);
    for (const auto& c : checks) {
        CHECK_MESSAGE(c.holds, (c.name + ": residual " + c.residual.str()));
    }
}

TEST_CASE("matrix Riccati form") {
    auto checks = riccati_form_check();
    REQUIRE(checks.size() == 4);
    for (const auto& c : checks) {
        CHECK_MESSAGE(c.holds, (c.name + ": residual " + c.residual.str()));
    }
}

TEST_CASE("KdV pair is flat on the KdV flow") {
    FlowSystem sys = verify_kdv();
    CHECK_MESSAGE(sys.flat(), sys.residual.str());
}

TEST_CASE("gauge transform maps the mKdV pair onto the image of the KdV pair") {
    auto checks = gauge_agreement_check();
    // 6 x-side generators, 16 t-side generators, one flatness flag
    REQUIRE(checks.size() == 23);
    for (const auto& c : checks) {
        CHECK_MESSAGE(c.holds, (c.name + ": residual " + c.residual.str()));
    }
}

TEST_CASE("closed-form auxiliary coefficients agree through the substitution") {
    ScalarExpr s00 = sigma_bilinear_00(), s11 = sigma_bilinear_11();
    ScalarExpr d00 = ScalarExpr(2) * (-jet(fields::cap_u00()) + ScalarExpr(3) * s00);
    ScalarExpr f11 = ScalarExpr(2) *
                     (-jet(fields::cap_u11()) + ScalarExpr(3) * ScalarExpr::i() * s11);
    auto table = mkdv_coefficient_table();
    CHECK(miura_apply(d00) == table.at("d00"));
    CHECK(miura_apply(f11) == table.at("f11"));
}

TEST_CASE("KdV reductions") {
    EomSystem eom = kdv_eom();
    uint32_t Uf = fields::cap_u00(), Vf = fields::cap_u11();
    uint32_t sf = fields::sigma10(), qf = fields::sigma01();
    ScalarExpr U = jet(Uf), U1 = jet(Uf, 1), U3 = jet(Uf, 3);
    ScalarExpr s = jet(sf), s1 = jet(sf, 1), s3 = jet(sf, 3);

    SUBCASE("all graded fields dropped") {
        ScalarExpr r = eom.normalize(jet(Uf, 0, 1));
        for (uint32_t f : {Vf, sf, qf}) r = r.substitute_field(f, ScalarExpr(0));
        CHECK(r == U3 - ScalarExpr(6) * U * U1);
    }

    SUBCASE("one odd field kept") {
        ScalarExpr ru = eom.normalize(jet(Uf, 0, 1));
        ScalarExpr rs = eom.normalize(jet(sf, 0, 1));
        for (uint32_t f : {Vf, qf}) {
            ru = ru.substitute_field(f, ScalarExpr(0));
            rs = rs.substitute_field(f, ScalarExpr(0));
        }
        ScalarExpr w = s1 * s;  // odd bilinear that survives the reduction
        CHECK(ru == U3 - ScalarExpr(6) * U * U1 + ScalarExpr(6) * U1 * w +
                        ScalarExpr(12) * U * w.derive(Dir::X) - ScalarExpr(3) * w.derive(Dir::X, 3));
        CHECK(rs == ScalarExpr(4) * s3 - ScalarExpr(6) * U * s1 - ScalarExpr(3) * U1 * s);
    }
}

TEST_CASE("perturbed KdV pair is not flat") {
    EomSystem eom = kdv_eom();
    AlgebraElement lx = kdv_lax_x();
    for (LoopGen g : {LoopGen{Family::Kp, 1}, LoopGen{Family::Kp, -1}}) {
        AlgebraElement lt2 = kdv_lax_t() + AlgebraElement::term(ScalarExpr(1), g);
        AlgebraElement curv = zero_curvature(lx, lt2);
        AlgebraElement res = curv.map_coeffs([&](const ScalarExpr& e) { return eom.normalize(e); });
        CHECK_MESSAGE(!res.is_zero(), (loop_gen_str(g) + ": perturbation went unnoticed"));
    }
}
