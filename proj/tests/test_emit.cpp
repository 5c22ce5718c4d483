#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "z2osp/charges.hpp"
#include "z2osp/emit.hpp"
#include "z2osp/fields.hpp"
#include "z2osp/hierarchy.hpp"
#include "z2osp/miura.hpp"

using namespace z2osp;
using njson = nlohmann::json;

TEST_CASE("latex: scalar expressions") {
    ScalarExpr u = jet(fields::u00()), u1 = jet(fields::u00(), 1);
    ScalarExpr v = jet(fields::u11());

    CHECK(to_latex(ScalarExpr()) == "0");
    CHECK(to_latex(ScalarExpr(Rational(-3, 2))) == "-\\tfrac{3}{2}");
    CHECK(to_latex(u1) == "u_{00}'");
    CHECK(to_latex(jet(fields::u00(), 4)) == "u_{00}^{(4)}");
    CHECK(to_latex(u1 - ScalarExpr(2) * v * v) == "u_{00}' - 2 u_{11}^{2}");
    CHECK(to_latex(ScalarExpr::i() * v) == "i u_{11}");
    CHECK(to_latex((ScalarExpr(1) + ScalarExpr::i()) * u) == "\\left(1+i\\right) u_{00}");
    // squared primed jets need the parentheses, plain powers do not
    CHECK(to_latex(ScalarExpr(Rational(1, 2)) * u1 * u1) == "\\tfrac{1}{2} \\left(u_{00}'\\right)^{2}");
    CHECK(to_latex(exp_of(fields::phi00(), Rational(2))) == "\\mathrm{e}^{2\\varphi_{00}}");
    CHECK(to_latex(cosh_of(fields::phi11(), Rational(1, 2))) ==
          "\\cosh\\left(\\tfrac{1}{2}\\varphi_{11}\\right)");
    CHECK(to_latex(chiral_sym(fields::kplus())) == "k_{+}");
}

TEST_CASE("latex: table entries and algebra elements") {
    auto table = mkdv_coefficient_table();
    CHECK(to_latex(table.at("h00")) == "4 u_{00}");
    CHECK(to_latex(table.at("xi10")) == "-4 \\sigma_{10}'");

    std::string lx = to_latex(mkdv_lax_x());
    CHECK(lx.find("u_{00} K^{0}_{0}") != std::string::npos);
    CHECK(lx.find("K^{+}_{0}") != std::string::npos);
    CHECK(lx.find("K^{-}_{1}") != std::string::npos);
    CHECK(lx.find("\\sigma_{10} P^{+}_{0}") != std::string::npos);

    std::string mat = to_latex(rep_gen(LoopGen{Family::K0, 1}));
    CHECK(mat.find("\\begin{pmatrix}") != std::string::npos);
    CHECK(mat.find("\\lambda") != std::string::npos);
    CHECK(mat.find("-\\lambda") != std::string::npos);

    std::string tab = coefficient_table_latex(table);
    CHECK(tab.find("a_{00} &=") != std::string::npos);
    CHECK(tab.find("\\eta_{01} &=") != std::string::npos);
    CHECK(tab.find("\\rho_{10} &=") != std::string::npos);
}

TEST_CASE("json: expressions round-trip exactly") {
    auto table = mkdv_coefficient_table();
    for (const char* key : {"a00", "b11", "rho10", "d00"}) {
        ScalarExpr e = table.at(key);
        CHECK(expr_from_json(to_json(e)) == e);
    }
    CHECK(expr_from_json(to_json(kdv_a00())) == kdv_a00());
    CHECK(expr_from_json(to_json(sigma_bilinear_11())) == sigma_bilinear_11());
    CHECK(expr_from_json(to_json(ScalarExpr())) == ScalarExpr());

    // a transcendental generator carries its frequency through the schema
    ScalarExpr t = chiral_sym(fields::kplus()) * exp_of(fields::phi00(), Rational(1, 2));
    CHECK(expr_from_json(to_json(t)) == t);

    // an antiderivative symbol survives while its registration is live
    GammaColumn col = gamma_solve(4, 1);
    ScalarExpr w = col.entry(3, 2);
    REQUIRE(w.has_antiderivative());
    CHECK(expr_from_json(to_json(w)) == w);
}

TEST_CASE("json: canonical form makes emission order-independent") {
    ScalarExpr u = jet(fields::u00()), v = jet(fields::u11());
    ScalarExpr e1 = u + ScalarExpr(3) * v * v;
    ScalarExpr e2 = ScalarExpr(3) * v * v + u;
    CHECK(to_json(e1) == to_json(e2));
    CHECK(to_latex(e1) == to_latex(e2));
}

TEST_CASE("json: malformed input is rejected") {
    CHECK_THROWS_AS(expr_from_json("not json"), std::invalid_argument);
    CHECK_THROWS_AS(expr_from_json("{\"terms\": 3}"), std::invalid_argument);

    std::string mult0 = R"({"terms":[{"coeff":{"re":"1","im":"0"},"monomial":[
        [{"kind":"jet","field":"u00","dx":0,"dt":0,"grade":"[00]"}, 0]]}]})";
    CHECK_THROWS_AS(expr_from_json(mult0), std::invalid_argument);

    std::string badgrade = R"({"terms":[{"coeff":{"re":"1","im":"0"},"monomial":[
        [{"kind":"jet","field":"u00","dx":0,"dt":0,"grade":"[11]"}, 1]]}]})";
    CHECK_THROWS_AS(expr_from_json(badgrade), std::invalid_argument);

    std::string unknownw = R"({"terms":[{"coeff":{"re":"1","im":"0"},"monomial":[
        [{"kind":"antiderivative","field":"nosuchsymbol","dx":0,"dt":0,"grade":"[00]"}, 1]]}]})";
    CHECK_THROWS_AS(expr_from_json(unknownw), std::invalid_argument);
}

TEST_CASE("json: algebra elements, matrices and the coefficient table") {
    njson lax = njson::parse(to_json(mkdv_lax_x()));
    REQUIRE(lax.at("terms").is_array());
    bool found_kp = false;
    for (const auto& t : lax.at("terms")) {
        if (t.at("family") == "K+" && t.at("mode") == 0) {
            found_kp = true;
            CHECK(t.at("grade") == "[00]");
            CHECK(t.at("coeff").at("terms").size() == 1);
            CHECK(t.at("coeff").at("terms")[0].at("coeff").at("re") == "1");
            CHECK(t.at("coeff").at("terms")[0].at("monomial").empty());
        }
    }
    CHECK(found_kp);

    njson mat = njson::parse(to_json(rep_gen(LoopGen{Family::K0, 1})));
    CHECK(mat.at("dim") == 6);
    REQUIRE(mat.at("rows").size() == 6);
    const auto& cell = mat.at("rows")[0][0];
    REQUIRE(cell.size() == 1);
    CHECK(cell[0].at("power") == 1);
    CHECK(cell[0].at("coeff").at("terms")[0].at("coeff").at("re") == "1");
    CHECK(mat.at("rows")[4][4].empty());

    njson tab = njson::parse(coefficient_table_json(mkdv_coefficient_table()));
    CHECK(tab.at("coefficients").size() == 18);
    ScalarExpr back = expr_from_json(tab.at("coefficients").at("a00").dump());
    CHECK(back == mkdv_coefficient_table().at("a00"));
}

TEST_CASE("structure constants: dump agrees with the bracket at other modes") {
    njson dump = njson::parse(structure_constants_json());
    REQUIRE(dump.at("families").size() == 10);

    auto fam = [](const std::string& s) {
        for (Family f : {Family::K0, Family::Kp, Family::Km, Family::L0, Family::Lp, Family::Lm,
                         Family::Pp, Family::Pm, Family::Qp, Family::Qm})
            if (family_symbol(f) == s) return f;
        throw std::logic_error("unknown family symbol " + s);
    };

    size_t live = 0;
    for (Family a : {Family::K0, Family::Kp, Family::Km, Family::L0, Family::Lp, Family::Lm,
                     Family::Pp, Family::Pm, Family::Qp, Family::Qm})
        for (Family b : {Family::K0, Family::Kp, Family::Km, Family::L0, Family::Lp, Family::Lm,
                         Family::Pp, Family::Pm, Family::Qp, Family::Qm})
            if (auto r = bracket_basis(LoopGen{a, 0}, LoopGen{b, 0}); r && !r->c.is_zero()) ++live;
    CHECK(dump.at("brackets").size() == live);

    for (const auto& entry : dump.at("brackets")) {
        CHECK(entry.at("mode_offset") == 0);
        Family a = fam(entry.at("left")), b = fam(entry.at("right"));
        // the emitter probes modes (1,2); the constants must match at (-2,1)
        auto r = bracket_basis(LoopGen{a, -2}, LoopGen{b, 1});
        REQUIRE(r.has_value());
        CHECK(family_symbol(r->g.f) == entry.at("result"));
        CHECK(r->g.mode == -1);
        CHECK(r->c.re.str() == entry.at("coeff").at("re"));
        CHECK(r->c.im.str() == entry.at("coeff").at("im"));
    }

    // two pinned values: an anticommutator and a mixed-sector commutator
    bool qq = false, pq = false;
    for (const auto& entry : dump.at("brackets")) {
        if (entry.at("left") == "Q+" && entry.at("right") == "Q+") {
            qq = true;
            CHECK(entry.at("result") == "K+");
            CHECK(entry.at("coeff").at("re") == "2");
            CHECK(entry.at("coeff").at("im") == "0");
        }
        if (entry.at("left") == "P+" && entry.at("right") == "Q-") {
            pq = true;
            CHECK(entry.at("result") == "L0");
            CHECK(entry.at("coeff").at("re") == "0");
            CHECK(entry.at("coeff").at("im") == "1");
        }
    }
    CHECK(qq);
    CHECK(pq);

    std::string tex = structure_constants_latex();
    CHECK(tex.find("\\llbracket K^{0}_{m}, K^{+}_{n} \\rrbracket &=& 2\\,K^{+}_{m+n}") !=
          std::string::npos);
    CHECK(tex.find("\\llbracket P^{+}_{m}, Q^{-}_{n} \\rrbracket &=& i\\,L^{0}_{m+n}") !=
          std::string::npos);
}
