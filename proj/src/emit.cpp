#include "z2osp/emit.hpp"

#include <cctype>
#include <stdexcept>
#include <utility>
#include <vector>

#include "json.hpp"

namespace z2osp {

namespace {

using ojson = nlohmann::ordered_json;

std::string rational_latex(const Rational& r) {
    // callers pass magnitudes; negative values keep a leading minus inline
    if (r.is_integer()) return std::to_string(r.num());
    std::string s = r.sign() < 0 ? "-" : "";
    long long n = r.num() < 0 ? -r.num() : r.num();
    return s + "\\tfrac{" + std::to_string(n) + "}{" + std::to_string(r.den()) + "}";
}

// sign split off so sums can print "a - b" instead of "a + -b"; mag "1" means
// the coefficient disappears in front of a nonempty monomial
struct SignedMag {
    int sign = 1;
    std::string mag;
};

SignedMag coeff_latex(const GaussianRational& c) {
    if (c.im.is_zero()) {
        Rational a = c.re.sign() < 0 ? -c.re : c.re;
        return {c.re.sign() < 0 ? -1 : 1, rational_latex(a)};
    }
    if (c.re.is_zero()) {
        Rational a = c.im.sign() < 0 ? -c.im : c.im;
        std::string m = a.is_one() ? "i" : rational_latex(a) + "i";
        return {c.im.sign() < 0 ? -1 : 1, m};
    }
    std::string re = rational_latex(c.re);
    Rational ia = c.im.sign() < 0 ? -c.im : c.im;
    std::string im = ia.is_one() ? "i" : rational_latex(ia) + "i";
    return {1, "\\left(" + re + (c.im.sign() < 0 ? "-" : "+") + im + "\\right)"};
}

std::string latex_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '_') out += "\\_";
        else out += ch;
    }
    return out;
}

std::string field_latex(const std::string& name) {
    if (name == "kplus") return "k_{+}";
    if (name == "kminus") return "k_{-}";
    static const std::vector<std::pair<std::string, std::string>> greek = {
        {"sigma", "\\sigma"}, {"rho", "\\rho"},   {"phi", "\\varphi"},
        {"eta", "\\eta"},     {"xi", "\\xi"},     {"theta", "\\theta"},
        {"psi", "\\psi"},     {"chi", "\\chi"},   {"omega", "\\omega"},
        {"epsilon", "\\epsilon"},
    };
    size_t cut = name.size();
    while (cut > 0 && std::isdigit((unsigned char)name[cut - 1])) --cut;
    std::string base = name.substr(0, cut), idx = name.substr(cut);
    std::string head;
    if (base.size() == 1) {
        head = base;
    } else {
        head = "\\mathrm{" + latex_escape(base) + "}";
        for (const auto& [word, tex] : greek)
            if (base == word) { head = tex; break; }
    }
    if (idx.empty()) return head;
    return head + "_{" + idx + "}";
}

std::string primes(int n) {
    if (n <= 3) return std::string(n, '\'');
    return "^{(" + std::to_string(n) + ")}";
}

std::string gen_latex(const GenId& g, int mult) {
    std::string s;
    bool atomic = false; // safe to append ^{m} without parentheses
    const std::string f = field_latex(FieldRegistry::instance().name(g.field));
    switch (g.kind) {
        case GenKind::Jet:
            s = f + primes(g.dx);
            if (g.dt > 0)
                s = (g.dt == 1 ? "\\partial_t " : "\\partial_t^{" + std::to_string(g.dt) + "} ") + s;
            atomic = g.dx == 0 && g.dt == 0;
            break;
        case GenKind::Chiral:
            s = f + primes(g.dt);
            atomic = g.dt == 0;
            break;
        case GenKind::Exp: {
            Rational a = g.param.sign() < 0 ? -g.param : g.param;
            std::string k = a.is_one() ? "" : rational_latex(a);
            s = "\\mathrm{e}^{" + std::string(g.param.sign() < 0 ? "-" : "") + k + f + "}";
            break;
        }
        case GenKind::Cosh:
        case GenKind::Sinh: {
            Rational a = g.param.sign() < 0 ? -g.param : g.param;
            std::string k = a.is_one() ? "" : rational_latex(a);
            s = std::string(g.kind == GenKind::Cosh ? "\\cosh" : "\\sinh") + "\\left(" +
                (g.param.sign() < 0 ? "-" : "") + k + f + "\\right)";
            break;
        }
        case GenKind::Anti:
            s = f;
            atomic = true;
            break;
    }
    if (mult > 1) {
        if (atomic) return s + "^{" + std::to_string(mult) + "}";
        return "\\left(" + s + "\\right)^{" + std::to_string(mult) + "}";
    }
    return s;
}

std::string monomial_latex(const Monomial& m) {
    std::string out;
    for (const auto& [g, mult] : m.factors) {
        if (!out.empty()) out += " ";
        out += gen_latex(g, mult);
    }
    return out;
}

// one term "coeff monomial suffix" with the sign pulled out; a multi-term
// expression is parenthesized so the suffix binds to all of it
std::pair<int, std::string> signed_product(const ScalarExpr& e, const std::string& suffix) {
    if (e.term_count() > 1)
        return {1, "\\left(" + to_latex(e) + "\\right)" + (suffix.empty() ? "" : " " + suffix)};
    const auto& [m, c] = *e.terms().begin();
    SignedMag sm = coeff_latex(c);
    std::string mon = monomial_latex(m);
    std::string core;
    if (mon.empty()) core = sm.mag;
    else core = sm.mag == "1" ? mon : sm.mag + " " + mon;
    if (!suffix.empty()) core = core == "1" ? suffix : core + " " + suffix;
    return {sm.sign, core};
}

std::string join_signed(const std::vector<std::pair<int, std::string>>& parts) {
    std::string out;
    for (const auto& [sign, body] : parts) {
        if (out.empty()) out = (sign < 0 ? "-" : "") + body;
        else out += (sign < 0 ? " - " : " + ") + body;
    }
    return out.empty() ? "0" : out;
}

std::string family_latex(Family f) {
    std::string sym = family_symbol(f); // letter followed by 0/+/-
    return std::string(1, sym[0]) + "^{" + sym.substr(1) + "}";
}

std::string loop_gen_latex(const LoopGen& g) {
    return family_latex(g.f) + "_{" + std::to_string(g.mode) + "}";
}

const char* kind_str(GenKind k) {
    switch (k) {
        case GenKind::Jet: return "jet";
        case GenKind::Chiral: return "chiral";
        case GenKind::Exp: return "exp";
        case GenKind::Cosh: return "cosh";
        case GenKind::Sinh: return "sinh";
        case GenKind::Anti: return "antiderivative";
    }
    return "?";
}

GenKind kind_parse(const std::string& s) {
    if (s == "jet") return GenKind::Jet;
    if (s == "chiral") return GenKind::Chiral;
    if (s == "exp") return GenKind::Exp;
    if (s == "cosh") return GenKind::Cosh;
    if (s == "sinh") return GenKind::Sinh;
    if (s == "antiderivative") return GenKind::Anti;
    throw std::invalid_argument("expr_from_json: unknown generator kind \"" + s + "\"");
}

ojson coeff_value(const GaussianRational& c) {
    ojson o;
    o["re"] = c.re.str();
    o["im"] = c.im.str();
    return o;
}

ojson expr_value(const ScalarExpr& e) {
    auto& reg = FieldRegistry::instance();
    ojson terms = ojson::array();
    for (const auto& [m, c] : e.terms()) {
        ojson mono = ojson::array();
        for (const auto& [g, mult] : m.factors) {
            ojson d;
            d["kind"] = kind_str(g.kind);
            d["field"] = reg.name(g.field);
            d["dx"] = g.dx;
            d["dt"] = g.dt;
            if (g.kind == GenKind::Exp || g.kind == GenKind::Cosh || g.kind == GenKind::Sinh)
                d["param"] = g.param.str();
            d["grade"] = grade_text(generator_grade(g));
            mono.push_back(ojson::array({d, mult}));
        }
        ojson t;
        t["coeff"] = coeff_value(c);
        t["monomial"] = mono;
        terms.push_back(t);
    }
    ojson root;
    root["terms"] = terms;
    return root;
}

ScalarExpr expr_of_value(const ojson& v) {
    auto& reg = FieldRegistry::instance();
    ScalarExpr acc;
    for (const ojson& t : v.at("terms")) {
        Rational re = Rational::parse(t.at("coeff").at("re").get<std::string>());
        Rational im = Rational::parse(t.at("coeff").at("im").get<std::string>());
        ScalarExpr term{GaussianRational(re, im)};
        for (const ojson& fac : t.at("monomial")) {
            if (!fac.is_array() || fac.size() != 2)
                throw std::invalid_argument("expr_from_json: monomial factor is not a [descriptor, multiplicity] pair");
            const ojson& d = fac[0];
            int mult = fac[1].get<int>();
            if (mult < 1) throw std::invalid_argument("expr_from_json: multiplicity must be positive");
            GenId g;
            g.kind = kind_parse(d.at("kind").get<std::string>());
            g.dx = (uint16_t)d.at("dx").get<int>();
            g.dt = (uint16_t)d.at("dt").get<int>();
            if (d.contains("param")) g.param = Rational::parse(d.at("param").get<std::string>());
            std::string name = d.at("field").get<std::string>();
            Grade gr = grade_parse(d.at("grade").get<std::string>());
            if (auto id = reg.find(name)) {
                if (reg.grade(*id) != gr)
                    throw std::invalid_argument("expr_from_json: field \"" + name +
                                                "\" already registered with a different grade");
                g.field = *id;
            } else if (g.kind == GenKind::Anti) {
                // the schema carries no defining derivative, so an antiderivative
                // symbol can only be resolved against a live registration
                throw std::invalid_argument("expr_from_json: unknown antiderivative symbol \"" + name + "\"");
            } else {
                g.field = reg.register_field(name, gr);
            }
            ScalarExpr ge = ScalarExpr::generator(g);
            for (int k = 0; k < mult; ++k) term *= ge;
        }
        acc += term;
    }
    return acc;
}

} // namespace

std::string to_latex(const ScalarExpr& e) {
    if (e.is_zero()) return "0";
    std::vector<std::pair<int, std::string>> parts;
    for (const auto& [m, c] : e.terms()) {
        SignedMag sm = coeff_latex(c);
        std::string mon = monomial_latex(m);
        std::string body;
        if (mon.empty()) body = sm.mag;
        else body = sm.mag == "1" ? mon : sm.mag + " " + mon;
        parts.emplace_back(sm.sign, body);
    }
    return join_signed(parts);
}

std::string to_latex(const AlgebraElement& a) {
    if (a.is_zero()) return "0";
    std::vector<std::pair<int, std::string>> parts;
    for (const auto& [g, c] : a.parts()) {
        if (c.is_zero()) continue;
        parts.push_back(signed_product(c, loop_gen_latex(g)));
    }
    return join_signed(parts);
}

std::string to_latex(const LaurentMatrix& m) {
    std::string out = "\\begin{pmatrix}\n";
    for (int r = 0; r < LaurentMatrix::dim; ++r) {
        out += "  ";
        for (int c = 0; c < LaurentMatrix::dim; ++c) {
            if (c) out += " & ";
            std::vector<std::pair<int, std::string>> parts;
            int live = 0;
            for (const auto& [p, ex] : m.entry(r, c))
                if (!ex.is_zero()) ++live;
            for (const auto& [p, ex] : m.entry(r, c)) {
                if (ex.is_zero()) continue;
                std::string lam =
                    p == 0 ? "" : p == 1 ? "\\lambda" : "\\lambda^{" + std::to_string(p) + "}";
                if (p == 0 && live == 1) {
                    parts.emplace_back(1, to_latex(ex));
                } else {
                    parts.push_back(signed_product(ex, lam));
                }
            }
            out += join_signed(parts);
        }
        out += r + 1 < LaurentMatrix::dim ? " \\\\\n" : "\n";
    }
    return out + "\\end{pmatrix}";
}

std::string to_json(const ScalarExpr& e) { return expr_value(e).dump(2); }

ScalarExpr expr_from_json(const std::string& text) {
    try {
        return expr_of_value(ojson::parse(text));
    } catch (const nlohmann::json::exception& ex) {
        throw std::invalid_argument(std::string("expr_from_json: ") + ex.what());
    }
}

std::string to_json(const AlgebraElement& a) {
    ojson terms = ojson::array();
    for (const auto& [g, c] : a.parts()) {
        if (c.is_zero()) continue;
        ojson t;
        t["family"] = family_symbol(g.f);
        t["mode"] = g.mode;
        t["grade"] = grade_text(family_grade(g.f));
        t["coeff"] = expr_value(c);
        terms.push_back(t);
    }
    ojson root;
    root["terms"] = terms;
    return root.dump(2);
}

std::string to_json(const LaurentMatrix& m) {
    ojson rows = ojson::array();
    for (int r = 0; r < LaurentMatrix::dim; ++r) {
        ojson row = ojson::array();
        for (int c = 0; c < LaurentMatrix::dim; ++c) {
            ojson cell = ojson::array();
            for (const auto& [p, ex] : m.entry(r, c)) {
                if (ex.is_zero()) continue;
                ojson slot;
                slot["power"] = p;
                slot["coeff"] = expr_value(ex);
                cell.push_back(slot);
            }
            row.push_back(cell);
        }
        rows.push_back(row);
    }
    ojson root;
    root["dim"] = LaurentMatrix::dim;
    root["rows"] = rows;
    return root.dump(2);
}

std::string coefficient_table_json(const std::map<std::string, ScalarExpr>& table) {
    ojson coeffs;
    for (const auto& [name, e] : table) coeffs[name] = expr_value(e);
    ojson root;
    root["coefficients"] = coeffs;
    return root.dump(2);
}

std::string coefficient_table_latex(const std::map<std::string, ScalarExpr>& table) {
    std::string out = "\\begin{aligned}\n";
    size_t k = 0;
    for (const auto& [name, e] : table) {
        out += "  " + field_latex(name) + " &= " + to_latex(e);
        out += ++k < table.size() ? " \\\\\n" : "\n";
    }
    return out + "\\end{aligned}";
}

namespace {

constexpr Family kFamilies[] = {Family::K0, Family::Kp, Family::Km, Family::L0, Family::Lp,
                                Family::Lm, Family::Pp, Family::Pm, Family::Qp, Family::Qm};

} // namespace

std::string structure_constants_json() {
    ojson fams = ojson::array();
    for (Family f : kFamilies) {
        ojson o;
        o["symbol"] = family_symbol(f);
        o["grade"] = grade_text(family_grade(f));
        fams.push_back(o);
    }
    ojson brackets = ojson::array();
    for (Family a : kFamilies) {
        for (Family b : kFamilies) {
            // probe at distinct nonzero modes so a mode offset would show up
            auto r = bracket_basis(LoopGen{a, 1}, LoopGen{b, 2});
            if (!r || r->c.is_zero()) continue;
            ojson o;
            o["left"] = family_symbol(a);
            o["right"] = family_symbol(b);
            o["coeff"] = coeff_value(r->c);
            o["result"] = family_symbol(r->g.f);
            o["mode_offset"] = r->g.mode - 3;
            brackets.push_back(o);
        }
    }
    ojson root;
    root["families"] = fams;
    root["brackets"] = brackets;
    return root.dump(2);
}

std::string structure_constants_latex() {
    std::vector<std::string> lines;
    for (Family a : kFamilies) {
        for (Family b : kFamilies) {
            auto r = bracket_basis(LoopGen{a, 1}, LoopGen{b, 2});
            if (!r || r->c.is_zero()) continue;
            SignedMag sm = coeff_latex(r->c);
            std::string rhs = sm.sign < 0 ? "-" : "";
            if (sm.mag != "1") rhs += sm.mag + "\\,";
            int off = r->g.mode - 3;
            std::string mode = "m+n";
            if (off != 0) mode += (off > 0 ? "+" : "") + std::to_string(off);
            rhs += family_latex(r->g.f) + "_{" + mode + "}";
            lines.push_back("  \\llbracket " + family_latex(a) + "_{m}, " + family_latex(b) +
                            "_{n} \\rrbracket &=& " + rhs);
        }
    }
    std::string out = "\\begin{array}{rcl}\n";
    for (size_t k = 0; k < lines.size(); ++k)
        out += lines[k] + (k + 1 < lines.size() ? " \\\\\n" : "\n");
    return out + "\\end{array}";
}

} // namespace z2osp
