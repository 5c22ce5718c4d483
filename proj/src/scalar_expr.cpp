#include "z2osp/scalar_expr.hpp"

#include <sstream>
#include <stdexcept>

namespace z2osp {

Grade Monomial::grade() const {
    Grade g = g00;
    for (const auto& [gen, mult] : factors)
        if (mult & 1) g = grade_add(g, generator_grade(gen));
    return g;
}

int Monomial::degree() const {
    int d = 0;
    for (const auto& [gen, mult] : factors) d += mult;
    return d;
}

bool Monomial::contains(const GenId& g) const { return multiplicity(g) > 0; }

int Monomial::multiplicity(const GenId& g) const {
    for (const auto& [gen, mult] : factors)
        if (gen == g) return mult;
    return 0;
}

bool operator<(const Monomial& a, const Monomial& b) {
    size_t n = std::min(a.factors.size(), b.factors.size());
    for (size_t k = 0; k < n; ++k) {
        if (int c = generator_compare(a.factors[k].first, b.factors[k].first)) return c < 0;
        if (a.factors[k].second != b.factors[k].second)
            return a.factors[k].second < b.factors[k].second;
    }
    return a.factors.size() < b.factors.size();
}

// ---- monomial product ----------------------------------------------------

namespace {

struct Term {
    GaussianRational c;
    Monomial m;
};

// One closure pass: enforce at most one exp and at most one hyperbolic factor
// per field, canonical parameters. Any rewrite pushes back onto the worklist
// for a fresh scan; only clean monomials land in `done`. Hyperbolic pairs
// split a monomial in two (addition formulas). Note same-field transcendental
// factors all carry even-parity grades, so in-place replacement never needs a
// reordering sign.
void push_normalized(Term t, std::vector<Term>& done, std::vector<Term>& work) {
    auto& f = t.m.factors;
    for (size_t k = 0; k < f.size(); ++k) {
        GenKind kind = f[k].first.kind;

        if (kind == GenKind::Exp) {
            if (f[k].second > 1) {
                f[k].first.param *= Rational(f[k].second);
                f[k].second = 1;
                work.push_back(std::move(t));
                return;
            }
            if (k + 1 < f.size() && f[k + 1].first.kind == GenKind::Exp &&
                f[k + 1].first.field == f[k].first.field) {
                f[k].first.param += f[k + 1].first.param * Rational(f[k + 1].second);
                f.erase(f.begin() + k + 1);
                work.push_back(std::move(t));
                return;
            }
            if (f[k].first.param.is_zero()) {
                f.erase(f.begin() + k);
                work.push_back(std::move(t));
                return;
            }
            continue;
        }

        if (kind != GenKind::Cosh && kind != GenKind::Sinh) continue;

        GenId g1 = f[k].first;
        GenId g2{};
        bool pair = false;
        if (f[k].second >= 2) {
            g2 = g1;
            f[k].second -= 2;
            if (f[k].second == 0) f.erase(f.begin() + k);
            pair = true;
        } else if (k + 1 < f.size() && f[k + 1].first.field == g1.field &&
                   (f[k + 1].first.kind == GenKind::Cosh ||
                    f[k + 1].first.kind == GenKind::Sinh)) {
            g2 = f[k + 1].first;
            if (--f[k + 1].second == 0) f.erase(f.begin() + k + 1);
            if (--f[k].second == 0) f.erase(f.begin() + k);
            pair = true;
        }

        if (pair) {
            // canonical order puts cosh before sinh, so a mixed pair has
            // g1 = cosh(a), g2 = sinh(b): cosh a sinh b = (sinh(a+b) - sinh(a-b))/2
            Rational sum = g1.param + g2.param, dif = g1.param - g2.param;
            bool both_sinh = g1.kind == GenKind::Sinh && g2.kind == GenKind::Sinh;
            bool mixed = (g1.kind == GenKind::Sinh) != (g2.kind == GenKind::Sinh);
            GenKind rk = mixed ? GenKind::Sinh : GenKind::Cosh;
            GaussianRational half(Rational(1, 2));
            for (int part = 0; part < 2; ++part) {
                Rational p = part == 0 ? sum : dif;
                GaussianRational c = t.c * half;
                if (part == 1 && (both_sinh || mixed)) c = -c;
                if (p.is_zero() && rk == GenKind::Sinh) continue; // sinh(0) = 0
                if (p.is_zero()) {
                    work.push_back({c, t.m}); // cosh(0) = 1
                    continue;
                }
                Monomial m2 = t.m;
                GenId ng{rk, g1.field, 0, 0, p};
                size_t pos = 0;
                while (pos < m2.factors.size() && generator_less(m2.factors[pos].first, ng)) ++pos;
                if (pos < m2.factors.size() && m2.factors[pos].first == ng)
                    ++m2.factors[pos].second;
                else
                    m2.factors.insert(m2.factors.begin() + pos, {ng, 1});
                work.push_back({c, std::move(m2)});
            }
            return;
        }

        if (f[k].first.param < Rational(0)) {
            f[k].first.param = -f[k].first.param;
            if (kind == GenKind::Sinh) t.c = -t.c;
            work.push_back(std::move(t));
            return;
        }
        if (f[k].first.param.is_zero()) {
            if (kind == GenKind::Sinh) return; // sinh(0) kills the term
            f.erase(f.begin() + k);
            work.push_back(std::move(t));
            return;
        }
    }
    done.push_back(std::move(t));
}

// graded merge of two sorted factor lists; false -> product is zero
bool merge_monomials(const Monomial& a, const Monomial& b, Monomial& out, int& sign) {
    // parity of the grade components of the not-yet-consumed part of a
    int s1 = 0, s2 = 0;
    for (const auto& [g, m] : a.factors) {
        Grade gr = generator_grade(g);
        s1 ^= (gr.g1() * m) & 1;
        s2 ^= (gr.g2() * m) & 1;
    }
    sign = 1;
    out.factors.clear();
    out.factors.reserve(a.factors.size() + b.factors.size());
    size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        int cmp;
        if (i == a.factors.size()) cmp = 1;
        else if (j == b.factors.size()) cmp = -1;
        else cmp = generator_compare(a.factors[i].first, b.factors[j].first);

        if (cmp < 0) {
            Grade g = generator_grade(a.factors[i].first);
            s1 ^= (g.g1() * a.factors[i].second) & 1;
            s2 ^= (g.g2() * a.factors[i].second) & 1;
            out.factors.push_back(a.factors[i++]);
        } else if (cmp > 0) {
            Grade g = generator_grade(b.factors[j].first);
            if ((b.factors[j].second * (g.g1() * s1 + g.g2() * s2)) & 1) sign = -sign;
            out.factors.push_back(b.factors[j++]);
        } else {
            Grade g = generator_grade(a.factors[i].first);
            if (grade_odd(g)) return false; // repeated odd generator
            s1 ^= (g.g1() * a.factors[i].second) & 1;
            s2 ^= (g.g2() * a.factors[i].second) & 1;
            if ((b.factors[j].second * (g.g1() * s1 + g.g2() * s2)) & 1) sign = -sign;
            out.factors.push_back({a.factors[i].first, a.factors[i].second + b.factors[j].second});
            ++i;
            ++j;
        }
    }
    return true;
}

} // namespace

// ---- ScalarExpr ----------------------------------------------------------

void ScalarExpr::add_term(const Monomial& m, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

ScalarExpr ScalarExpr::generator(const GenId& g) {
    if ((g.kind == GenKind::Exp || g.kind == GenKind::Cosh || g.kind == GenKind::Sinh) &&
        grade_odd(FieldRegistry::instance().grade(g.field)))
        throw std::invalid_argument("transcendental generator of an odd-parity field");
    if (g.kind == GenKind::Chiral && g.dx != 0)
        throw std::invalid_argument("chiral symbols carry no x-derivatives");
    ScalarExpr e;
    std::vector<Term> done, work;
    work.push_back({GaussianRational(1), Monomial{{{g, 1}}}});
    while (!work.empty()) {
        Term t = std::move(work.back());
        work.pop_back();
        push_normalized(std::move(t), done, work);
    }
    for (auto& t : done) e.add_term(t.m, t.c);
    return e;
}

GaussianRational ScalarExpr::constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? GaussianRational() : it->second;
}

GaussianRational ScalarExpr::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? GaussianRational() : it->second;
}

std::optional<Grade> ScalarExpr::homogeneous_grade() const {
    std::optional<Grade> g;
    for (const auto& [m, c] : terms_) {
        Grade mg = m.grade();
        if (!g) g = mg;
        else if (*g != mg) return std::nullopt;
    }
    return g ? g : std::optional<Grade>(g00);
}

ScalarExpr ScalarExpr::operator-() const {
    ScalarExpr r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b) {
    ScalarExpr r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
}

ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b) {
    ScalarExpr r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
}

ScalarExpr operator*(const GaussianRational& c, const ScalarExpr& a) {
    ScalarExpr r;
    if (c.is_zero()) return r;
    for (const auto& [m, k] : a.terms_) r.terms_.emplace(m, c * k);
    return r;
}

ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
    ScalarExpr r;
    std::vector<Term> done, work;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m;
            int sign;
            if (!merge_monomials(ma, mb, m, sign)) continue;
            GaussianRational c = ca * cb;
            if (sign < 0) c = -c;
            done.clear();
            work.clear();
            work.push_back({std::move(c), std::move(m)});
            while (!work.empty()) {
                Term t = std::move(work.back());
                work.pop_back();
                push_normalized(std::move(t), done, work);
            }
            for (auto& t : done) r.add_term(t.m, t.c);
        }
    }
    return r;
}

// single-generator derivative (Leibniz factor)
static ScalarExpr derive_generator(const GenId& g, Dir d) {
    switch (g.kind) {
        case GenKind::Jet: {
            GenId h = g;
            if (d == Dir::X) ++h.dx;
            else ++h.dt;
            return ScalarExpr::generator(h);
        }
        case GenKind::Chiral: {
            if (d == Dir::X) return ScalarExpr(); // function of x_- only
            GenId h = g;
            ++h.dt;
            return ScalarExpr::generator(h);
        }
        case GenKind::Exp: {
            GenId dphi{GenKind::Jet, g.field, uint16_t(d == Dir::X), uint16_t(d == Dir::T), {}};
            return GaussianRational(g.param) *
                   (ScalarExpr::generator(dphi) * ScalarExpr::generator(g));
        }
        case GenKind::Cosh:
        case GenKind::Sinh: {
            GenId dphi{GenKind::Jet, g.field, uint16_t(d == Dir::X), uint16_t(d == Dir::T), {}};
            GenId h = g;
            h.kind = g.kind == GenKind::Cosh ? GenKind::Sinh : GenKind::Cosh;
            return GaussianRational(g.param) *
                   (ScalarExpr::generator(dphi) * ScalarExpr::generator(h));
        }
        case GenKind::Anti: {
            if (d == Dir::X) return FieldRegistry::instance().antiderivative_def(g.field);
            throw std::logic_error("t-derivative of antiderivative symbol " +
                                   FieldRegistry::instance().name(g.field));
        }
    }
    return ScalarExpr();
}

ScalarExpr ScalarExpr::derive(Dir d) const {
    ScalarExpr out;
    for (const auto& [m, c] : terms_) {
        for (size_t k = 0; k < m.factors.size(); ++k) {
            const auto& [g, mult] = m.factors[k];
            ScalarExpr dg = derive_generator(g, d);
            if (dg.is_zero()) continue;
            Monomial left, right;
            left.factors.assign(m.factors.begin(), m.factors.begin() + k);
            if (mult > 1) left.factors.push_back({g, mult - 1});
            right.factors.assign(m.factors.begin() + k + 1, m.factors.end());
            ScalarExpr le, re;
            le.add_term(left, c * GaussianRational(mult));
            re.add_term(right, GaussianRational(1));
            out += le * dg * re;
        }
    }
    return out;
}

ScalarExpr ScalarExpr::derive(Dir d, int times) const {
    ScalarExpr r = *this;
    for (int k = 0; k < times; ++k) r = r.derive(d);
    return r;
}

ScalarExpr ScalarExpr::substitute_field(uint32_t field, const ScalarExpr& value) const {
    if (!value.is_zero()) {
        auto vg = value.homogeneous_grade();
        if (!vg || *vg != FieldRegistry::instance().grade(field))
            throw std::invalid_argument("substitute_field: value grade differs from field grade");
    }
    std::map<std::pair<int, int>, ScalarExpr> derived; // prolongations of value
    auto prolong = [&](int dx, int dt) -> const ScalarExpr& {
        auto it = derived.find({dx, dt});
        if (it != derived.end()) return it->second;
        ScalarExpr v = value.derive(Dir::X, dx).derive(Dir::T, dt);
        return derived.emplace(std::pair<int, int>{dx, dt}, std::move(v)).first->second;
    };

    ScalarExpr out;
    for (const auto& [m, c] : terms_) {
        ScalarExpr acc(c);
        bool dead = false;
        for (const auto& [g, mult] : m.factors) {
            if (dead) break;
            if (g.field != field) {
                Monomial single;
                single.factors.push_back({g, mult});
                ScalarExpr e;
                e.add_term(single, GaussianRational(1));
                acc *= e;
                continue;
            }
            switch (g.kind) {
                case GenKind::Jet: {
                    const ScalarExpr& v = prolong(g.dx, g.dt);
                    for (int p = 0; p < mult && !dead; ++p) {
                        acc *= v;
                        dead = acc.is_zero();
                    }
                    break;
                }
                case GenKind::Chiral:
                case GenKind::Anti: {
                    const ScalarExpr& v =
                        g.kind == GenKind::Chiral ? prolong(0, g.dt) : prolong(0, 0);
                    for (int p = 0; p < mult && !dead; ++p) {
                        acc *= v;
                        dead = acc.is_zero();
                    }
                    break;
                }
                case GenKind::Exp:
                case GenKind::Cosh:
                    if (!value.is_zero())
                        throw std::invalid_argument(
                            "substitute_field: nonzero value under a transcendental generator");
                    break; // exp(0) = cosh(0) = 1
                case GenKind::Sinh:
                    if (!value.is_zero())
                        throw std::invalid_argument(
                            "substitute_field: nonzero value under a transcendental generator");
                    dead = true; // sinh(0) = 0
                    break;
            }
        }
        if (!dead) out += acc;
    }
    return out;
}

ScalarExpr ScalarExpr::partial(const GenId& g) const {
    Grade gg = generator_grade(g);
    bool order0_jet = g.kind == GenKind::Jet && g.dx == 0 && g.dt == 0;
    ScalarExpr out;
    for (const auto& [m, c] : terms_) {
        for (size_t k = 0; k < m.factors.size(); ++k) {
            const auto& [h, mult] = m.factors[k];
            bool direct = h == g;
            bool chain = order0_jet && h.field == g.field &&
                         (h.kind == GenKind::Exp || h.kind == GenKind::Cosh ||
                          h.kind == GenKind::Sinh);
            if (!direct && !chain) continue;

            int sign = 1;
            for (size_t j = 0; j < k; ++j) {
                const auto& [f, fm] = m.factors[j];
                if ((fm & 1) && grade_dot(gg, generator_grade(f))) sign = -sign;
            }

            Monomial left, right;
            left.factors.assign(m.factors.begin(), m.factors.begin() + k);
            right.factors.assign(m.factors.begin() + k + 1, m.factors.end());
            GaussianRational cc = sign < 0 ? -c : c;

            ScalarExpr mid;
            if (direct) {
                if (mult > 1) {
                    Monomial rest;
                    rest.factors.push_back({h, mult - 1});
                    mid.add_term(rest, GaussianRational(mult));
                } else {
                    mid = ScalarExpr(1);
                }
            } else {
                GenId d = h;
                if (h.kind == GenKind::Cosh) d.kind = GenKind::Sinh;
                else if (h.kind == GenKind::Sinh) d.kind = GenKind::Cosh;
                Monomial rest;
                if (mult > 1) rest.factors.push_back({h, mult - 1});
                ScalarExpr re2;
                re2.add_term(rest, GaussianRational(mult));
                mid = GaussianRational(h.param) * (re2 * ScalarExpr::generator(d));
            }

            ScalarExpr le, re;
            le.add_term(left, cc);
            re.add_term(right, GaussianRational(1));
            out += le * mid * re;
        }
    }
    return out;
}

ScalarExpr ScalarExpr::filter(
    const std::function<bool(const Monomial&, const GaussianRational&)>& keep) const {
    ScalarExpr out;
    for (const auto& [m, c] : terms_)
        if (keep(m, c)) out.terms_.emplace(m, c);
    return out;
}

bool ScalarExpr::depends_on_field(uint32_t field) const {
    for (const auto& [m, c] : terms_)
        for (const auto& [g, mult] : m.factors)
            if (g.field == field) return true;
    return false;
}

bool ScalarExpr::has_dt_jets() const {
    for (const auto& [m, c] : terms_)
        for (const auto& [g, mult] : m.factors)
            if (g.kind == GenKind::Jet && g.dt > 0) return true;
    return false;
}

bool ScalarExpr::has_antiderivative() const {
    for (const auto& [m, c] : terms_)
        for (const auto& [g, mult] : m.factors)
            if (g.kind == GenKind::Anti) return true;
    return false;
}

std::string ScalarExpr::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (const auto& [g, mult] : m.factors) {
            os << " " << generator_str(g);
            if (mult > 1) os << "^" << mult;
        }
    }
    return os.str();
}

ScalarExpr jet(uint32_t field, int dx, int dt) {
    return ScalarExpr::generator(GenId{GenKind::Jet, field, uint16_t(dx), uint16_t(dt), {}});
}
ScalarExpr chiral_sym(uint32_t field, int dt) {
    return ScalarExpr::generator(GenId{GenKind::Chiral, field, 0, uint16_t(dt), {}});
}
ScalarExpr exp_of(uint32_t field, const Rational& k) {
    return ScalarExpr::generator(GenId{GenKind::Exp, field, 0, 0, k});
}
ScalarExpr cosh_of(uint32_t field, const Rational& k) {
    return ScalarExpr::generator(GenId{GenKind::Cosh, field, 0, 0, k});
}
ScalarExpr sinh_of(uint32_t field, const Rational& k) {
    return ScalarExpr::generator(GenId{GenKind::Sinh, field, 0, 0, k});
}
ScalarExpr anti_sym(uint32_t field) {
    return ScalarExpr::generator(GenId{GenKind::Anti, field, 0, 0, {}});
}

} // namespace z2osp
