#include "z2osp/calculus.hpp"

#include <algorithm>
#include <iterator>
#include <set>
#include <stdexcept>
#include <vector>

#include "z2osp/generator.hpp"

namespace z2osp {

namespace {

// Rebuild a monomial as a ring product, optionally dropping copies of one
// factor position and appending a replacement generator. The ring product
// restores canonical order; any reordering sign is absorbed later by the
// coefficient match, and impossible candidates collapse to zero on their own.
ScalarExpr rebuild(const Monomial& m, size_t pos, int drop, const GenId* repl) {
    ScalarExpr out(1);
    for (size_t k = 0; k < m.factors.size(); ++k) {
        int mult = m.factors[k].second;
        if (k == pos) mult -= drop;
        for (int j = 0; j < mult; ++j) out = out * ScalarExpr::generator(m.factors[k].first);
        if (k == pos && repl) out = out * ScalarExpr::generator(*repl);
    }
    return out;
}

// Guesses for a q whose x-derivative has leading monomial m. Each guess is
// validated by exact differentiation before use, so this list only has to be
// generous, not sound. Absorbing a first derivative into a transcendental
// factor is tried before plain jet lowering: lowering a first derivative of a
// field that also appears transcendentally manufactures a bare jet of that
// field, which steers the eliminator into dead ends.
std::vector<ScalarExpr> integration_candidates(const Monomial& m) {
    std::vector<ScalarExpr> out;
    std::vector<ScalarExpr> lowering;

    auto has_transcendental_of = [&](uint32_t field) {
        for (const auto& [g, mult] : m.factors)
            if (g.field == field && (g.kind == GenKind::Exp || g.kind == GenKind::Cosh ||
                                     g.kind == GenKind::Sinh))
                return true;
        return false;
    };

    for (size_t k = 0; k < m.factors.size(); ++k) {
        const GenId& g = m.factors[k].first;

        if (g.kind == GenKind::Jet && g.dx >= 1) {
            if (g.dx == 1 && g.dt == 0 && has_transcendental_of(g.field)) continue;
            GenId low = g;
            low.dx -= 1;
            lowering.push_back(rebuild(m, k, 1, &low));
            continue;
        }

        if (g.kind == GenKind::Exp || g.kind == GenKind::Cosh || g.kind == GenKind::Sinh) {
            // absorb a first x-derivative of the argument into the factor
            size_t jpos = m.factors.size();
            for (size_t j = 0; j < m.factors.size(); ++j) {
                const GenId& h = m.factors[j].first;
                if (h.kind == GenKind::Jet && h.field == g.field && h.dx == 1 && h.dt == 0) {
                    jpos = j;
                    break;
                }
            }
            if (jpos == m.factors.size()) continue;
            GenId sw = g;
            if (g.kind == GenKind::Cosh) sw.kind = GenKind::Sinh;
            else if (g.kind == GenKind::Sinh) sw.kind = GenKind::Cosh;
            ScalarExpr prod(1);
            bool stripped = false;
            for (size_t j = 0; j < m.factors.size(); ++j) {
                GenId gg = m.factors[j].first;
                int mult = m.factors[j].second;
                if (j == k) gg = sw;
                if (j == jpos && !stripped) {
                    mult -= 1;
                    stripped = true;
                }
                for (int c = 0; c < mult; ++c) prod = prod * ScalarExpr::generator(gg);
            }
            out.push_back(std::move(prod));
        }
    }

    // raise the power of an antiderivative generator whose defining
    // expression's leading monomial divides m
    const auto& reg = FieldRegistry::instance();
    for (uint32_t id : reg.antiderivative_ids()) {
        const ScalarExpr& def = reg.antiderivative_def(id);
        if (def.is_zero()) continue;
        const Monomial& dl = std::prev(def.terms().end())->first;
        bool divides = true;
        for (const auto& [dg, dm] : dl.factors)
            if (m.multiplicity(dg) < dm) {
                divides = false;
                break;
            }
        if (!divides) continue;
        ScalarExpr prod = anti_sym(id);
        for (const auto& [gg, mult] : m.factors) {
            int rem = mult - dl.multiplicity(gg);
            for (int c = 0; c < rem; ++c) prod = prod * ScalarExpr::generator(gg);
        }
        out.push_back(std::move(prod));
    }

    out.insert(out.end(), std::make_move_iterator(lowering.begin()),
               std::make_move_iterator(lowering.end()));
    return out;
}

ScalarExpr euler_slice(const ScalarExpr& e, uint32_t field, uint16_t dt) {
    int maxn = 0;
    for (const auto& [m, c] : e.terms())
        for (const auto& [g, mult] : m.factors)
            if (g.kind == GenKind::Jet && g.field == field && g.dt == dt)
                maxn = std::max(maxn, (int)g.dx);
    ScalarExpr total;
    for (int n = 0; n <= maxn; ++n) {
        ScalarExpr p = e.partial(GenId{GenKind::Jet, field, (uint16_t)n, dt, Rational(0)});
        if (p.is_zero()) continue;
        p = p.derive(Dir::X, n);
        total = (n % 2 == 0) ? total + p : total - p;
    }
    return total;
}

std::optional<ScalarExpr> integrate_x_depth(const ScalarExpr& e, int depth) {
    auto [q, r] = split_exact_x(e);
    if (r.is_zero()) return q;
    if (depth >= 4) return std::nullopt;

    // peel off a multiple of an antiderivative's defining expression
    const auto& reg = FieldRegistry::instance();
    for (uint32_t id : reg.antiderivative_ids()) {
        const ScalarExpr& def = reg.antiderivative_def(id);
        if (def.is_zero()) continue;
        auto lead = std::prev(def.terms().end());
        GaussianRational c0 = r.coeff(lead->first);
        if (c0.is_zero()) continue;
        GaussianRational alpha = c0 / lead->second;
        auto sub = integrate_x_depth(r - alpha * def, depth + 1);
        if (sub) return q + alpha * anti_sym(id) + *sub;
    }
    return std::nullopt;
}

}  // namespace

std::pair<ScalarExpr, ScalarExpr> split_exact_x(const ScalarExpr& e) {
    // Rank monomials by antiderivative-symbol count before monomial order.
    // Differentiating a primitive can only trade such a symbol for its
    // defining expression, never create one, so working the heaviest layer
    // first keeps every replacement strictly below the term it removes. On
    // symbol-free input the ranking collapses to plain monomial order.
    auto weight = [](const Monomial& m) {
        int a = 0;
        for (const auto& [g, mult] : m.factors)
            if (g.kind == GenKind::Anti) a += mult;
        return a;
    };
    std::map<std::pair<int, Monomial>, GaussianRational> work;
    for (const auto& [m, c] : e.terms()) work.emplace(std::make_pair(weight(m), m), c);
    ScalarExpr acc;
    ScalarExpr residue;
    long steps = 0;
    while (!work.empty()) {
        if (++steps > 200000) throw std::logic_error("split_exact_x: step limit exceeded");
        auto it = std::prev(work.end());
        std::pair<int, Monomial> key = it->first;
        Monomial m = key.second;
        GaussianRational c = it->second;
        work.erase(it);
        if (m.factors.empty()) {
            residue.add_term(m, c);
            continue;
        }
        bool matched = false;
        for (ScalarExpr& cand : integration_candidates(m)) {
            if (cand.is_zero()) continue;
            ScalarExpr d = cand.derive(Dir::X);
            if (d.is_zero()) continue;
            auto td = d.terms().begin();
            std::pair<int, Monomial> top{weight(td->first), td->first};
            for (++td; td != d.terms().end(); ++td) {
                std::pair<int, Monomial> k{weight(td->first), td->first};
                if (top < k) top = k;
            }
            if (!(top == key)) continue;
            GaussianRational alpha = c / d.coeff(m);
            for (const auto& [mm, cc] : d.terms()) {
                if (mm == m) continue;
                auto wk = std::make_pair(weight(mm), mm);
                GaussianRational& slot = work[wk];
                slot = slot - alpha * cc;
                if (slot.is_zero()) work.erase(wk);
            }
            acc = acc + alpha * cand;
            matched = true;
            break;
        }
        if (!matched) residue.add_term(m, c);
    }
    return {acc, residue};
}

std::optional<ScalarExpr> integrate_x(const ScalarExpr& e) { return integrate_x_depth(e, 0); }

ScalarExpr reduce_mod_dx(const ScalarExpr& e) { return split_exact_x(e).second; }

ScalarExpr euler_x(const ScalarExpr& e, uint32_t field) {
    if (e.has_antiderivative())
        throw std::invalid_argument("euler_x: expression carries antiderivative generators");
    return euler_slice(e, field, 0);
}

bool is_total_x_derivative(const ScalarExpr& e) {
    auto [q, r] = split_exact_x(e);
    (void)q;
    if (r.is_zero()) return true;
    if (r.has_antiderivative()) return false;

    std::set<std::pair<uint32_t, uint16_t>> slices;
    for (const auto& [m, c] : r.terms()) {
        bool inert = true;
        for (const auto& [g, mult] : m.factors) {
            if (g.kind == GenKind::Chiral) continue;
            inert = false;
            if (g.kind == GenKind::Jet) slices.insert({g.field, g.dt});
            else slices.insert({g.field, (uint16_t)0});
        }
        if (inert) return false;  // constant or purely chiral monomial
    }
    for (const auto& [f, dt] : slices)
        if (!euler_slice(r, f, dt).is_zero()) return false;
    return true;
}

bool equal_mod_dx(const ScalarExpr& a, const ScalarExpr& b) { return is_total_x_derivative(a - b); }

std::optional<GaussianRational> proportional_mod_dx(const ScalarExpr& a, const ScalarExpr& b) {
    ScalarExpr ra = reduce_mod_dx(a);
    ScalarExpr rb = reduce_mod_dx(b);
    if (rb.is_zero()) {
        if (is_total_x_derivative(ra)) return GaussianRational(Rational(1));
        return std::nullopt;
    }
    std::vector<GaussianRational> tried;
    for (auto it = rb.terms().rbegin(); it != rb.terms().rend(); ++it) {
        GaussianRational c = ra.coeff(it->first) / it->second;
        if (std::find(tried.begin(), tried.end(), c) != tried.end()) continue;
        tried.push_back(c);
        if (is_total_x_derivative(a - c * b)) return c;
    }
    return std::nullopt;
}

}  // namespace z2osp
