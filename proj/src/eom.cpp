#include "z2osp/eom.hpp"

#include <stdexcept>
#include <string>

#include "z2osp/generator.hpp"

namespace z2osp {

void EomSystem::add_rule(uint32_t field, int dx, int dt, const ScalarExpr& rhs) {
    if (dx < 0 || dt < 0 || (dx == 0 && dt == 0))
        throw std::invalid_argument("EomSystem: rule must solve a proper derivative");
    if (rules_.count(field))
        throw std::invalid_argument("EomSystem: duplicate rule for field \"" +
                                    FieldRegistry::instance().name(field) + "\"");
    auto hg = rhs.homogeneous_grade();
    Grade fg = FieldRegistry::instance().grade(field);
    if (!rhs.is_zero() && (!hg || *hg != fg))
        throw std::invalid_argument("EomSystem: right-hand side grade mismatch for \"" +
                                    FieldRegistry::instance().name(field) + "\"");
    // a rule whose right-hand side contains a jet it would itself rewrite
    // can never reach a fixed point
    for (const auto& [m, c] : rhs.terms())
        for (const auto& [g, mult] : m.factors)
            if (g.kind == GenKind::Jet && g.field == field && g.dx >= dx && g.dt >= dt)
                throw std::invalid_argument("EomSystem: self-referential rule for \"" +
                                            FieldRegistry::instance().name(field) + "\"");
    rules_[field] = Rule{dx, dt, rhs, {}};
}

const ScalarExpr& EomSystem::prolong(const Rule& r, int dx, int dt) const {
    auto key = std::make_pair(dx, dt);
    auto it = r.prolonged.find(key);
    if (it != r.prolonged.end()) return it->second;
    ScalarExpr v;
    if (dx == 0 && dt == 0) v = r.rhs;
    else if (dx > 0) v = prolong(r, dx - 1, dt).derive(Dir::X);
    else v = prolong(r, dx, dt - 1).derive(Dir::T);
    return r.prolonged.emplace(key, std::move(v)).first->second;
}

ScalarExpr EomSystem::normalize(const ScalarExpr& e) const {
    ScalarExpr cur = e;
    for (int iter = 0; iter < 64; ++iter) {
        bool changed = false;
        ScalarExpr next;
        for (const auto& [m, c] : cur.terms()) {
            size_t pos = m.factors.size();
            const Rule* rule = nullptr;
            for (size_t k = 0; k < m.factors.size(); ++k) {
                const GenId& g = m.factors[k].first;
                if (g.kind != GenKind::Jet) continue;
                auto it = rules_.find(g.field);
                if (it == rules_.end()) continue;
                if (g.dx >= it->second.dx && g.dt >= it->second.dt) {
                    pos = k;
                    rule = &it->second;
                    break;
                }
            }
            if (!rule) {
                next.add_term(m, c);
                continue;
            }
            changed = true;
            const GenId& g = m.factors[pos].first;
            const ScalarExpr& repl = prolong(*rule, g.dx - rule->dx, g.dt - rule->dt);
            // replace a single copy of the matched jet, keeping its position
            ScalarExpr prod(c);
            for (size_t k = 0; k < m.factors.size(); ++k) {
                int mult = m.factors[k].second;
                if (k == pos) {
                    prod = prod * repl;
                    mult -= 1;
                }
                for (int j = 0; j < mult; ++j)
                    prod = prod * ScalarExpr::generator(m.factors[k].first);
            }
            next += prod;
        }
        if (!changed) return cur;
        cur = next;
    }
    throw std::logic_error("EomSystem::normalize: no fixed point within iteration limit");
}

}  // namespace z2osp
