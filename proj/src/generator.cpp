#include "z2osp/generator.hpp"

#include <stdexcept>

#include "z2osp/scalar_expr.hpp"

namespace z2osp {

FieldRegistry& FieldRegistry::instance() {
    static FieldRegistry reg;
    return reg;
}

uint32_t FieldRegistry::register_field(const std::string& name, Grade grade) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = by_name_.find(name);
    if (it != by_name_.end()) {
        if (entries_[it->second].grade != grade)
            throw std::invalid_argument("field \"" + name + "\" already registered with grade " +
                                        grade_text(entries_[it->second].grade));
        return it->second;
    }
    uint32_t id = (uint32_t)entries_.size();
    entries_.push_back({name, grade, nullptr});
    by_name_.emplace(name, id);
    return id;
}

uint32_t FieldRegistry::register_antiderivative(const std::string& name, Grade grade,
                                                const ScalarExpr& defining) {
    // grade computation walks the registry, so it must happen outside the lock
    auto hg = defining.homogeneous_grade();
    if (!defining.is_zero() && (!hg || *hg != grade))
        throw std::invalid_argument("defining expression of \"" + name +
                                    "\" is not homogeneous of grade " + grade_text(grade));
    std::lock_guard<std::mutex> lock(mu_);
    auto it = by_name_.find(name);
    if (it != by_name_.end()) {
        const Entry& e = entries_[it->second];
        if (!e.anti_def || e.grade != grade || !(*e.anti_def == defining))
            throw std::invalid_argument("antiderivative \"" + name +
                                        "\" already registered with a different definition");
        return it->second;
    }
    uint32_t id = (uint32_t)entries_.size();
    entries_.push_back({name, grade, std::make_shared<const ScalarExpr>(defining)});
    by_name_.emplace(name, id);
    return id;
}

bool FieldRegistry::has_antiderivative(uint32_t id) const {
    std::lock_guard<std::mutex> lock(mu_);
    return id < entries_.size() && entries_[id].anti_def != nullptr;
}

const ScalarExpr& FieldRegistry::antiderivative_def(uint32_t id) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (id >= entries_.size() || !entries_[id].anti_def)
        throw std::logic_error("no antiderivative definition for field id " + std::to_string(id));
    return *entries_[id].anti_def;
}

std::vector<uint32_t> FieldRegistry::antiderivative_ids() const {
    std::lock_guard<std::mutex> lock(mu_);
    std::vector<uint32_t> out;
    for (uint32_t id = 0; id < entries_.size(); ++id)
        if (entries_[id].anti_def) out.push_back(id);
    return out;
}

const std::string& FieldRegistry::name(uint32_t id) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (id >= entries_.size()) throw std::logic_error("unknown field id");
    return entries_[id].name;
}

Grade FieldRegistry::grade(uint32_t id) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (id >= entries_.size()) throw std::logic_error("unknown field id");
    return entries_[id].grade;
}

std::optional<uint32_t> FieldRegistry::find(const std::string& name) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

int FieldRegistry::compare(uint32_t a, uint32_t b) const {
    if (a == b) return 0;
    std::lock_guard<std::mutex> lock(mu_);
    return entries_[a].name.compare(entries_[b].name);
}

Grade generator_grade(const GenId& g) {
    switch (g.kind) {
        case GenKind::Jet:
        case GenKind::Chiral:
        case GenKind::Anti:
            return FieldRegistry::instance().grade(g.field);
        case GenKind::Exp:
        case GenKind::Cosh:
            return g00;
        case GenKind::Sinh:
            return FieldRegistry::instance().grade(g.field);
    }
    return g00;
}

static int kind_rank(GenKind k) {
    switch (k) {
        case GenKind::Jet: return 0;
        case GenKind::Chiral: return 1;
        case GenKind::Exp: return 2;
        case GenKind::Cosh: return 3;
        case GenKind::Sinh: return 4;
        case GenKind::Anti: return 5;
    }
    return 6;
}

int generator_compare(const GenId& a, const GenId& b) {
    if (int c = FieldRegistry::instance().compare(a.field, b.field)) return c;
    if (int c = kind_rank(a.kind) - kind_rank(b.kind)) return c;
    // higher derivatives first: sigma'' sigma' sigma
    if (a.dx != b.dx) return a.dx > b.dx ? -1 : 1;
    if (a.dt != b.dt) return a.dt > b.dt ? -1 : 1;
    if (a.param != b.param) return a.param < b.param ? -1 : 1;
    return 0;
}

std::string generator_str(const GenId& g) {
    auto& reg = FieldRegistry::instance();
    std::string base = reg.name(g.field);
    switch (g.kind) {
        case GenKind::Jet:
        case GenKind::Chiral: {
            std::string s;
            if (g.dt > 2) s += "dt^" + std::to_string(g.dt) + " ";
            else s.append(g.dt, '.');
            if (g.dx > 3) return "dx^" + std::to_string(g.dx) + " " + s + base;
            std::string primes(g.dx, '\'');
            return s.empty() ? base + primes : s + base + primes;
        }
        case GenKind::Exp: return "exp(" + g.param.str() + " " + base + ")";
        case GenKind::Cosh: return "cosh(" + g.param.str() + " " + base + ")";
        case GenKind::Sinh: return "sinh(" + g.param.str() + " " + base + ")";
        case GenKind::Anti: return base;
    }
    return base;
}

} // namespace z2osp
