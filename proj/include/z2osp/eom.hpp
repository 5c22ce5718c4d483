#pragma once

#include <map>
#include <utility>

#include "z2osp/scalar_expr.hpp"

namespace z2osp {

// On-shell rewrite system. Each rule declares one jet of a field as solved:
//     d^dx/dx^dx d^dt/dt^dt (field) = rhs,
// and every jet of that field with at least those orders is replaced by the
// correspondingly prolonged right-hand side. normalize() applies rules to a
// fixed point; a system whose right-hand sides reintroduce reducible jets of
// the same or higher order will not terminate and trips the iteration guard.
class EomSystem {
public:
    void add_rule(uint32_t field, int dx, int dt, const ScalarExpr& rhs);
    bool has_rule(uint32_t field) const { return rules_.count(field) != 0; }

    ScalarExpr normalize(const ScalarExpr& e) const;

private:
    struct Rule {
        int dx = 0, dt = 0;
        ScalarExpr rhs;
        mutable std::map<std::pair<int, int>, ScalarExpr> prolonged;
    };

    const ScalarExpr& prolong(const Rule& r, int dx, int dt) const;

    std::map<uint32_t, Rule> rules_;
};

}  // namespace z2osp
