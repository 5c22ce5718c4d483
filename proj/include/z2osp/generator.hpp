#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "z2osp/grade.hpp"
#include "z2osp/rational.hpp"

namespace z2osp {

class ScalarExpr;

// What a single commuting/anticommuting symbol in a monomial is.
//  Jet    : derivative coordinate dx^a dt^b f of a field f
//  Chiral : function of the second light-cone coordinate only; d/dx kills it
//  Exp    : exp(k f), derivatives go by the chain rule
//  Cosh/Sinh : hyperbolics of k f, closed under products via addition formulas
//  Anti   : formal antiderivative symbol; d/dx substitutes its defining expression
enum class GenKind : uint8_t { Jet, Chiral, Exp, Cosh, Sinh, Anti };

struct GenId {
    GenKind kind = GenKind::Jet;
    uint32_t field = 0;      // registry id of the field/symbol
    uint16_t dx = 0, dt = 0; // derivative multi-index (Jet; dt only for Chiral)
    Rational param;          // frequency k (Exp/Cosh/Sinh)

    friend bool operator==(const GenId&, const GenId&) = default;
};

// Append-only table of field symbols. Names decide the canonical order of
// generators, so expressions print (and compare) identically across runs no
// matter the registration order.
class FieldRegistry {
public:
    static FieldRegistry& instance();

    // Registering the same name with the same grade again returns the old id.
    uint32_t register_field(const std::string& name, Grade grade);

    // Antiderivative symbols carry a defining expression: derive(W, x) = def.
    // Registering an existing name with a different definition is an error.
    uint32_t register_antiderivative(const std::string& name, Grade grade,
                                     const ScalarExpr& defining);

    bool has_antiderivative(uint32_t id) const;
    const ScalarExpr& antiderivative_def(uint32_t id) const;
    std::vector<uint32_t> antiderivative_ids() const;

    const std::string& name(uint32_t id) const;
    Grade grade(uint32_t id) const;
    std::optional<uint32_t> find(const std::string& name) const;

    // total order on field ids by name (canonical generator order)
    int compare(uint32_t a, uint32_t b) const;

private:
    FieldRegistry() = default;

    struct Entry {
        std::string name;
        Grade grade;
        std::shared_ptr<const ScalarExpr> anti_def; // null unless antiderivative
    };

    mutable std::mutex mu_;
    std::vector<Entry> entries_;
    std::unordered_map<std::string, uint32_t> by_name_;
};

Grade generator_grade(const GenId& g);

// canonical order: (field name, kind rank, derivative index descending, parameter)
int generator_compare(const GenId& a, const GenId& b);
inline bool generator_less(const GenId& a, const GenId& b) { return generator_compare(a, b) < 0; }

std::string generator_str(const GenId& g);

} // namespace z2osp
