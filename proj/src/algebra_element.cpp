#include "z2osp/algebra_element.hpp"

#include <sstream>
#include <stdexcept>

namespace z2osp {

AlgebraElement AlgebraElement::term(const ScalarExpr& c, const LoopGen& g) {
    AlgebraElement out;
    out.add(c, g);
    return out;
}

ScalarExpr AlgebraElement::coeff(const LoopGen& g) const {
    auto it = parts_.find(g);
    return it == parts_.end() ? ScalarExpr() : it->second;
}

void AlgebraElement::add(const ScalarExpr& c, const LoopGen& g) {
    if (c.is_zero()) return;
    auto it = parts_.find(g);
    if (it == parts_.end()) {
        parts_.emplace(g, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) parts_.erase(it);
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    AlgebraElement out = a;
    for (const auto& [g, c] : b.parts_) out.add(c, g);
    return out;
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
    AlgebraElement out = a;
    for (const auto& [g, c] : b.parts_) out.add(-c, g);
    return out;
}

AlgebraElement AlgebraElement::operator-() const {
    AlgebraElement out;
    for (const auto& [g, c] : parts_) out.parts_.emplace(g, -c);
    return out;
}

AlgebraElement operator*(const ScalarExpr& c, const AlgebraElement& a) {
    AlgebraElement out;
    for (const auto& [g, d] : a.parts_) out.add(c * d, g);
    return out;
}

AlgebraElement AlgebraElement::derive(Dir d) const {
    AlgebraElement out;
    for (const auto& [g, c] : parts_) out.add(c.derive(d), g);
    return out;
}

AlgebraElement AlgebraElement::map_coeffs(
    const std::function<ScalarExpr(const ScalarExpr&)>& fn) const {
    AlgebraElement out;
    for (const auto& [g, c] : parts_) out.add(fn(c), g);
    return out;
}

AlgebraElement AlgebraElement::filter(
    const std::function<bool(const LoopGen&)>& keep) const {
    AlgebraElement out;
    for (const auto& [g, c] : parts_)
        if (keep(g)) out.add(c, g);
    return out;
}

std::string AlgebraElement::str() const {
    if (parts_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, c] : parts_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ") " << loop_gen_str(g);
    }
    return os.str();
}

namespace {

Grade coeff_grade(const ScalarExpr& c, const LoopGen& g) {
    auto hg = c.homogeneous_grade();
    if (!hg)
        throw std::invalid_argument("bracket needs grade-homogeneous coefficient at " +
                                    loop_gen_str(g) + ": " + c.str());
    return *hg;
}

}  // namespace

AlgebraElement algebra_bracket(const AlgebraElement& a, const AlgebraElement& b) {
    AlgebraElement out;
    for (const auto& [ga, ca] : a.parts()) {
        Grade xg = loop_grade(ga);
        for (const auto& [gb, cb] : b.parts()) {
            auto base = bracket_basis(ga, gb);
            if (!base) continue;
            // moving the generator of the left term past the right coefficient
            int s = grade_sign(xg, coeff_grade(cb, gb));
            ScalarExpr c = ca * cb;
            if (s < 0) c = -c;
            out.add(base->c * c, base->g);
        }
    }
    return out;
}

AlgebraElement zero_curvature(const AlgebraElement& lx, const AlgebraElement& lt) {
    return lx.derive(Dir::T) - lt.derive(Dir::X) + algebra_bracket(lx, lt);
}

std::map<Rational, AlgebraElement> principal_decompose(const AlgebraElement& a) {
    std::map<Rational, AlgebraElement> out;
    for (const auto& [g, c] : a.parts()) out[principal_grade(g)].add(c, g);
    return out;
}

}  // namespace z2osp
