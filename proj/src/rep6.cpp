#include "z2osp/rep6.hpp"

#include <sstream>
#include <stdexcept>

namespace z2osp {

ScalarExpr LaurentMatrix::coeff(int r, int c, int power) const {
    const Entry& en = e_[r][c];
    auto it = en.find(power);
    return it == en.end() ? ScalarExpr() : it->second;
}

void LaurentMatrix::add(int r, int c, int power, const ScalarExpr& v) {
    if (v.is_zero()) return;
    Entry& en = e_[r][c];
    auto it = en.find(power);
    if (it == en.end()) {
        en.emplace(power, v);
        return;
    }
    it->second = it->second + v;
    if (it->second.is_zero()) en.erase(it);
}

bool LaurentMatrix::is_zero() const {
    for (const auto& row : e_)
        for (const auto& en : row)
            if (!en.empty()) return false;
    return true;
}

std::pair<int, int> LaurentMatrix::power_range() const {
    bool seen = false;
    int lo = 0, hi = 0;
    for (const auto& row : e_)
        for (const auto& en : row) {
            if (en.empty()) continue;
            int a = en.begin()->first, b = en.rbegin()->first;
            if (!seen) {
                lo = a;
                hi = b;
                seen = true;
            } else {
                if (a < lo) lo = a;
                if (b > hi) hi = b;
            }
        }
    return {lo, hi};
}

LaurentMatrix operator+(const LaurentMatrix& a, const LaurentMatrix& b) {
    LaurentMatrix out = a;
    for (int r = 0; r < LaurentMatrix::dim; ++r)
        for (int c = 0; c < LaurentMatrix::dim; ++c)
            for (const auto& [p, v] : b.e_[r][c]) out.add(r, c, p, v);
    return out;
}

LaurentMatrix operator-(const LaurentMatrix& a, const LaurentMatrix& b) {
    LaurentMatrix out = a;
    for (int r = 0; r < LaurentMatrix::dim; ++r)
        for (int c = 0; c < LaurentMatrix::dim; ++c)
            for (const auto& [p, v] : b.e_[r][c]) out.add(r, c, p, -v);
    return out;
}

LaurentMatrix LaurentMatrix::operator-() const {
    LaurentMatrix out;
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            for (const auto& [p, v] : e_[r][c]) out.e_[r][c].emplace(p, -v);
    return out;
}

LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
    LaurentMatrix out;
    for (int r = 0; r < LaurentMatrix::dim; ++r)
        for (int k = 0; k < LaurentMatrix::dim; ++k) {
            if (a.e_[r][k].empty()) continue;
            for (int c = 0; c < LaurentMatrix::dim; ++c)
                for (const auto& [p1, v1] : a.e_[r][k])
                    for (const auto& [p2, v2] : b.e_[k][c])
                        out.add(r, c, p1 + p2, v1 * v2);
        }
    return out;
}

LaurentMatrix operator*(const ScalarExpr& s, const LaurentMatrix& a) {
    LaurentMatrix out;
    for (int r = 0; r < LaurentMatrix::dim; ++r)
        for (int c = 0; c < LaurentMatrix::dim; ++c)
            for (const auto& [p, v] : a.e_[r][c]) out.add(r, c, p, s * v);
    return out;
}

LaurentMatrix LaurentMatrix::derive(Dir d) const {
    LaurentMatrix out;
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            for (const auto& [p, v] : e_[r][c]) out.add(r, c, p, v.derive(d));
    return out;
}

LaurentMatrix LaurentMatrix::map_coeffs(
    const std::function<ScalarExpr(const ScalarExpr&)>& fn) const {
    LaurentMatrix out;
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            for (const auto& [p, v] : e_[r][c]) out.add(r, c, p, fn(v));
    return out;
}

LaurentMatrix LaurentMatrix::shift_power(int by) const {
    LaurentMatrix out;
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            for (const auto& [p, v] : e_[r][c]) out.e_[r][c].emplace(p + by, v);
    return out;
}

std::string LaurentMatrix::str() const {
    std::ostringstream os;
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            if (e_[r][c].empty()) continue;
            os << "(" << r + 1 << "," << c + 1 << "):";
            for (const auto& [p, v] : e_[r][c]) os << " z^" << p << " (" << v.str() << ")";
            os << "\n";
        }
    std::string s = os.str();
    return s.empty() ? "0\n" : s;
}

Grade rep_row_grade(int r) {
    static const Grade rows[LaurentMatrix::dim] = {g00, g00, g11, g11, g10, g01};
    return rows[r];
}

namespace {

struct BaseEntry {
    int r, c;  // one-based
    GaussianRational v;
};

const std::vector<BaseEntry>& base_entries(Family f) {
    static const GaussianRational one(1);
    static const GaussianRational im = GaussianRational::i();
    // mode-zero matrices, rows and columns one-based
    static const std::vector<BaseEntry> tables[family_count] = {
        /* K0 */ {{1, 1, one}, {2, 2, -one}, {3, 3, one}, {4, 4, -one}},
        /* K+ */ {{1, 2, one}, {3, 4, one}},
        /* K- */ {{2, 1, one}, {4, 3, one}},
        /* L0 */ {{1, 3, one}, {2, 4, -one}, {3, 1, one}, {4, 2, -one}},
        /* L+ */ {{1, 4, one}, {3, 2, one}},
        /* L- */ {{2, 3, one}, {4, 1, one}},
        /* P+ */ {{1, 5, one}, {3, 6, im}, {5, 2, one}, {6, 4, -im}},
        /* P- */ {{2, 5, -one}, {4, 6, -im}, {5, 1, one}, {6, 3, -im}},
        /* Q+ */ {{1, 6, one}, {3, 5, -im}, {6, 2, one}, {5, 4, im}},
        /* Q- */ {{2, 6, -one}, {4, 5, im}, {6, 1, one}, {5, 3, im}},
    };
    return tables[int(f)];
}

LaurentMatrix rep_with_power(const AlgebraElement& a, bool homogeneous) {
    LaurentMatrix out;
    for (const auto& [g, c] : a.parts()) {
        auto hg = c.homogeneous_grade();
        if (!hg)
            throw std::invalid_argument("representation needs a grade-homogeneous coefficient at " +
                                        loop_gen_str(g) + ": " + c.str());
        int power = homogeneous ? hom_f(g).mode : g.mode;
        for (const BaseEntry& be : base_entries(g.f)) {
            int s = grade_sign(*hg, rep_row_grade(be.r - 1));
            ScalarExpr v = be.v * c;
            if (s < 0) v = -v;
            out.add(be.r - 1, be.c - 1, power, v);
        }
    }
    return out;
}

}  // namespace

LaurentMatrix rep_gen(const LoopGen& g) {
    LaurentMatrix out;
    for (const BaseEntry& be : base_entries(g.f))
        out.add(be.r - 1, be.c - 1, g.mode, ScalarExpr(be.v));
    return out;
}

LaurentMatrix rep(const AlgebraElement& a) { return rep_with_power(a, false); }

LaurentMatrix rep_homogeneous(const AlgebraElement& a) { return rep_with_power(a, true); }

LaurentMatrix matrix_bracket(const LaurentMatrix& a, Grade ga, const LaurentMatrix& b,
                             Grade gb) {
    LaurentMatrix second = b * a;
    if (grade_sign(ga, gb) < 0) return a * b + second;
    return a * b - second;
}

LaurentMatrix matrix_zero_curvature(const LaurentMatrix& mx, const LaurentMatrix& mt) {
    return mx.derive(Dir::T) - mt.derive(Dir::X) + mx * mt - mt * mx;
}

std::vector<LoopGen> rep_grading_violations(int window) {
    std::vector<LoopGen> out;
    for (const LoopGen& g : basis_window(window)) {
        Grade want = loop_grade(g);
        for (const BaseEntry& be : base_entries(g.f))
            if (!(grade_add(rep_row_grade(be.r - 1), rep_row_grade(be.c - 1)) == want)) {
                out.push_back(g);
                break;
            }
    }
    return out;
}

std::vector<std::pair<LoopGen, LoopGen>> rep_violations(int window) {
    std::vector<std::pair<LoopGen, LoopGen>> out;
    for (const LoopGen& a : basis_window(window))
        for (const LoopGen& b : basis_window(window)) {
            LaurentMatrix lhs;
            if (auto br = bracket_basis(a, b))
                lhs = ScalarExpr(br->c) * rep_gen(br->g);
            LaurentMatrix rhs =
                matrix_bracket(rep_gen(a), loop_grade(a), rep_gen(b), loop_grade(b));
            if (!(lhs == rhs)) out.push_back({a, b});
        }
    return out;
}

}  // namespace z2osp
