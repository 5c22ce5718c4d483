#include "z2osp/loop_algebra.hpp"

#include <cstdlib>
#include <map>
#include <thread>

namespace z2osp {

Grade family_grade(Family f) {
    switch (f) {
        case Family::K0:
        case Family::Kp:
        case Family::Km: return g00;
        case Family::L0:
        case Family::Lp:
        case Family::Lm: return g11;
        case Family::Pp:
        case Family::Pm: return g10;
        case Family::Qp:
        case Family::Qm: return g01;
    }
    return g00;
}

std::string family_symbol(Family f) {
    switch (f) {
        case Family::K0: return "K0";
        case Family::Kp: return "K+";
        case Family::Km: return "K-";
        case Family::L0: return "L0";
        case Family::Lp: return "L+";
        case Family::Lm: return "L-";
        case Family::Pp: return "P+";
        case Family::Pm: return "P-";
        case Family::Qp: return "Q+";
        case Family::Qm: return "Q-";
    }
    return "?";
}

std::string loop_gen_str(const LoopGen& g) {
    return family_symbol(g.f) + "[" + std::to_string(g.mode) + "]";
}

namespace {

constexpr int pack(Family a, Family b) { return (int(a) << 4) | int(b); }

GaussianRational gr(long long n) { return GaussianRational(n); }
GaussianRational gi(long long n) { return GaussianRational(Rational(0), Rational(n)); }

// bracket of family pairs in canonical key order (first key <= second key);
// the mode of the result is always the sum of the input modes
std::optional<std::pair<GaussianRational, Family>> family_table(Family a, Family b) {
    using F = Family;
    switch (pack(a, b)) {
        case pack(F::K0, F::Kp): return {{gr(2), F::Kp}};
        case pack(F::K0, F::Km): return {{gr(-2), F::Km}};
        case pack(F::K0, F::Lp): return {{gr(2), F::Lp}};
        case pack(F::K0, F::Lm): return {{gr(-2), F::Lm}};
        case pack(F::K0, F::Pp): return {{gr(1), F::Pp}};
        case pack(F::K0, F::Pm): return {{gr(-1), F::Pm}};
        case pack(F::K0, F::Qp): return {{gr(1), F::Qp}};
        case pack(F::K0, F::Qm): return {{gr(-1), F::Qm}};

        case pack(F::Kp, F::Km): return {{gr(1), F::K0}};
        case pack(F::Kp, F::L0): return {{gr(-2), F::Lp}};
        case pack(F::Kp, F::Lm): return {{gr(1), F::L0}};
        case pack(F::Kp, F::Pm): return {{gr(-1), F::Pp}};
        case pack(F::Kp, F::Qm): return {{gr(-1), F::Qp}};

        case pack(F::Km, F::L0): return {{gr(2), F::Lm}};
        case pack(F::Km, F::Lp): return {{gr(-1), F::L0}};
        case pack(F::Km, F::Pp): return {{gr(-1), F::Pm}};
        case pack(F::Km, F::Qp): return {{gr(-1), F::Qm}};

        case pack(F::L0, F::Lp): return {{gr(2), F::Kp}};
        case pack(F::L0, F::Lm): return {{gr(-2), F::Km}};
        case pack(F::L0, F::Pp): return {{gi(1), F::Qp}};
        case pack(F::L0, F::Pm): return {{gi(-1), F::Qm}};
        case pack(F::L0, F::Qp): return {{gi(-1), F::Pp}};
        case pack(F::L0, F::Qm): return {{gi(1), F::Pm}};

        case pack(F::Lp, F::Lm): return {{gr(1), F::K0}};
        case pack(F::Lp, F::Pm): return {{gi(-1), F::Qp}};
        case pack(F::Lp, F::Qm): return {{gi(1), F::Pp}};

        case pack(F::Lm, F::Pp): return {{gi(-1), F::Qm}};
        case pack(F::Lm, F::Qp): return {{gi(1), F::Pm}};

        case pack(F::Pp, F::Pp): return {{gr(2), F::Kp}};
        case pack(F::Pp, F::Pm): return {{gr(1), F::K0}};
        case pack(F::Pm, F::Pm): return {{gr(-2), F::Km}};
        case pack(F::Pp, F::Qp): return {{gi(2), F::Lp}};
        case pack(F::Pp, F::Qm): return {{gi(1), F::L0}};
        case pack(F::Pm, F::Qp): return {{gi(1), F::L0}};
        case pack(F::Pm, F::Qm): return {{gi(-2), F::Lm}};

        case pack(F::Qp, F::Qp): return {{gr(2), F::Kp}};
        case pack(F::Qp, F::Qm): return {{gr(1), F::K0}};
        case pack(F::Qm, F::Qm): return {{gr(-2), F::Km}};
        default: return std::nullopt;
    }
}

Grade derivation_grade(Derivation d) { return d == Derivation::Swap ? g11 : g00; }

}  // namespace

std::optional<BasisTerm> bracket_basis(const LoopGen& a, const LoopGen& b) {
    if (int(a.f) > int(b.f)) {
        auto r = bracket_basis(b, a);
        if (!r) return std::nullopt;
        int s = grade_sign(loop_grade(a), loop_grade(b));
        if (s < 0) return r;       // anticommutator: symmetric
        r->c = -r->c;              // commutator: antisymmetric
        return r;
    }
    auto e = family_table(a.f, b.f);
    if (!e) return std::nullopt;
    return BasisTerm{e->first, LoopGen{e->second, a.mode + b.mode}};
}

std::optional<BasisTerm> apply_derivation(Derivation d, const LoopGen& g) {
    long long m = g.mode;
    if (m == 0) return std::nullopt;
    if (d == Derivation::ModeCount) return BasisTerm{GaussianRational(m), g};
    using F = Family;
    switch (g.f) {
        case F::K0: return BasisTerm{GaussianRational(m), LoopGen{F::L0, g.mode}};
        case F::L0: return BasisTerm{GaussianRational(m), LoopGen{F::K0, g.mode}};
        case F::Kp: return BasisTerm{GaussianRational(m), LoopGen{F::Lp, g.mode}};
        case F::Lp: return BasisTerm{GaussianRational(m), LoopGen{F::Kp, g.mode}};
        case F::Km: return BasisTerm{GaussianRational(m), LoopGen{F::Lm, g.mode}};
        case F::Lm: return BasisTerm{GaussianRational(m), LoopGen{F::Km, g.mode}};
        case F::Pp: return BasisTerm{gi(m), LoopGen{F::Qp, g.mode}};
        case F::Pm: return BasisTerm{gi(m), LoopGen{F::Qm, g.mode}};
        case F::Qp: return BasisTerm{gi(-m), LoopGen{F::Pp, g.mode}};
        case F::Qm: return BasisTerm{gi(-m), LoopGen{F::Pm, g.mode}};
    }
    return std::nullopt;
}

Rational principal_grade(const LoopGen& g) {
    Rational base(2 * g.mode);
    switch (g.f) {
        case Family::K0:
        case Family::L0: return base;
        case Family::Kp:
        case Family::Lp: return base + Rational(1);
        case Family::Km:
        case Family::Lm: return base - Rational(1);
        case Family::Pp:
        case Family::Qp: return base + Rational(1, 2);
        case Family::Pm:
        case Family::Qm: return base - Rational(1, 2);
    }
    return base;
}

LoopGen hom_f(const LoopGen& g) {
    int m = g.mode;
    switch (g.f) {
        case Family::K0:
        case Family::L0: return {g.f, 4 * m};
        case Family::Pp:
        case Family::Qp: return {g.f, 4 * m + 1};
        case Family::Pm:
        case Family::Qm: return {g.f, 4 * m - 1};
        case Family::Kp:
        case Family::Lp: return {g.f, 4 * m + 2};
        case Family::Km:
        case Family::Lm: return {g.f, 4 * m - 2};
    }
    return g;
}

std::vector<LoopGen> basis_window(int window) {
    std::vector<LoopGen> out;
    for (int f = 0; f < family_count; ++f)
        for (int m = -window; m <= window; ++m) out.push_back({Family(f), m});
    return out;
}

namespace {

int worker_count() {
    if (const char* env = std::getenv("ZOSP_WORKERS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

void accumulate_nested(std::map<LoopGen, GaussianRational>& acc, const GaussianRational& s,
                       const LoopGen& a, const LoopGen& b, const LoopGen& c) {
    auto inner = bracket_basis(b, c);
    if (!inner) return;
    auto outer = bracket_basis(a, inner->g);
    if (!outer) return;
    GaussianRational v = s * inner->c * outer->c;
    auto it = acc.find(outer->g);
    if (it == acc.end()) {
        if (!v.is_zero()) acc.emplace(outer->g, v);
        return;
    }
    it->second = it->second + v;
    if (it->second.is_zero()) acc.erase(it);
}

bool jacobi_holds(const LoopGen& a, const LoopGen& b, const LoopGen& c) {
    std::map<LoopGen, GaussianRational> acc;
    accumulate_nested(acc, GaussianRational(grade_sign(loop_grade(a), loop_grade(c))), a, b, c);
    accumulate_nested(acc, GaussianRational(grade_sign(loop_grade(b), loop_grade(a))), b, c, a);
    accumulate_nested(acc, GaussianRational(grade_sign(loop_grade(c), loop_grade(b))), c, a, b);
    return acc.empty();
}

}  // namespace

std::vector<JacobiViolation> jacobi_violations(int window) {
    std::vector<LoopGen> basis = basis_window(window);
    size_t n = basis.size();
    size_t total = n * n * n;
    int workers = worker_count();
    if (workers == 1) {
        std::vector<JacobiViolation> out;
        for (const LoopGen& a : basis)
            for (const LoopGen& b : basis)
                for (const LoopGen& c : basis)
                    if (!jacobi_holds(a, b, c)) out.push_back({a, b, c});
        return out;
    }
    std::vector<std::vector<JacobiViolation>> parts(workers);
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) {
        size_t lo = total * w / workers, hi = total * (w + 1) / workers;
        threads.emplace_back([&, w, lo, hi] {
            for (size_t idx = lo; idx < hi; ++idx) {
                const LoopGen& a = basis[idx / (n * n)];
                const LoopGen& b = basis[(idx / n) % n];
                const LoopGen& c = basis[idx % n];
                if (!jacobi_holds(a, b, c)) parts[w].push_back({a, b, c});
            }
        });
    }
    for (auto& t : threads) t.join();
    std::vector<JacobiViolation> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

std::vector<std::pair<LoopGen, LoopGen>> antisymmetry_violations(int window) {
    std::vector<std::pair<LoopGen, LoopGen>> out;
    for (const LoopGen& a : basis_window(window))
        for (const LoopGen& b : basis_window(window)) {
            auto ab = bracket_basis(a, b);
            auto ba = bracket_basis(b, a);
            int s = grade_sign(loop_grade(a), loop_grade(b));
            // [[A,B]] must equal -sign * [[B,A]]
            if (!ab && !ba) continue;
            if (!ab || !ba) {
                out.push_back({a, b});
                continue;
            }
            GaussianRational want = s < 0 ? ba->c : -ba->c;
            if (!(ab->g == ba->g) || !(ab->c == want)) out.push_back({a, b});
        }
    return out;
}

std::vector<std::pair<LoopGen, LoopGen>> hom_violations(int window) {
    std::vector<std::pair<LoopGen, LoopGen>> out;
    for (const LoopGen& a : basis_window(window))
        for (const LoopGen& b : basis_window(window)) {
            auto br = bracket_basis(a, b);
            auto mapped = bracket_basis(hom_f(a), hom_f(b));
            if (!br && !mapped) continue;
            if (!br || !mapped) {
                out.push_back({a, b});
                continue;
            }
            if (!(hom_f(br->g) == mapped->g) || !(br->c == mapped->c)) out.push_back({a, b});
        }
    return out;
}

std::vector<std::pair<LoopGen, LoopGen>> derivation_violations(Derivation d, int window) {
    std::vector<std::pair<LoopGen, LoopGen>> out;
    Grade dg = derivation_grade(d);
    for (const LoopGen& a : basis_window(window))
        for (const LoopGen& b : basis_window(window)) {
            std::map<LoopGen, GaussianRational> acc;
            auto add = [&acc](const GaussianRational& c, const LoopGen& g) {
                auto it = acc.find(g);
                if (it == acc.end()) {
                    if (!c.is_zero()) acc.emplace(g, c);
                    return;
                }
                it->second = it->second + c;
                if (it->second.is_zero()) acc.erase(it);
            };
            // D [[a,b]] - [[Da,b]] - (-1)^{<d,a>} [[a,Db]]
            if (auto br = bracket_basis(a, b))
                if (auto db = apply_derivation(d, br->g)) add(br->c * db->c, db->g);
            if (auto da = apply_derivation(d, a))
                if (auto br = bracket_basis(da->g, b)) add(-(da->c * br->c), br->g);
            GaussianRational s(grade_sign(dg, loop_grade(a)));
            if (auto db = apply_derivation(d, b))
                if (auto br = bracket_basis(a, db->g)) add(-(s * db->c * br->c), br->g);
            if (!acc.empty()) out.push_back({a, b});
        }
    return out;
}

}  // namespace z2osp
