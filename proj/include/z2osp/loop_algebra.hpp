#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "z2osp/grade.hpp"
#include "z2osp/rational.hpp"

namespace z2osp {

// Basis families of the loop algebra. K carries grade [00], L [11], P [10],
// Q [01]; the 0/p/m labels are the sl(2)-like triple inside each family.
enum class Family : uint8_t { K0, Kp, Km, L0, Lp, Lm, Pp, Pm, Qp, Qm };

constexpr int family_count = 10;

Grade family_grade(Family f);
std::string family_symbol(Family f);

// One loop generator: a family element at integer mode (power of the loop
// parameter).
struct LoopGen {
    Family f;
    int mode;

    friend bool operator==(const LoopGen&, const LoopGen&) = default;
    friend bool operator<(const LoopGen& a, const LoopGen& b) {
        if (a.f != b.f) return a.f < b.f;
        return a.mode < b.mode;
    }
};

std::string loop_gen_str(const LoopGen& g);
inline Grade loop_grade(const LoopGen& g) { return family_grade(g.f); }

struct BasisTerm {
    GaussianRational c;
    LoopGen g;
};

// Graded bracket of two basis generators: commutator when the grades'
// pairing vanishes, anticommutator otherwise. Every nonzero bracket of basis
// elements is a single basis element with a Gaussian-rational coefficient.
std::optional<BasisTerm> bracket_basis(const LoopGen& a, const LoopGen& b);

// The two outer derivations: mode counting, and the mode-weighted swap
// K <-> L, P -> iQ, Q -> -iP.
enum class Derivation { ModeCount, Swap };
std::optional<BasisTerm> apply_derivation(Derivation d, const LoopGen& g);

// Eigenvalue under the principal gradation element (half the K0 charge plus
// twice the mode counter).
Rational principal_grade(const LoopGen& g);

// Mode-rescaling endomorphism: quadruples every mode and shifts it by the
// principal grade's fractional pattern, family-wise.
LoopGen hom_f(const LoopGen& g);

// all basis generators with |mode| <= window
std::vector<LoopGen> basis_window(int window);

struct JacobiViolation {
    LoopGen a, b, c;
};

// graded antisymmetry failures over all pairs from the window
std::vector<std::pair<LoopGen, LoopGen>> antisymmetry_violations(int window);

// Sweeps graded antisymmetry and the graded Jacobi identity over all triples
// from the window. Honors the ZOSP_WORKERS environment variable for
// chunked evaluation; results are merged deterministically.
std::vector<JacobiViolation> jacobi_violations(int window);

// hom_f is a homomorphism on the window: bracket then map equals map then
// bracket. Returns offending pairs.
std::vector<std::pair<LoopGen, LoopGen>> hom_violations(int window);

// derivation property failures over the window
std::vector<std::pair<LoopGen, LoopGen>> derivation_violations(Derivation d, int window);

}  // namespace z2osp
