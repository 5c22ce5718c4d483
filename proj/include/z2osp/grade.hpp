#pragma once

#include <cstdint>
#include <compare>
#include <string>
#include <stdexcept>

namespace z2osp {

// Z2 x Z2 grade. bit0 = first component, bit1 = second component.
struct Grade {
    uint8_t bits = 0;

    constexpr int g1() const { return bits & 1; }
    constexpr int g2() const { return (bits >> 1) & 1; }

    friend constexpr bool operator==(Grade, Grade) = default;
    friend constexpr auto operator<=>(Grade a, Grade b) { return a.bits <=> b.bits; }
};

inline constexpr Grade g00{0b00};
inline constexpr Grade g10{0b01};
inline constexpr Grade g01{0b10};
inline constexpr Grade g11{0b11};

// componentwise sum mod 2
constexpr Grade grade_add(Grade a, Grade b) { return Grade{uint8_t(a.bits ^ b.bits)}; }

// scalar product a.b = a1 b1 + a2 b2 mod 2; decides commutator (0) vs anticommutator (1)
constexpr int grade_dot(Grade a, Grade b) {
    return (a.g1() * b.g1() + a.g2() * b.g2()) & 1;
}

// sign picked up when two homogeneous factors of grades a, b are swapped
constexpr int grade_sign(Grade a, Grade b) { return grade_dot(a, b) ? -1 : 1; }

// grades with a.a = 1 square to zero in the scalar ring
constexpr bool grade_odd(Grade a) { return grade_dot(a, a) == 1; }

inline std::string grade_text(Grade a) {
    std::string s = "[";
    s += char('0' + a.g1());
    s += char('0' + a.g2());
    s += ']';
    return s;
}

inline Grade grade_parse(const std::string& s) {
    if (s.size() == 4 && s.front() == '[' && s.back() == ']' &&
        (s[1] == '0' || s[1] == '1') && (s[2] == '0' || s[2] == '1')) {
        return Grade{uint8_t((s[1] - '0') | ((s[2] - '0') << 1))};
    }
    throw std::invalid_argument("grade_parse: expected \"[g1g2]\", got \"" + s + "\"");
}

} // namespace z2osp
