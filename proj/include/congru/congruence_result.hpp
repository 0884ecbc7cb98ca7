#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "congru/exact.hpp"
#include "congru/modmath.hpp"
#include "congru/quadring.hpp"

namespace congru {

enum class CongruenceId {
    thm1,
    thm2,
    thm3,
    s1sum,
    e23,
    e24,
    l21,
    l22,
    cb1,
    cb2,
    nu1,
    l31,
    p31a,
    p31b,
    e34,
    e35,
    e36,
    e37,
    e38,
    l41,
    harm,
    p41,
    l42,
    e44,
    e45,
    vp,
    up,
    udiv,
    udivp,
};

/// How lhs and rhs are compared.
enum class Relation {
    congruent, ///< lhs == rhs modulo the modulus (exact equality when the modulus is 0)
    less_than, ///< integer inequality lhs < rhs
};

/// One side of a congruence: a scalar, or a quadratic-ring element c0 + c1 w.
struct Quantity {
    big_int c0 = 0;
    std::optional<big_int> c1;

    static Quantity scalar(const Residue& r) { return {big_int(r.value()), std::nullopt}; }
    static Quantity integer(const big_int& v) { return {v, std::nullopt}; }
    static Quantity quad(const QuadElem& x) { return {big_int(x.a()), big_int(x.b())}; }

    std::string to_string() const {
        std::string s = c0.str();
        if (c1) s += "+" + c1->str() + "*w";
        return s;
    }

    /// Inverse of to_string.
    static Quantity parse(std::string_view text) {
        const auto w = text.find("*w");
        if (w == std::string_view::npos) return {big_int(std::string(text)), std::nullopt};
        // The split point is the '+' that follows the (possibly signed) constant.
        const auto plus = text.find('+', 1);
        if (plus == std::string_view::npos || plus > w) throw error("malformed quadratic value: " + std::string(text));
        return {big_int(std::string(text.substr(0, plus))), big_int(std::string(text.substr(plus + 1, w - plus - 1)))};
    }

    friend bool operator==(const Quantity&, const Quantity&) = default;
};

struct CongruenceResult {
    CongruenceId id = CongruenceId::thm1;
    u64 p = 0;
    unsigned a = 1;
    std::vector<i64> extra;
    big_int modulus = 0; ///< 0 means exact (integer) comparison
    Quantity lhs;
    Quantity rhs;
    bool holds = false;
    u64 micros = 0;

    friend bool operator==(const CongruenceResult&, const CongruenceResult&) = default;
};

} // namespace congru
