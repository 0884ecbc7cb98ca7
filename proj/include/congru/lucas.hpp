#pragma once

/// @file lucas.hpp
/// Lucas sequences u_n(A,B), v_n(A,B) modulo m by a doubling ladder.

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "congru/errors.hpp"
#include "congru/modmath.hpp"

namespace congru {

/// Parameters of x^2 - A x + B with discriminant A^2 - 4B.
struct LucasParams {
    i64 A = 1;
    i64 B = -1;

    constexpr i64 delta() const noexcept { return A * A - 4 * B; }

    static constexpr LucasParams fibonacci() noexcept { return {1, -1}; }
    static constexpr LucasParams pell() noexcept { return {2, -1}; }
    /// u_n(-6, 1), whose roots -3 +- 2 sqrt 2 are -(1 -+ sqrt 2)^2.
    static constexpr LucasParams neg6_1() noexcept { return {-6, 1}; }

    friend constexpr bool operator==(const LucasParams&, const LucasParams&) = default;
};

/// (u_n, v_n, B^n), all modulo the same m.
struct LucasPair {
    Residue u;
    Residue v;
    Residue bn;

    friend bool operator==(const LucasPair&, const LucasPair&) = default;
};

namespace detail {

/// State of the ladder at index k, in the context's representation.
struct LadderState {
    u64 uk;
    u64 uk1;
    u64 bk;
};

/// Runs the (u_k, u_{k+1}, B^k) ladder up to index n. Works for any modulus;
/// no division by 2 is needed because v_n is recovered as 2u_{n+1} - A u_n.
template <ModArith Ctx>
LadderState lucas_ladder(const Ctx& ctx, u64 a, u64 b, u64 n) {
    LadderState s{0, ctx.one(), ctx.one()};
    if (n == 0) return s;
    const int top = 63 - std::countl_zero(n);
    for (int bit = top; bit >= 0; --bit) {
        // k -> 2k
        const u64 two_next = ctx.add(s.uk1, s.uk1);
        const u64 u2k = ctx.mul(s.uk, ctx.sub(two_next, ctx.mul(a, s.uk)));
        const u64 u2k1 = ctx.sub(ctx.mul(s.uk1, s.uk1), ctx.mul(b, ctx.mul(s.uk, s.uk)));
        s.bk = ctx.mul(s.bk, s.bk);
        s.uk = u2k;
        s.uk1 = u2k1;
        if ((n >> bit) & 1U) {
            // k -> k+1
            const u64 next = ctx.sub(ctx.mul(a, s.uk1), ctx.mul(b, s.uk));
            s.uk = s.uk1;
            s.uk1 = next;
            s.bk = ctx.mul(s.bk, b);
        }
    }
    return s;
}

} // namespace detail

/// (u_n mod m, v_n mod m, B^n mod m) in O(log n) ring operations.
template <ModArith Ctx>
LucasPair lucas_pair_mod(const Ctx& ctx, const LucasParams& params, u64 n) {
    const u64 m = ctx.modulus();
    const u64 a = ctx.to(reduce(params.A, m));
    const u64 b = ctx.to(reduce(params.B, m));
    const auto s = detail::lucas_ladder(ctx, a, b, n);
    const u64 v = ctx.sub(ctx.add(s.uk1, s.uk1), ctx.mul(a, s.uk));
    return {Residue(ctx.from(s.uk), m), Residue(ctx.from(v), m), Residue(ctx.from(s.bk), m)};
}

inline LucasPair lucas_pair_mod(const LucasParams& params, u64 n, u64 m) {
    if (m < 2 || m >= modulus_limit) throw error("modulus must lie in [2, 2^63)");
    return lucas_pair_mod(PlainModulus(m), params, n);
}

inline Residue lucas_u(const LucasParams& params, u64 n, u64 m) { return lucas_pair_mod(params, n, m).u; }
inline Residue lucas_v(const LucasParams& params, u64 n, u64 m) { return lucas_pair_mod(params, n, m).v; }

enum class NamedSequence { fib, luc, pell_p, pell_q, u_neg6_1 };

constexpr std::string_view to_string(NamedSequence s) noexcept {
    switch (s) {
    case NamedSequence::fib: return "FIB";
    case NamedSequence::luc: return "LUC";
    case NamedSequence::pell_p: return "PELL_P";
    case NamedSequence::pell_q: return "PELL_Q";
    case NamedSequence::u_neg6_1: return "U_NEG6_1";
    }
    return "?";
}

inline Residue named_sequence_mod(NamedSequence name, u64 n, u64 m) {
    switch (name) {
    case NamedSequence::fib: return lucas_u(LucasParams::fibonacci(), n, m);
    case NamedSequence::luc: return lucas_v(LucasParams::fibonacci(), n, m);
    case NamedSequence::pell_p: return lucas_u(LucasParams::pell(), n, m);
    case NamedSequence::pell_q: return lucas_v(LucasParams::pell(), n, m);
    case NamedSequence::u_neg6_1: return lucas_u(LucasParams::neg6_1(), n, m);
    }
    throw error("unknown named sequence");
}

/// Jacobi sign eps = (D/p^a) and the shifted index p^a - eps.
struct SignIndex {
    int eps;
    u64 index;
};

inline SignIndex sign_index(const PrimePower& pp, i64 delta) {
    const int eps = jacobi(delta, pp.q);
    if (eps == 0) {
        throw zero_symbol(std::to_string(pp.p) + " divides the discriminant " + std::to_string(delta));
    }
    return {eps, eps > 0 ? pp.q - 1 : pp.q + 1};
}

/// Steps the recurrence s_{n+1} = A s_n - B s_{n-1} one index at a time.
class LucasWalker {
public:
    /// Starts at (s_0, s_1).
    LucasWalker(const LucasParams& params, u64 m, u64 s0, u64 s1)
        : a_(reduce(params.A, m)), b_(reduce(params.B, m)), m_(m), cur_(s0 % m), next_(s1 % m) {}

    static LucasWalker u(const LucasParams& params, u64 m) { return {params, m, 0, 1}; }
    static LucasWalker v(const LucasParams& params, u64 m) { return {params, m, 2, reduce(params.A, m)}; }

    u64 value() const noexcept { return cur_; }
    u64 index() const noexcept { return n_; }

    void step() noexcept {
        const u64 nxt = submod(mulmod(a_, next_, m_), mulmod(b_, cur_, m_), m_);
        cur_ = next_;
        next_ = nxt;
        ++n_;
    }

    void advance_to(u64 n) noexcept {
        while (n_ < n) step();
    }

private:
    u64 a_, b_, m_;
    u64 cur_, next_;
    u64 n_ = 0;
};

} // namespace congru
