#pragma once

/// @file evaluators.hpp
/// Left- and right-hand sides of every registered congruence.
///
/// Left-hand sides are computed by direct summation (p-adic accumulation
/// where terms may carry negative valuation) or by stepping the defining
/// recurrence. Right-hand sides come from closed forms: Jacobi symbols and
/// Lucas values from the doubling ladder. The two sides share only the
/// modmath primitives.

#include <span>

#include "congru/congruence_result.hpp"
#include "congru/lucas.hpp"
#include "congru/modmath.hpp"
#include "congru/padic.hpp"
#include "congru/quadring.hpp"
#include "congru/streams.hpp"

namespace congru::eval {

struct Outcome {
    Quantity lhs;
    Quantity rhs;
};

using Extra = std::span<const i64>;

inline u64 kronecker_delta3(u64 p) noexcept { return p == 3 ? 1 : 0; }

/// 1/k^2 mod m for k coprime to m.
inline u64 inv_square(u64 k, u64 m) {
    const u64 inv = invmod(static_cast<i64>(k % m), m).value();
    return mulmod(inv, inv, m);
}

/// (value / p) mod p^k, where value is known mod p^(k+1) and divisible by p.
inline Residue quotient_by_p(u64 value, u64 p, unsigned k) {
    return PadicRational::from_residue(value, k + 1, p, k + 1).shift(-1).to_residue(k);
}

/// sum_{k=from}^{to} C(2k,k) r^k with r = num/den, accumulated p-adically.
inline PadicRational weighted_central_sum(u64 p, unsigned n, u64 from, u64 to, i64 num, i64 den) {
    const auto ratio = PadicRational::from_integer(num, p, n) / PadicRational::from_integer(den, p, n);
    CentralBinomialStream central(p, n);
    auto rk = PadicRational::from_integer(1, p, n);
    auto sum = PadicRational::zero(p, n);
    for (u64 k = 0; k <= to; ++k) {
        if (k >= from) sum += central.value() * rk;
        central.advance();
        rk *= ratio;
    }
    return sum;
}

/// q * sum_{k=0}^{count-1} 1 / C((q-3)/2, k).
inline PadicRational scaled_reciprocal_binomial_sum(const PrimePower& pp, unsigned n, u64 count) {
    BinomialRowStream row((pp.q - 3) / 2, pp.p, n);
    auto sum = PadicRational::zero(pp.p, n);
    for (u64 k = 0; k < count; ++k) {
        sum += row.value().inv();
        row.advance();
    }
    return sum.shift(static_cast<int>(pp.a));
}

inline Outcome thm1(const PrimePower& pp, Extra) {
    const u64 m = pp.power(2);
    const auto lhs = weighted_central_sum(pp.p, 2, 0, 3 * pp.q / 4, 1, -4).to_residue(2);
    return {Quantity::scalar(lhs), Quantity::scalar(Residue::from_signed(jacobi(2, pp.q), m))};
}

inline Outcome s1sum(const PrimePower& pp, Extra) {
    const u64 m = pp.power(2);
    const auto lhs = weighted_central_sum(pp.p, 2, 0, pp.q - 1, 1, -4).to_residue(2);
    const auto si = sign_index(pp, 8);
    const Residue rhs = Residue::from_signed(si.eps, m) + lucas_u(LucasParams::neg6_1(), si.index, m);
    return {Quantity::scalar(lhs), Quantity::scalar(rhs)};
}

inline Outcome e23(const PrimePower& pp, Extra) {
    const u64 m = pp.power(2);
    const u64 delta = pp.q_mod4; // delta in {1, 3} with q = delta (mod 4)
    const auto lhs = weighted_central_sum(pp.p, 2, (3 * pp.q + delta) / 4, pp.q - 1, 1, -4).to_residue(2);
    const auto si = sign_index(pp, 8);
    return {Quantity::scalar(lhs), Quantity::scalar(lucas_u(LucasParams::neg6_1(), si.index, m))};
}

inline Outcome e24(const PrimePower& pp, Extra) {
    const u64 m = pp.power(2);
    const u64 delta = pp.q_mod4;
    const auto lhs = scaled_reciprocal_binomial_sum(pp, pp.a + 1, (pp.q - delta) / 4).to_residue(2);
    const auto si = sign_index(pp, 8);
    return {Quantity::scalar(lhs), Quantity::scalar(-lucas_u(LucasParams::neg6_1(), si.index, m))};
}

inline Outcome l21(const PrimePower& pp, Extra) {
    const u64 m = pp.power(2);
    const int eps = jacobi(2, pp.q);
    const u64 index = eps > 0 ? pp.q - 1 : pp.q + 1;
    auto pw = LucasWalker::u(LucasParams::pell(), m);
    auto qw = LucasWalker::v(LucasParams::pell(), m);
    pw.advance_to(index);
    qw.advance_to(index);
    const Residue lhs(mulmod(pw.value(), qw.value(), m), m);

    const Residue q_q = lucas_v(LucasParams::pell(), pp.q, m);
    const Residue rhs = Residue::from_signed(eps, m) * (q_q - Residue(2, m)) * invmod(2, m);
    return {Quantity::scalar(lhs), Quantity::scalar(rhs)};
}

inline Outcome l22(const PrimePower& pp, Extra) {
    const u64 m = pp.power(2);
    const auto lhs = scaled_reciprocal_binomial_sum(pp, pp.a + 1, pp.q / 4).to_residue(2);
    const Residue q_q = lucas_v(LucasParams::pell(), pp.q, m);
    const Residue rhs = Residue::from_signed(jacobi(2, pp.q), m) * (q_q - Residue(2, m)) * invmod(4, m);
    return {Quantity::scalar(lhs), Quantity::scalar(rhs)};
}

inline Outcome cb1(const PrimePower& pp, Extra) {
    const unsigned k = pp.a + 1;
    const u64 m = pp.power(k);
    auto binom = PadicRational::from_integer(1, pp.p, k);
    for (u64 j = 1; j < pp.q; ++j) {
        binom *= PadicRational::from_integer(static_cast<i64>(pp.q - 1 + j), pp.p, k);
        binom /= PadicRational::from_integer(static_cast<i64>(j), pp.p, k);
    }
    return {Quantity::scalar(binom.to_residue(k)), Quantity::scalar(Residue(m - pp.q, m))};
}

/// extra = {l}: C(2k,k) vs -2q / (l C(2l,l)) for k = q - l.
inline Outcome cb2(const PrimePower& pp, Extra extra) {
    const u64 l = static_cast<u64>(extra[0]);
    const unsigned n = pp.a + 1;
    const u64 k = pp.q - l;

    CentralBinomialStream central(pp.p, n);
    while (central.index() < k) central.advance();
    const auto lhs = central.value().to_residue(2);

    const auto fl = padic_factorial(l, pp.p, n);
    const auto c2l = padic_factorial(2 * l, pp.p, n) / (fl * fl);
    const auto rhs = (PadicRational::from_integer(-2, pp.p, n).shift(static_cast<int>(pp.a)) /
                      (PadicRational::from_integer(static_cast<i64>(l), pp.p, n) * c2l))
                         .to_residue(2);
    return {Quantity::scalar(lhs), Quantity::scalar(rhs)};
}

/// nu_p(C((q-3)/2, (q-3)/4)) against the bound a - 1.
inline Outcome nu1(const PrimePower& pp, Extra) {
    const u64 top = (pp.q - 3) / 2;
    const u64 half = (pp.q - 3) / 4;
    const u64 nu = nu_factorial(top, pp.p) - nu_factorial(half, pp.p) - nu_factorial(top - half, pp.p);
    return {Quantity::integer(big_int(nu)), Quantity::integer(big_int(pp.a - 1))};
}

/// ((L_p - 1)/p)^2 style square of a Fermat-type quotient, mod p.
inline Residue squared_quotient_mod_p(u64 value_mod_p2, u64 p) {
    const Residue t = quotient_by_p(value_mod_p2, p, 1);
    return t * t;
}

/// extra = {x}
inline Outcome l31(const PrimePower& pp, Extra extra) {
    const u64 p = pp.p;
    const u64 p2 = pp.power(2);
    const i64 x = extra[0];

    const u64 t = submod(addmod(powmod(reduce(x, p2), p, p2), powmod(reduce(1 - x, p2), p, p2), p2), 1, p2);
    const auto q = PadicRational::from_residue(t, 2, p, 2).shift(-1);
    const auto lhs = (q * q).to_residue(1);

    const u64 y = reduce(1 - x, p);
    const u64 z = submod(1, invmod(x, p).value(), p);
    u64 s1 = 0, s2 = 0, yk = 1, zk = 1;
    for (u64 k = 1; k < p; ++k) {
        yk = mulmod(yk, y, p);
        zk = mulmod(zk, z, p);
        const u64 w = inv_square(k, p);
        s1 = addmod(s1, mulmod(yk, w, p), p);
        s2 = addmod(s2, mulmod(zk, w, p), p);
    }
    const Residue x2p = powmod(x, 2 * p, p);
    const Residue rhs = Residue::from_signed(-2, p) * Residue(s1, p) - Residue(2, p) * x2p * Residue(s2, p);
    return {Quantity::scalar(lhs), Quantity::scalar(rhs)};
}

/// ((v_p(A,B) - A^p)/p)^2 mod p, from the recurrence.
inline Residue lucas_quotient_square(const LucasParams& ab, u64 p) {
    const u64 p2 = p * p;
    auto vw = LucasWalker::v(ab, p2);
    vw.advance_to(p);
    const u64 diff = submod(vw.value(), powmod(reduce(ab.A, p2), p, p2), p2);
    return squared_quotient_mod_p(diff, p);
}

/// sum_{k=1}^{p-1} (c x)^k / k^2 in the ring, c a scalar.
inline QuadElem weighted_power_sum(const QuadElem& x, u64 c, u64 p) {
    const LucasParams& ab = x.params();
    QuadElem acc = QuadElem::scalar(0, ab, p);
    QuadElem xk = QuadElem::one(ab, p);
    u64 ck = 1;
    for (u64 k = 1; k < p; ++k) {
        xk *= x;
        ck = mulmod(ck, c, p);
        acc += xk * Residue(mulmod(ck, inv_square(k, p), p), p);
    }
    return acc;
}

/// -2A^2 sum alpha^k/(A^k k^2) - 2 beta^{2p} sum alpha^{2k}/((-B)^k k^2)
inline QuadElem p31a_rhs(const LucasParams& ab, u64 p) {
    const auto [alpha, beta] = roots(ab, p);
    const u64 a_inv = invmod(ab.A, p).value();
    const u64 negb_inv = invmod(-ab.B, p).value();
    const QuadElem s1 = weighted_power_sum(alpha, a_inv, p);
    const QuadElem s2 = weighted_power_sum(alpha * alpha, negb_inv, p);
    const Residue a2 = Residue::from_signed(ab.A, p).pow(2);
    return s1 * (Residue::from_signed(-2, p) * a2) - beta.pow(2 * p) * s2 * Residue(2, p);
}

/// -2A alpha^p sum alpha^k/(A^k k^2) - 2 beta^{2p} sum A^k alpha^k/(B^k k^2)
inline QuadElem p31b_rhs(const LucasParams& ab, u64 p) {
    const auto [alpha, beta] = roots(ab, p);
    const u64 a_inv = invmod(ab.A, p).value();
    const u64 a_over_b = mulmod(reduce(ab.A, p), invmod(ab.B, p).value(), p);
    const QuadElem s1 = weighted_power_sum(alpha, a_inv, p);
    const QuadElem s3 = weighted_power_sum(alpha, a_over_b, p);
    return alpha.pow(p) * s1 * Residue::from_signed(-2 * ab.A, p) - beta.pow(2 * p) * s3 * Residue(2, p);
}

/// extra = {A, B}
inline Outcome p31a(const PrimePower& pp, Extra extra) {
    const LucasParams ab{extra[0], extra[1]};
    const QuadElem lhs = QuadElem::scalar(lucas_quotient_square(ab, pp.p), ab);
    return {Quantity::quad(lhs), Quantity::quad(p31a_rhs(ab, pp.p))};
}

inline Outcome p31b(const PrimePower& pp, Extra extra) {
    const LucasParams ab{extra[0], extra[1]};
    const QuadElem lhs = QuadElem::scalar(lucas_quotient_square(ab, pp.p), ab);
    return {Quantity::quad(lhs), Quantity::quad(p31b_rhs(ab, pp.p))};
}

inline Outcome e34(const PrimePower& pp, Extra) {
    const auto fib = LucasParams::fibonacci();
    const u64 p = pp.p;
    const auto [alpha, beta] = roots(fib, p);
    const QuadElem lhs = QuadElem::scalar(lucas_quotient_square(fib, p), fib);
    // -2 sum alpha^k/k^2 - 2 beta^{2p} sum alpha^{2k}/k^2
    const QuadElem rhs = weighted_power_sum(alpha, 1, p) * Residue::from_signed(-2, p) -
                         beta.pow(2 * p) * weighted_power_sum(alpha * alpha, 1, p) * Residue(2, p);
    return {Quantity::quad(lhs), Quantity::quad(rhs)};
}

inline Outcome e35(const PrimePower& pp, Extra) {
    const auto fib = LucasParams::fibonacci();
    const u64 p = pp.p;
    const auto [alpha, beta] = roots(fib, p);
    const QuadElem lhs = QuadElem::scalar(lucas_quotient_square(fib, p), fib);
    // -2 alpha^p sum alpha^k/k^2 - 2 beta^{2p} sum (-alpha)^k/k^2
    const QuadElem rhs = alpha.pow(p) * weighted_power_sum(alpha, 1, p) * Residue::from_signed(-2, p) -
                         beta.pow(2 * p) * weighted_power_sum(-alpha, 1, p) * Residue(2, p);
    return {Quantity::quad(lhs), Quantity::quad(rhs)};
}

inline Outcome e36(const PrimePower& pp, Extra) {
    const auto fib = LucasParams::fibonacci();
    const u64 p = pp.p;
    const auto [alpha, beta] = roots(fib, p);
    const QuadElem one = QuadElem::one(fib, p);
    const QuadElem ap = alpha.pow(p);
    const QuadElem b2p = beta.pow(2 * p);
    const QuadElem lhs = QuadElem::scalar(lucas_quotient_square(fib, p), fib);
    // -2(1 + 2(1+alpha^p) beta^{2p}) sum alpha^k/k^2 - 4(1-alpha^p) beta^{2p} sum (-alpha)^k/k^2
    const QuadElem c1 = (one + (one + ap) * b2p * Residue(2, p)) * Residue::from_signed(-2, p);
    const QuadElem c2 = (one - ap) * b2p * Residue::from_signed(-4, p);
    const QuadElem rhs = c1 * weighted_power_sum(alpha, 1, p) + c2 * weighted_power_sum(-alpha, 1, p);
    return {Quantity::quad(lhs), Quantity::quad(rhs)};
}

inline Outcome e37(const PrimePower& pp, Extra) {
    const auto fib = LucasParams::fibonacci();
    const u64 p = pp.p;
    const auto [alpha, beta] = roots(fib, p);
    const QuadElem factor = beta.pow(p) * Residue(2, p) - QuadElem::one(fib, p);
    const QuadElem lhs = factor * lucas_quotient_square(fib, p);
    const QuadElem rhs = weighted_power_sum(beta, 1, p) * Residue::from_signed(-10, p);
    return {Quantity::quad(lhs), Quantity::quad(rhs)};
}

inline Outcome e38(const PrimePower& pp, Extra) {
    const u64 p = pp.p;
    auto fw = LucasWalker::u(LucasParams::fibonacci(), p);
    u64 lhs = 0;
    for (u64 k = 1; k < p; ++k) {
        fw.step();
        lhs = addmod(lhs, mulmod(fw.value(), inv_square(k, p), p), p);
    }
    const u64 p2 = pp.power(2);
    const Residue lp = lucas_v(LucasParams::fibonacci(), p, p2);
    const Residue sq = squared_quotient_mod_p(submod(lp.value(), 1, p2), p);
    const Residue rhs = Residue::from_signed(-jacobi(static_cast<i64>(p), 5), p) * invmod(5, p) * sq;
    return {Quantity::scalar(Residue(lhs, p)), Quantity::scalar(rhs)};
}

/// p^{a-1} sum_{k=1}^{q-1} c_k / k with c_k given mod p^n by `coeff(k)`.
template <class Coeff>
PadicRational scaled_harmonic_sum(const PrimePower& pp, unsigned n, Coeff&& coeff) {
    const u64 pn = pp.power(n);
    auto sum = PadicRational::zero(pp.p, n);
    for (u64 k = 1; k < pp.q; ++k) {
        const u64 c = coeff(k) % pn;
        sum += PadicRational::from_residue(c, n, pp.p, n) / PadicRational::from_integer(static_cast<i64>(k), pp.p, n);
    }
    return sum.shift(static_cast<int>(pp.a) - 1);
}

/// extra = {x}
inline Outcome l41(const PrimePower& pp, Extra extra) {
    const u64 p = pp.p;
    const unsigned n = pp.a + 1;
    const u64 pn = pp.power(n);
    const u64 p2 = pp.power(2);
    const i64 x = extra[0];

    const u64 y = reduce(1 - x, pn);
    u64 yk = 1;
    auto lhs = scaled_harmonic_sum(pp, n, [&](u64) {
        yk = mulmod(yk, y, pn);
        return yk;
    });
    lhs += PadicRational::from_integer(static_cast<i64>(kronecker_delta3(p)), p, n).shift(1);

    const u64 p3 = pp.power(3);
    const u64 t = submod(submod(1, powmod(reduce(x, p3), pp.q, p3), p3), powmod(reduce(1 - x, p3), pp.q, p3), p3);
    const Residue quot = quotient_by_p(t, p, 2);
    u64 g = 0, xk = 1;
    const u64 xr = reduce(x, p2);
    for (u64 k = 1; k < p; ++k) {
        xk = mulmod(xk, xr, p2);
        g = addmod(g, mulmod(xk, inv_square(k, p2), p2), p2);
    }
    const Residue gp(powmod(g, pp.q / p, p2), p2);
    const Residue rhs = quot - Residue(p, p2) * gp;
    return {Quantity::scalar(lhs.to_residue(2)), Quantity::scalar(rhs)};
}

inline Outcome harm(const PrimePower& pp, Extra) {
    const u64 p2 = pp.power(2);
    const auto lhs = scaled_harmonic_sum(pp, pp.a + 1, [](u64) { return u64{1}; }).to_residue(2);
    const Residue rhs = Residue::from_signed(-static_cast<i64>(pp.p * kronecker_delta3(pp.p)), p2);
    return {Quantity::scalar(lhs), Quantity::scalar(rhs)};
}

inline Outcome p41(const PrimePower& pp, Extra) {
    const u64 p = pp.p;
    const unsigned n = pp.a + 1;
    const u64 pn = pp.power(n);
    // F_{2j} = u_j(3, 1); term k uses j = q - k.
    std::vector<u64> f_even(pp.q);
    auto w = LucasWalker::u(LucasParams{3, 1}, pn);
    for (u64 j = 0; j < pp.q; ++j) {
        f_even[j] = w.value();
        w.step();
    }
    const auto lhs = scaled_harmonic_sum(pp, n, [&](u64 k) { return f_even[pp.q - k]; }).to_residue(2);

    const u64 p2 = pp.power(2);
    const u64 p3 = pp.power(3);
    const auto fib = LucasParams::fibonacci();
    const u64 diff = submod(lucas_u(fib, 2 * pp.q, p3).value(), lucas_u(fib, pp.q, p3).value(), p3);
    const Residue quot = quotient_by_p(diff, p, 2);
    const Residue lq = quotient_by_p(submod(lucas_v(fib, p, p3).value(), 1, p3), p, 2);
    const int eps = sign_index(pp, 5).eps;
    const Residue rhs =
        quot + Residue(p, p2) * invmod(10, p2) * Residue::from_signed(eps, p2) * lq * lq;
    return {Quantity::scalar(lhs), Quantity::scalar(rhs)};
}

inline Outcome l42(const PrimePower& pp, Extra) {
    const u64 p3 = pp.power(3);
    const auto fib = LucasParams::fibonacci();
    const int eps_lhs = jacobi(static_cast<i64>(pp.q % 5), 5);

    auto fw = LucasWalker::u(fib, p3);
    fw.advance_to(pp.q);
    const Residue fq(fw.value(), p3);
    fw.advance_to(2 * pp.q);
    const Residue f2q(fw.value(), p3);
    auto lw = LucasWalker::v(fib, p3);
    lw.advance_to(pp.p);
    const Residue lp1 = Residue(lw.value(), p3) - Residue(1, p3);
    const Residue lhs =
        Residue::from_signed(eps_lhs, p3) * (Residue(2, p3) * fq - f2q) + lp1 * lp1 * invmod(5, p3);

    const auto si = sign_index(pp, 5);
    const Residue rhs = Residue(1, p3) - Residue(2, p3) * lucas_u(fib, si.index, p3);
    return {Quantity::scalar(lhs), Quantity::scalar(rhs)};
}

inline Outcome e44(const PrimePower& pp, Extra) {
    const u64 p2 = pp.power(2);
    const auto fib = LucasParams::fibonacci();
    const int eps_lhs = jacobi(static_cast<i64>(pp.q % 5), 5);
    auto fw = LucasWalker::u(fib, p2);
    fw.advance_to(pp.q);
    const Residue lhs = Residue::from_signed(eps_lhs, p2) * Residue(fw.value(), p2) - Residue(1, p2);
    const Residue rhs = (lucas_v(fib, pp.q, p2) - Residue(1, p2)) * invmod(5, p2);
    return {Quantity::scalar(lhs), Quantity::scalar(rhs)};
}

inline Outcome e45(const PrimePower& pp, Extra) {
    const auto r = alternating_central_exact(pp.q);
    return {Quantity::integer(r.lhs), Quantity::integer(r.rhs)};
}

/// extra = {A, B}
inline Outcome vp(const PrimePower& pp, Extra extra) {
    const LucasParams ab{extra[0], extra[1]};
    const Residue lhs = lucas_v(ab, pp.q, pp.p);
    return {Quantity::scalar(lhs), Quantity::scalar(Residue::from_signed(ab.A, pp.p))};
}

inline Outcome up(const PrimePower& pp, Extra extra) {
    const LucasParams ab{extra[0], extra[1]};
    const Residue d = Residue::from_signed(ab.delta(), pp.p);
    const Residue lhs = d * lucas_u(ab, pp.q, pp.p);
    const Residue rhs = d * Residue::from_signed(jacobi(ab.delta(), pp.q), pp.p);
    return {Quantity::scalar(lhs), Quantity::scalar(rhs)};
}

inline Outcome udiv(const PrimePower& pp, Extra extra) {
    const LucasParams ab{extra[0], extra[1]};
    const auto si = sign_index(pp, ab.delta());
    return {Quantity::scalar(lucas_u(ab, si.index, pp.q)), Quantity::scalar(Residue(0, pp.q))};
}

/// The same index, reduced mod p only.
inline Outcome udivp(const PrimePower& pp, Extra extra) {
    const LucasParams ab{extra[0], extra[1]};
    const auto si = sign_index(pp, ab.delta());
    return {Quantity::scalar(lucas_u(ab, si.index, pp.p)), Quantity::scalar(Residue(0, pp.p))};
}

inline Outcome thm2(const PrimePower& pp, Extra) {
    const u64 p = pp.p;
    auto lw = LucasWalker::v(LucasParams::fibonacci(), p);
    u64 sum = 0;
    for (u64 k = 1; k < p; ++k) {
        lw.step();
        sum = addmod(sum, mulmod(lw.value(), inv_square(k, p), p), p);
    }
    return {Quantity::scalar(Residue(sum, p)), Quantity::scalar(Residue(0, p))};
}

inline Outcome thm3(const PrimePower& pp, Extra) {
    const u64 p3 = pp.power(3);
    const auto lhs = weighted_central_sum(pp.p, 3, 0, pp.q - 1, -1, 1).to_residue(3);
    const auto si = sign_index(pp, 5);
    const Residue f = lucas_u(LucasParams::fibonacci(), si.index, p3);
    const Residue rhs = Residue::from_signed(si.eps, p3) * (Residue(1, p3) - Residue(2, p3) * f);
    return {Quantity::scalar(lhs), Quantity::scalar(rhs)};
}

} // namespace congru::eval
