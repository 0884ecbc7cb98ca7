#pragma once

/// @file exact.hpp
/// Arbitrary-precision checks: the Gould reciprocal-binomial identity and
/// the alternating central-binomial / Fibonacci identity, evaluated exactly.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "congru/errors.hpp"
#include "congru/lucas.hpp"
#include "congru/modmath.hpp"

namespace congru {

using big_int = boost::multiprecision::cpp_int;
using big_rational = boost::multiprecision::cpp_rational;

inline big_rational rational_pow(const big_rational& x, unsigned n) {
    big_rational r = 1;
    for (unsigned i = 0; i < n; ++i) r *= x;
    return r;
}

struct GouldOutcome {
    big_rational lhs;
    big_rational rhs;
    bool equal;
};

/// sum_{k=0}^{n} x^k / C(n,k)  ==  (n+1) (x/(1+x))^{n+1} sum_{k=1}^{n+1} (1+x^k)/(k(1+x)) ((1+x)/x)^k
inline GouldOutcome gould_identity_exact(unsigned n, const big_rational& x) {
    if (x == 0 || x == -1) throw invalid_x("x must avoid 0 and -1");
    if (n == 0) throw ineligible_parameters("n must be positive");

    big_rational lhs = 0;
    big_int binom = 1;
    big_rational xk = 1;
    for (unsigned k = 0; k <= n; ++k) {
        lhs += xk / big_rational(binom);
        binom = binom * (n - k) / (k + 1);
        xk *= x;
    }

    const big_rational one_plus = 1 + x;
    const big_rational ratio = one_plus / x;
    big_rational inner = 0;
    big_rational xpow = 1;
    big_rational rpow = 1;
    for (unsigned k = 1; k <= n + 1; ++k) {
        xpow *= x;
        rpow *= ratio;
        inner += (1 + xpow) / (big_rational(k) * one_plus) * rpow;
    }
    const big_rational rhs = big_rational(n + 1) * rational_pow(x / one_plus, n + 1) * inner;
    return {lhs, rhs, lhs == rhs};
}

/// Parses "a" or "a/b" into an exact rational.
inline big_rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return big_rational(big_int(text));
    const big_int den(text.substr(slash + 1));
    if (den == 0) throw invalid_x("zero denominator in " + text);
    return big_rational(big_int(text.substr(0, slash)), den);
}

struct AlternatingOutcome {
    big_int lhs;
    big_int rhs;
};

/// Exact values of sum_{k<q} (-1)^k C(2k,k) and sum_{k<q} (-1)^k C(2q,k) F_{2(q-k)}.
inline AlternatingOutcome alternating_central_exact(u64 q) {
    big_int lhs = 0;
    big_int central = 1;
    for (u64 k = 0; k < q; ++k) {
        if (k % 2 == 0) {
            lhs += central;
        } else {
            lhs -= central;
        }
        central = central * (2 * (2 * k + 1)) / (k + 1);
    }

    // F_{2j} for j = 0..q, from F_{2j+2} = 3 F_{2j} - F_{2j-2}.
    std::vector<big_int> f_even(q + 1);
    f_even[0] = 0;
    if (q >= 1) f_even[1] = 1;
    for (u64 j = 2; j <= q; ++j) f_even[j] = 3 * f_even[j - 1] - f_even[j - 2];

    big_int rhs = 0;
    big_int binom = 1; // C(2q, k)
    for (u64 k = 0; k < q; ++k) {
        const big_int term = binom * f_even[q - k];
        if (k % 2 == 0) {
            rhs += term;
        } else {
            rhs -= term;
        }
        binom = binom * (2 * q - k) / (k + 1);
    }
    return {lhs, rhs};
}

/// The same two sums modulo a prime M > 2q.
inline std::pair<u64, u64> alternating_central_mod(u64 q, u64 prime) {
    if (!is_prime(prime) || prime <= 2 * q) throw error("modulus must be a prime exceeding 2q");
    const u64 m = prime;
    u64 lhs = 0;
    u64 central = 1;
    for (u64 k = 0; k < q; ++k) {
        lhs = (k % 2 == 0) ? addmod(lhs, central, m) : submod(lhs, central, m);
        central = mulmod(mulmod(central, 2 * (2 * k + 1) % m, m), invmod(static_cast<i64>(k + 1), m).value(), m);
    }
    u64 rhs = 0;
    u64 binom = 1;
    for (u64 k = 0; k < q; ++k) {
        const u64 f = lucas_u(LucasParams::fibonacci(), 2 * (q - k), m).value();
        const u64 term = mulmod(binom, f, m);
        rhs = (k % 2 == 0) ? addmod(rhs, term, m) : submod(rhs, term, m);
        binom = mulmod(mulmod(binom, (2 * q - k) % m, m), invmod(static_cast<i64>(k + 1), m).value(), m);
    }
    return {lhs, rhs};
}

/// Reduces a signed big integer into [0, m).
inline u64 big_mod(const big_int& x, u64 m) {
    big_int r = x % m;
    if (r < 0) r += m;
    return r.convert_to<u64>();
}

} // namespace congru
