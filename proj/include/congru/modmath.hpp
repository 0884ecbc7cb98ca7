#pragma once

/// @file modmath.hpp
/// Overflow-safe residue arithmetic for moduli below 2^63: modular
/// multiplication, powers and inverses, the Jacobi symbol, deterministic
/// 64-bit primality, a segmented prime stream, Legendre's factorial
/// valuation and Lucas-theorem binomials.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <iterator>
#include <optional>
#include <ostream>
#include <vector>

#include "congru/errors.hpp"

namespace congru {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

/// Every modulus handled by the residue layer is strictly below this bound.
inline constexpr u64 modulus_limit = u64{1} << 63;

constexpr u64 mulmod(u64 a, u64 b, u64 m) noexcept {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

constexpr u64 addmod(u64 a, u64 b, u64 m) noexcept {
    // a, b < m < 2^63, so the sum cannot wrap.
    const u64 s = a + b;
    return s >= m ? s - m : s;
}

constexpr u64 submod(u64 a, u64 b, u64 m) noexcept { return a >= b ? a - b : a + (m - b); }

/// Reduces a signed integer into [0, m).
constexpr u64 reduce(i64 x, u64 m) noexcept {
    if (x >= 0) return static_cast<u64>(x) % m;
    // -(x+1) avoids overflow on INT64_MIN.
    const u64 r = (static_cast<u64>(-(x + 1)) % m);
    return m - 1 - r;
}

constexpr u64 powmod(u64 base, u64 exponent, u64 m) noexcept {
    u64 result = 1 % m;
    base %= m;
    while (exponent != 0) {
        if (exponent & 1U) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exponent >>= 1U;
    }
    return result;
}

constexpr u64 gcd(u64 a, u64 b) noexcept {
    while (b != 0) {
        const u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

/// Exact integer power; the caller guarantees no overflow.
constexpr u64 ipow(u64 base, unsigned exponent) noexcept {
    u64 r = 1;
    while (exponent-- > 0) r *= base;
    return r;
}

/// base^exponent if it stays below `limit`, otherwise nullopt.
constexpr std::optional<u64> checked_pow(u64 base, unsigned exponent, u64 limit = modulus_limit) noexcept {
    u64 r = 1;
    for (unsigned i = 0; i < exponent; ++i) {
        if (base != 0 && r > (limit - 1) / base) return std::nullopt;
        r *= base;
    }
    if (r >= limit) return std::nullopt;
    return r;
}

/// Exponent of p in x (x != 0).
constexpr unsigned valuation(u64 x, u64 p) noexcept {
    unsigned v = 0;
    while (x != 0 && x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

/// A fully reduced residue together with its modulus.
class Residue {
public:
    Residue() = default;
    Residue(u64 value, u64 modulus) : value_(value % modulus), modulus_(modulus) {}

    static Residue from_signed(i64 value, u64 modulus) { return {reduce(value, modulus), modulus}; }

    u64 value() const noexcept { return value_; }
    u64 modulus() const noexcept { return modulus_; }

    /// Representative in (-m/2, m/2].
    i64 centered() const noexcept {
        return value_ > modulus_ / 2 ? -static_cast<i64>(modulus_ - value_) : static_cast<i64>(value_);
    }

    Residue operator+(const Residue& o) const { return {addmod(value_, check(o).value_, modulus_), modulus_, raw_tag{}}; }
    Residue operator-(const Residue& o) const { return {submod(value_, check(o).value_, modulus_), modulus_, raw_tag{}}; }
    Residue operator*(const Residue& o) const { return {mulmod(value_, check(o).value_, modulus_), modulus_, raw_tag{}}; }
    Residue operator-() const { return {value_ == 0 ? 0 : modulus_ - value_, modulus_, raw_tag{}}; }
    Residue& operator+=(const Residue& o) { return *this = *this + o; }
    Residue& operator-=(const Residue& o) { return *this = *this - o; }
    Residue& operator*=(const Residue& o) { return *this = *this * o; }

    Residue pow(u64 e) const { return {powmod(value_, e, modulus_), modulus_, raw_tag{}}; }

    friend bool operator==(const Residue&, const Residue&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Residue& r) {
        return os << r.value_ << " (mod " << r.modulus_ << ')';
    }

private:
    struct raw_tag {};
    Residue(u64 value, u64 modulus, raw_tag) : value_(value), modulus_(modulus) {}

    const Residue& check(const Residue& o) const {
        if (o.modulus_ != modulus_) {
            throw mixed_rings("residues with moduli " + std::to_string(modulus_) + " and " +
                              std::to_string(o.modulus_));
        }
        return o;
    }

    u64 value_ = 0;
    u64 modulus_ = 1;
};

inline Residue powmod(i64 base, u64 exponent, u64 m) { return {powmod(reduce(base, m), exponent, m), m}; }

/// Inverse of x modulo m by the extended Euclidean algorithm.
inline Residue invmod(i64 x, u64 m) {
    const u64 a = reduce(x, m);
    // Invariant: old_s * a == old_r (mod m), tracked as signed 128-bit.
    __int128 old_r = a, r = m;
    __int128 old_s = 1, s = 0;
    while (r != 0) {
        const __int128 q = old_r / r;
        const __int128 tr = old_r - q * r;
        old_r = r;
        r = tr;
        const __int128 ts = old_s - q * s;
        old_s = s;
        s = ts;
    }
    if (old_r != 1) throw not_invertible(a, m, static_cast<u64>(old_r));
    __int128 v = old_s % static_cast<__int128>(m);
    if (v < 0) v += m;
    return {static_cast<u64>(v), m};
}

/// Jacobi symbol (a/n) for odd n >= 1, via the binary algorithm.
constexpr int jacobi(i64 a, u64 n) {
    if ((n & 1U) == 0) throw even_modulus(n);
    u64 x = reduce(a, n);
    u64 y = n;
    int t = 1;
    while (x != 0) {
        const int tz = std::countr_zero(x);
        x >>= tz;
        // (2/y) = -1 iff y = 3, 5 (mod 8)
        if ((tz & 1) != 0 && ((y & 7U) == 3 || (y & 7U) == 5)) t = -t;
        if ((x & 3U) == 3 && (y & 3U) == 3) t = -t;
        const u64 r = y % x;
        y = x;
        x = r;
    }
    return y == 1 ? t : 0;
}

/// Exact primality for every 64-bit input (deterministic Miller-Rabin).
constexpr bool is_prime(u64 n) noexcept {
    if (n < 2) return false;
    constexpr std::array<u64, 12> small{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (const u64 q : small) {
        if (n % q == 0) return n == q;
    }
    if (n < 41 * 41) return true;

    u64 d = n - 1;
    const int s = std::countr_zero(d);
    d >>= s;
    // The first twelve primes are a complete witness set below 3.3 * 10^24.
    for (const u64 w : small) {
        u64 x = powmod(w, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline u64 isqrt(u64 n) noexcept {
    auto r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

/// A prime power q = p^a with its cached residue class mod 4.
struct PrimePower {
    u64 p = 3;
    unsigned a = 1;
    u64 q = 3;
    unsigned q_mod4 = 3;

    /// Validates primality of p and that p^a fits below 2^63.
    static PrimePower make(u64 p, unsigned a, bool allow_two = false) {
        if (!is_prime(p)) throw ineligible_parameters(std::to_string(p) + " is not prime");
        if (p == 2 && !allow_two) throw ineligible_parameters("p must be odd");
        if (a == 0) throw ineligible_parameters("exponent must be positive");
        const auto q = checked_pow(p, a);
        if (!q) throw precision_overflow(std::to_string(p) + "^" + std::to_string(a) + " exceeds 63 bits");
        return PrimePower{p, a, *q, static_cast<unsigned>(*q % 4)};
    }

    /// p^k, throwing precision_overflow if it does not fit.
    u64 power(unsigned k) const {
        const auto r = checked_pow(p, k);
        if (!r) throw precision_overflow(std::to_string(p) + "^" + std::to_string(k) + " exceeds 63 bits");
        return *r;
    }

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

inline constexpr std::size_t default_segment_size = std::size_t{1} << 16;

/// Primes up to `limit` by a plain sieve; used for sieving bases.
inline std::vector<u64> small_primes_upto(u64 limit) {
    std::vector<u64> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (u64 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

/// Ascending stream of the primes in [lo, hi], sieved one segment at a time.
class PrimeStream {
public:
    PrimeStream(u64 lo, u64 hi, std::size_t segment = default_segment_size)
        : lo_(std::max<u64>(lo, 2)), hi_(hi), segment_(std::max<std::size_t>(segment, 64)) {
        if (lo_ <= hi_) base_ = small_primes_upto(isqrt(hi_));
        next_start_ = lo_;
    }

    std::optional<u64> next() {
        for (;;) {
            while (pos_ < sieve_.size()) {
                const std::size_t i = pos_++;
                if (sieve_[i] != 0) return seg_lo_ + i;
            }
            if (!fill()) return std::nullopt;
        }
    }

    class iterator {
    public:
        using value_type = u64;
        using difference_type = std::ptrdiff_t;

        iterator() = default;
        explicit iterator(PrimeStream* s) : s_(s) { ++*this; }

        u64 operator*() const { return cur_; }
        iterator& operator++() {
            const auto v = s_->next();
            if (v) {
                cur_ = *v;
            } else {
                s_ = nullptr;
            }
            return *this;
        }
        void operator++(int) { ++*this; }
        bool operator==(std::default_sentinel_t) const { return s_ == nullptr; }

    private:
        PrimeStream* s_ = nullptr;
        u64 cur_ = 0;
    };

    iterator begin() { return iterator(this); }
    std::default_sentinel_t end() const { return {}; }

private:
    bool fill() {
        if (done_ || next_start_ > hi_) return false;
        seg_lo_ = next_start_;
        const u64 span = std::min<u64>(segment_, hi_ - seg_lo_ + 1);
        const u64 seg_hi = seg_lo_ + span - 1;
        sieve_.assign(span, 1);
        for (const u64 q : base_) {
            if (q * q > seg_hi) break;
            u64 start = std::max(q * q, (seg_lo_ + q - 1) / q * q);
            for (u64 j = start; j <= seg_hi; j += q) sieve_[j - seg_lo_] = 0;
        }
        pos_ = 0;
        if (seg_hi == hi_) {
            done_ = true;
        } else {
            next_start_ = seg_hi + 1;
        }
        return true;
    }

    u64 lo_, hi_;
    std::size_t segment_;
    std::vector<u64> base_;
    std::vector<unsigned char> sieve_;
    std::size_t pos_ = 0;
    u64 seg_lo_ = 0;
    u64 next_start_ = 0;
    bool done_ = false;
};

inline PrimeStream primes_in(u64 lo, u64 hi, std::size_t segment = default_segment_size) {
    return PrimeStream(lo, hi, segment);
}

inline std::vector<u64> collect_primes(u64 lo, u64 hi, std::size_t segment = default_segment_size) {
    std::vector<u64> out;
    for (const u64 p : primes_in(lo, hi, segment)) out.push_back(p);
    return out;
}

/// nu_p(n!) by Legendre's formula.
constexpr u64 nu_factorial(u64 n, u64 p) noexcept {
    u64 v = 0;
    while (n != 0) {
        n /= p;
        v += n;
    }
    return v;
}

/// C(n, k) mod p from the base-p digits of n and k.
inline Residue binom_mod_lucas(u64 n, u64 k, u64 p) {
    u64 acc = 1 % p;
    while (k != 0 || n != 0) {
        const u64 nd = n % p;
        const u64 kd = k % p;
        if (kd > nd) return {0, p};
        // C(nd, kd) mod p; all factors are below p, hence units.
        u64 num = 1 % p, den = 1 % p;
        for (u64 j = 0; j < kd; ++j) {
            num = mulmod(num, nd - j, p);
            den = mulmod(den, j + 1, p);
        }
        acc = mulmod(acc, mulmod(num, invmod(static_cast<i64>(den), p).value(), p), p);
        n /= p;
        k /= p;
    }
    return {acc, p};
}

/// Plain modular arithmetic context; values are ordinary residues.
class PlainModulus {
public:
    explicit PlainModulus(u64 m) : m_(m) {}

    u64 modulus() const noexcept { return m_; }
    u64 to(u64 x) const noexcept { return x % m_; }
    u64 from(u64 x) const noexcept { return x; }
    u64 one() const noexcept { return 1 % m_; }
    u64 mul(u64 a, u64 b) const noexcept { return mulmod(a, b, m_); }
    u64 add(u64 a, u64 b) const noexcept { return addmod(a, b, m_); }
    u64 sub(u64 a, u64 b) const noexcept { return submod(a, b, m_); }

private:
    u64 m_;
};

/// Montgomery arithmetic for an odd modulus below 2^63; values live in
/// Montgomery form x * 2^64 mod m.
class Montgomery64 {
public:
    explicit Montgomery64(u64 m) : m_(m) {
        if ((m & 1U) == 0 || m >= modulus_limit) throw error("montgomery modulus must be odd and < 2^63");
        // Newton iteration for m^{-1} mod 2^64.
        u64 inv = m;
        for (int i = 0; i < 5; ++i) inv *= 2 - m * inv;
        neg_inv_ = ~inv + 1;
        r2_ = static_cast<u64>((static_cast<u128>(1) << 64) % m);
        r2_ = mulmod(r2_, r2_, m);
    }

    u64 modulus() const noexcept { return m_; }
    u64 to(u64 x) const noexcept { return mul(x % m_, r2_); }
    u64 from(u64 x) const noexcept { return redc(x); }
    u64 one() const noexcept { return to(1); }
    u64 add(u64 a, u64 b) const noexcept { return addmod(a, b, m_); }
    u64 sub(u64 a, u64 b) const noexcept { return submod(a, b, m_); }
    u64 mul(u64 a, u64 b) const noexcept { return redc(static_cast<u128>(a) * b); }

private:
    u64 redc(u128 t) const noexcept {
        const u64 k = static_cast<u64>(t) * neg_inv_;
        const u128 s = t + static_cast<u128>(k) * m_;
        // t < m^2 < 2^126, so s fits and s >> 64 < 2m.
        u64 r = static_cast<u64>(s >> 64);
        return r >= m_ ? r - m_ : r;
    }

    u64 m_;
    u64 neg_inv_ = 0;
    u64 r2_ = 0;
};

template <class C>
concept ModArith = requires(const C c, u64 x) {
    { c.modulus() } -> std::convertible_to<u64>;
    { c.to(x) } -> std::convertible_to<u64>;
    { c.from(x) } -> std::convertible_to<u64>;
    { c.one() } -> std::convertible_to<u64>;
    { c.mul(x, x) } -> std::convertible_to<u64>;
    { c.add(x, x) } -> std::convertible_to<u64>;
    { c.sub(x, x) } -> std::convertible_to<u64>;
};

} // namespace congru
