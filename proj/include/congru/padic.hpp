#pragma once

/// @file padic.hpp
/// Fixed-precision p-adic rationals p^e * u.
///
/// Every finite value carries its relative precision: the unit u is known
/// modulo p^prec with 1 <= prec <= N. Multiplication, inversion and
/// negation preserve relative precision; addition may shed digits when
/// leading digits cancel. A sum whose known digits cancel completely becomes
/// an *indeterminate* value "0 + O(p^e)": it still reduces to 0 modulo any
/// p^k with k <= e, but it has no unit. Exact zero is a separate state.

#include <algorithm>
#include <compare>
#include <limits>
#include <ostream>
#include <string>

#include "congru/errors.hpp"
#include "congru/modmath.hpp"

namespace congru {

class PadicRational {
public:
    enum class Kind { zero, finite, indeterminate };

    /// Exact zero at (p, N).
    static PadicRational zero(u64 p, unsigned n) { return PadicRational(p, n, Kind::zero, 0, 0, 0); }

    /// z = p^e * u with p not dividing u, unit known to full precision N.
    static PadicRational from_integer(i64 z, u64 p, unsigned n) {
        if (z == 0) return zero(p, n);
        const u64 pn = modulus_for(p, n);
        u64 mag = z < 0 ? static_cast<u64>(-(z + 1)) + 1 : static_cast<u64>(z);
        int e = 0;
        while (mag % p == 0) {
            mag /= p;
            ++e;
        }
        u64 u = mag % pn;
        if (z < 0) u = u == 0 ? 0 : pn - u;
        return PadicRational(p, n, Kind::finite, e, u, n);
    }

    /// A p-adic integer known only modulo p^abs_precision (abs_precision <= N),
    /// given by a representative `value`.
    static PadicRational from_residue(u64 value, unsigned abs_precision, u64 p, unsigned n) {
        if (abs_precision == 0 || abs_precision > n) {
            throw insufficient_precision("absolute precision " + std::to_string(abs_precision) +
                                         " outside [1, " + std::to_string(n) + "]");
        }
        const u64 mod = ipow(p, abs_precision);
        value %= mod;
        if (value == 0) return PadicRational(p, n, Kind::indeterminate, static_cast<int>(abs_precision), 0, 0);
        const unsigned e = congru::valuation(value, p);
        const u64 u = value / ipow(p, e);
        return PadicRational(p, n, Kind::finite, static_cast<int>(e), u, abs_precision - e);
    }

    static PadicRational from_residue(const Residue& r, u64 p, unsigned n) {
        const unsigned k = congru::valuation(r.modulus(), p);
        if (ipow(p, k) != r.modulus()) throw mixed_rings("residue modulus is not a power of p");
        return from_residue(r.value(), k, p, n);
    }

    /// p^e exactly.
    static PadicRational p_power(int e, u64 p, unsigned n) {
        return PadicRational(p, n, Kind::finite, e, 1, n);
    }

    u64 prime() const noexcept { return p_; }
    unsigned precision() const noexcept { return n_; }
    Kind kind() const noexcept { return kind_; }
    bool is_zero() const noexcept { return kind_ == Kind::zero; }
    bool is_indeterminate() const noexcept { return kind_ == Kind::indeterminate; }

    /// Valuation; for an indeterminate value this is the lower bound e of O(p^e).
    int valuation() const {
        if (kind_ == Kind::zero) throw error("valuation of exact zero is infinite");
        return e_;
    }

    u64 unit() const {
        if (kind_ == Kind::indeterminate) {
            throw precision_exhausted("unit indeterminate: value is 0 + O(" + std::to_string(p_) + "^" +
                                      std::to_string(e_) + ")");
        }
        if (kind_ == Kind::zero) throw error("exact zero has no unit");
        return u_;
    }

    /// Number of unit digits known (finite values only).
    unsigned relative_precision() const noexcept { return kind_ == Kind::finite ? prec_ : 0; }

    /// Value is determined modulo p^absolute_precision(); INT_MAX for exact zero.
    int absolute_precision() const noexcept {
        switch (kind_) {
        case Kind::zero: return std::numeric_limits<int>::max();
        case Kind::finite: return e_ + static_cast<int>(prec_);
        case Kind::indeterminate: return e_;
        }
        return 0;
    }

    PadicRational operator-() const {
        if (kind_ != Kind::finite) return *this;
        const u64 mod = ipow(p_, prec_);
        return PadicRational(p_, n_, kind_, e_, u_ == 0 ? 0 : mod - u_, prec_);
    }

    PadicRational operator+(const PadicRational& y) const {
        check(y);
        if (kind_ == Kind::zero) return y;
        if (y.kind_ == Kind::zero) return *this;

        const int abs = std::min(absolute_precision(), y.absolute_precision());
        const int emin = std::min(e_, y.e_);
        // abs - emin <= N: the lower-valuation operand bounds both.
        const auto width = static_cast<unsigned>(abs - emin);
        if (width == 0) return PadicRational(p_, n_, Kind::indeterminate, abs, 0, 0);
        const u64 mod = ipow(p_, width);
        const u64 s = addmod(shifted(emin, width, mod), y.shifted(emin, width, mod), mod);
        if (s == 0) return PadicRational(p_, n_, Kind::indeterminate, abs, 0, 0);
        const unsigned v = congru::valuation(s, p_);
        return PadicRational(p_, n_, Kind::finite, emin + static_cast<int>(v), s / ipow(p_, v), width - v);
    }

    PadicRational operator-(const PadicRational& y) const { return *this + (-y); }

    PadicRational operator*(const PadicRational& y) const {
        check(y);
        if (kind_ == Kind::zero || y.kind_ == Kind::zero) return zero(p_, n_);
        if (kind_ == Kind::indeterminate || y.kind_ == Kind::indeterminate) {
            // O(p^e1) * p^e2 u = O(p^(e1+e2)), likewise for two indeterminates.
            return PadicRational(p_, n_, Kind::indeterminate, e_ + y.e_, 0, 0);
        }
        const unsigned prec = std::min(prec_, y.prec_);
        const u64 mod = ipow(p_, prec);
        return PadicRational(p_, n_, Kind::finite, e_ + y.e_, mulmod(u_ % mod, y.u_ % mod, mod), prec);
    }

    PadicRational inv() const {
        if (kind_ == Kind::zero) throw division_by_zero("inverse of exact zero");
        if (kind_ == Kind::indeterminate) throw precision_exhausted("inverse of an indeterminate value");
        const u64 mod = ipow(p_, prec_);
        return PadicRational(p_, n_, Kind::finite, -e_, invmod(static_cast<i64>(u_), mod).value(), prec_);
    }

    PadicRational operator/(const PadicRational& y) const { return *this * y.inv(); }

    PadicRational& operator+=(const PadicRational& y) { return *this = *this + y; }
    PadicRational& operator-=(const PadicRational& y) { return *this = *this - y; }
    PadicRational& operator*=(const PadicRational& y) { return *this = *this * y; }
    PadicRational& operator/=(const PadicRational& y) { return *this = *this / y; }

    /// Multiplies by p^k without touching the unit.
    PadicRational shift(int k) const {
        if (kind_ == Kind::zero) return *this;
        PadicRational r = *this;
        r.e_ += k;
        return r;
    }

    PadicRational pow(u64 exponent) const {
        PadicRational result = from_integer(1, p_, n_);
        PadicRational base = *this;
        while (exponent != 0) {
            if (exponent & 1U) result *= base;
            exponent >>= 1U;
            if (exponent != 0) base *= base;
        }
        return result;
    }

    /// p^e * u mod p^k.
    Residue to_residue(unsigned k) const {
        const u64 mod = modulus_for(p_, k);
        if (kind_ == Kind::zero) return {0, mod};
        if (kind_ == Kind::finite && e_ < 0) {
            throw negative_valuation("value has valuation " + std::to_string(e_) + ", not a p-adic integer");
        }
        if (absolute_precision() < static_cast<int>(k)) {
            throw insufficient_precision("value known mod " + std::to_string(p_) + "^" +
                                         std::to_string(absolute_precision()) + ", asked mod " +
                                         std::to_string(p_) + "^" + std::to_string(k));
        }
        if (kind_ == Kind::indeterminate || e_ >= static_cast<int>(k)) return {0, mod};
        return {mulmod(ipow(p_, static_cast<unsigned>(e_)), u_, mod), mod};
    }

    /// Structural equality: same state, valuation, known digits.
    friend bool operator==(const PadicRational& x, const PadicRational& y) {
        if (x.p_ != y.p_ || x.n_ != y.n_ || x.kind_ != y.kind_) return false;
        switch (x.kind_) {
        case Kind::zero: return true;
        case Kind::indeterminate: return x.e_ == y.e_;
        case Kind::finite: return x.e_ == y.e_ && x.prec_ == y.prec_ && x.u_ == y.u_;
        }
        return false;
    }

    friend std::ostream& operator<<(std::ostream& os, const PadicRational& x) {
        switch (x.kind_) {
        case Kind::zero: return os << "0";
        case Kind::indeterminate: return os << "O(" << x.p_ << "^" << x.e_ << ")";
        case Kind::finite:
            return os << x.p_ << "^" << x.e_ << "*" << x.u_ << " + O(" << x.p_ << "^"
                      << x.e_ + static_cast<int>(x.prec_) << ")";
        }
        return os;
    }

private:
    PadicRational(u64 p, unsigned n, Kind kind, int e, u64 u, unsigned prec)
        : p_(p), n_(n), kind_(kind), e_(e), u_(u), prec_(prec) {}

    static u64 modulus_for(u64 p, unsigned n) {
        const auto m = checked_pow(p, n);
        if (!m) throw precision_overflow(std::to_string(p) + "^" + std::to_string(n) + " exceeds 63 bits");
        return *m;
    }

    void check(const PadicRational& y) const {
        if (p_ != y.p_ || n_ != y.n_) {
            throw mixed_rings("p-adic operands disagree on prime or precision");
        }
    }

    /// Digits of this value above p^emin, reduced mod p^width.
    u64 shifted(int emin, unsigned width, u64 mod) const {
        if (kind_ != Kind::finite) return 0;
        const auto d = static_cast<unsigned>(e_ - emin);
        if (d >= width) return 0;
        return mulmod(ipow(p_, d), u_ % mod, mod);
    }

    u64 p_;
    unsigned n_;
    Kind kind_;
    int e_;
    u64 u_;
    unsigned prec_;
};

} // namespace congru
