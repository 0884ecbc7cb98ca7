#pragma once

/// @file quadring.hpp
/// Arithmetic in Z[w]/(w^2 - A w + B) modulo m, on the basis (1, w).
/// The roots of x^2 - A x + B are alpha = w and beta = A - w.

#include <ostream>
#include <utility>

#include "congru/errors.hpp"
#include "congru/lucas.hpp"
#include "congru/modmath.hpp"

namespace congru {

class QuadElem {
public:
    QuadElem(u64 a, u64 b, const LucasParams& params, u64 m)
        : a_(a % m), b_(b % m), params_(params), m_(m), pa_(reduce(params.A, m)), pb_(reduce(params.B, m)) {}

    static QuadElem scalar(i64 c, const LucasParams& params, u64 m) { return {reduce(c, m), 0, params, m}; }
    static QuadElem scalar(const Residue& c, const LucasParams& params) {
        return {c.value(), 0, params, c.modulus()};
    }
    static QuadElem one(const LucasParams& params, u64 m) { return {1, 0, params, m}; }
    static QuadElem omega(const LucasParams& params, u64 m) { return {0, 1, params, m}; }

    u64 a() const noexcept { return a_; }
    u64 b() const noexcept { return b_; }
    u64 modulus() const noexcept { return m_; }
    const LucasParams& params() const noexcept { return params_; }

    QuadElem operator+(const QuadElem& y) const {
        check(y);
        return with(addmod(a_, y.a_, m_), addmod(b_, y.b_, m_));
    }
    QuadElem operator-(const QuadElem& y) const {
        check(y);
        return with(submod(a_, y.a_, m_), submod(b_, y.b_, m_));
    }
    QuadElem operator-() const { return with(submod(0, a_, m_), submod(0, b_, m_)); }

    /// (a1 + b1 w)(a2 + b2 w) = (a1 a2 - B b1 b2) + (a1 b2 + a2 b1 + A b1 b2) w
    QuadElem operator*(const QuadElem& y) const {
        check(y);
        const u64 bb = mulmod(b_, y.b_, m_);
        const u64 c0 = submod(mulmod(a_, y.a_, m_), mulmod(pb_, bb, m_), m_);
        const u64 c1 = addmod(addmod(mulmod(a_, y.b_, m_), mulmod(y.a_, b_, m_), m_), mulmod(pa_, bb, m_), m_);
        return with(c0, c1);
    }

    QuadElem operator*(const Residue& c) const {
        if (c.modulus() != m_) throw mixed_rings("scalar modulus differs from ring modulus");
        return with(mulmod(a_, c.value(), m_), mulmod(b_, c.value(), m_));
    }

    QuadElem& operator+=(const QuadElem& y) { return *this = *this + y; }
    QuadElem& operator-=(const QuadElem& y) { return *this = *this - y; }
    QuadElem& operator*=(const QuadElem& y) { return *this = *this * y; }
    QuadElem& operator*=(const Residue& c) { return *this = *this * c; }

    QuadElem pow(u64 n) const {
        QuadElem result = one(params_, m_);
        QuadElem base = *this;
        while (n != 0) {
            if (n & 1U) result *= base;
            n >>= 1U;
            if (n != 0) base *= base;
        }
        return result;
    }

    /// (a + b w) -> (a + b A) - b w; swaps alpha and beta.
    QuadElem conj() const { return with(addmod(a_, mulmod(b_, pa_, m_), m_), submod(0, b_, m_)); }

    /// x * conj(x) = a^2 + A a b + B b^2.
    Residue norm() const {
        const u64 n = addmod(addmod(mulmod(a_, a_, m_), mulmod(pa_, mulmod(a_, b_, m_), m_), m_),
                             mulmod(pb_, mulmod(b_, b_, m_), m_), m_);
        return {n, m_};
    }

    /// x + conj(x) = 2a + A b.
    Residue trace() const { return {addmod(addmod(a_, a_, m_), mulmod(pa_, b_, m_), m_), m_}; }

    bool is_scalar() const noexcept { return b_ == 0; }

    friend bool operator==(const QuadElem& x, const QuadElem& y) {
        return x.params_ == y.params_ && x.m_ == y.m_ && x.a_ == y.a_ && x.b_ == y.b_;
    }

    friend std::ostream& operator<<(std::ostream& os, const QuadElem& x) {
        return os << x.a_ << "+" << x.b_ << "*w (mod " << x.m_ << ")";
    }

private:
    QuadElem with(u64 a, u64 b) const {
        QuadElem r = *this;
        r.a_ = a;
        r.b_ = b;
        return r;
    }

    void check(const QuadElem& y) const {
        if (!(params_ == y.params_) || m_ != y.m_) throw mixed_rings("quadratic ring elements from different rings");
    }

    u64 a_, b_;
    LucasParams params_;
    u64 m_;
    u64 pa_, pb_;
};

inline QuadElem qpow(const QuadElem& x, u64 n) { return x.pow(n); }

/// alpha = w, beta = A - w.
inline std::pair<QuadElem, QuadElem> roots(const LucasParams& params, u64 m) {
    const QuadElem alpha = QuadElem::omega(params, m);
    return {alpha, QuadElem::scalar(params.A, params, m) - alpha};
}

} // namespace congru
