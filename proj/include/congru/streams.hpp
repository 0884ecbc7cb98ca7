#pragma once

/// @file streams.hpp
/// Binomial coefficients as p-adic values, generated term by term so that
/// divisions by multiples of p stay exact.

#include "congru/modmath.hpp"
#include "congru/padic.hpp"

namespace congru {

/// Yields C(2k,k) for k = 0, 1, 2, ... via C(2k+2,k+1) = C(2k,k) * 2(2k+1)/(k+1).
class CentralBinomialStream {
public:
    CentralBinomialStream(u64 p, unsigned n)
        : p_(p), n_(n), value_(PadicRational::from_integer(1, p, n)) {}

    u64 index() const noexcept { return k_; }
    const PadicRational& value() const noexcept { return value_; }

    void advance() {
        const auto num = PadicRational::from_integer(static_cast<i64>(2 * (2 * k_ + 1)), p_, n_);
        const auto den = PadicRational::from_integer(static_cast<i64>(k_ + 1), p_, n_);
        value_ = value_ * num / den;
        ++k_;
    }

private:
    u64 p_;
    unsigned n_;
    u64 k_ = 0;
    PadicRational value_;
};

/// The first limit+1 central binomials C(0,0), C(2,1), ..., C(2 limit, limit).
inline std::vector<PadicRational> central_binomial_stream(u64 limit, u64 p, unsigned n) {
    std::vector<PadicRational> out;
    out.reserve(limit + 1);
    CentralBinomialStream s(p, n);
    out.push_back(s.value());
    for (u64 k = 0; k < limit; ++k) {
        s.advance();
        out.push_back(s.value());
    }
    return out;
}

/// Yields C(top,k) for k = 0..top.
class BinomialRowStream {
public:
    BinomialRowStream(u64 top, u64 p, unsigned n)
        : top_(top), p_(p), n_(n), value_(PadicRational::from_integer(1, p, n)) {}

    u64 index() const noexcept { return k_; }
    const PadicRational& value() const noexcept { return value_; }

    void advance() {
        const auto num = PadicRational::from_integer(static_cast<i64>(top_ - k_), p_, n_);
        const auto den = PadicRational::from_integer(static_cast<i64>(k_ + 1), p_, n_);
        value_ = value_ * num / den;
        ++k_;
    }

private:
    u64 top_;
    u64 p_;
    unsigned n_;
    u64 k_ = 0;
    PadicRational value_;
};

/// n! as a p-adic value.
inline PadicRational padic_factorial(u64 n, u64 p, unsigned prec) {
    auto acc = PadicRational::from_integer(1, p, prec);
    for (u64 i = 2; i <= n; ++i) acc *= PadicRational::from_integer(static_cast<i64>(i), p, prec);
    return acc;
}

} // namespace congru
