#include <gtest/gtest.h>

#include <random>

#include "congru/lucas.hpp"
#include "congru/quadring.hpp"

using namespace congru;

namespace {

QuadElem Q(u64 a, u64 b, const LucasParams& ab, u64 m) { return {a, b, ab, m}; }

LucasParams random_params(std::mt19937_64& rng) {
    return {static_cast<i64>(rng() % 61) - 30, static_cast<i64>(rng() % 61) - 30};
}

} // namespace

TEST(QuadRing, Roots) {
    const auto fib = LucasParams::fibonacci();
    const auto [alpha, beta] = roots(fib, 100);
    EXPECT_EQ(alpha, Q(0, 1, fib, 100));
    EXPECT_EQ(beta, Q(1, 99, fib, 100));
    EXPECT_EQ(alpha * beta, QuadElem::scalar(-1, fib, 100));
    EXPECT_EQ(alpha + beta, QuadElem::scalar(1, fib, 100));
}

TEST(QuadRing, Multiplication) {
    const auto fib = LucasParams::fibonacci();
    const auto w = QuadElem::omega(fib, 1000);
    EXPECT_EQ(w * w, Q(1, 1, fib, 1000));
    const auto x = Q(123, 456, fib, 1000);
    EXPECT_EQ(x * QuadElem::one(fib, 1000), x);
    EXPECT_EQ(Q(2, 1, fib, 1000) * Q(3, 1, fib, 1000), Q(7, 6, fib, 1000));
    EXPECT_THROW(x * QuadElem::omega(LucasParams::pell(), 1000), mixed_rings);
    EXPECT_THROW(x + QuadElem::omega(fib, 999), mixed_rings);
}

TEST(QuadRing, Powers) {
    const auto fib = LucasParams::fibonacci();
    EXPECT_EQ(qpow(QuadElem::omega(fib, 100), 10), Q(34, 55, fib, 100));
    EXPECT_EQ(qpow(Q(5, 7, fib, 100), 0), QuadElem::one(fib, 100));
    const auto pell = LucasParams::pell();
    EXPECT_EQ(qpow(QuadElem::omega(pell, 1000), 2), Q(1, 2, pell, 1000));
}

TEST(QuadRing, ConjNormTrace) {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 200; ++i) {
        const auto ab = random_params(rng);
        const u64 m = 2 + rng() % 1'000'000'000;
        const auto [alpha, beta] = roots(ab, m);
        EXPECT_EQ(alpha.norm(), Residue::from_signed(ab.B, m));
        EXPECT_EQ(alpha.conj(), beta);
        const auto x = Q(rng() % m, rng() % m, ab, m);
        EXPECT_EQ(x.conj().conj(), x);
        const auto n = x * x.conj();
        EXPECT_TRUE(n.is_scalar());
        EXPECT_EQ(n.a(), x.norm().value());
        EXPECT_EQ((x + x.conj()).a(), x.trace().value());
    }
}

TEST(QuadRing, TraceOfPowersIsV) {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 20; ++i) {
        const auto ab = random_params(rng);
        const u64 m = 3 + rng() % (u64{1} << 50);
        const auto alpha = QuadElem::omega(ab, m);
        auto x = QuadElem::one(ab, m);
        for (u64 n = 0; n <= 100; ++n) {
            ASSERT_EQ(x.trace(), lucas_v(ab, n, m)) << n;
            x *= alpha;
        }
    }
}

// alpha^n = u_n alpha - B u_{n-1}, and alpha^n - beta^n = u_n (alpha - beta).
TEST(QuadRing, BridgeToLucas) {
    std::mt19937_64 rng(33);
    for (int i = 0; i < 30; ++i) {
        const auto ab = random_params(rng);
        const u64 m = 2 + rng() % (u64{1} << 62);
        const auto [alpha, beta] = roots(ab, m);
        const Residue b = Residue::from_signed(ab.B, m);
        for (u64 n = 1; n <= 2048; ++n) {
            const Residue un = lucas_u(ab, n, m);
            const Residue un1 = lucas_u(ab, n - 1, m);
            const auto an = qpow(alpha, n);
            ASSERT_EQ(an, alpha * un - QuadElem::scalar(b * un1, ab)) << n;
            ASSERT_EQ(an - qpow(beta, n), (alpha - beta) * un) << n;
        }
    }
}

TEST(QuadRing, NormIsMultiplicative) {
    std::mt19937_64 rng(34);
    for (int i = 0; i < 10000; ++i) {
        const auto ab = random_params(rng);
        const u64 m = 2 + rng() % (u64{1} << 62);
        const auto x = Q(rng() % m, rng() % m, ab, m);
        const u64 n = rng() % 100000;
        ASSERT_EQ(qpow(x, n).norm(), x.norm().pow(n));
    }
}

TEST(QuadRing, Frobenius) {
    std::mt19937_64 rng(35);
    for (u64 p = 3; p <= 500; p += 2) {
        if (!is_prime(p)) continue;
        for (int i = 0; i < 10; ++i) {
            const auto ab = random_params(rng);
            if (reduce(2 * ab.B * ab.delta(), p) == 0) continue;
            const auto [alpha, beta] = roots(ab, p);
            const auto ap = qpow(alpha, p);
            if (jacobi(ab.delta(), p) > 0) {
                ASSERT_EQ(ap, alpha) << p;
            } else {
                ASSERT_EQ(ap, beta) << p;
            }
        }
    }
}
