#include <gtest/gtest.h>

#include <random>

#include <boost/integer/mod_inverse.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "congru/padic.hpp"

using namespace congru;
using big = boost::multiprecision::cpp_int;

namespace {

PadicRational P(i64 z, u64 p, unsigned n) { return PadicRational::from_integer(z, p, n); }

// p^e * u for a unit u known to full precision.
PadicRational unit_at(int e, i64 u, u64 p, unsigned n) { return P(u, p, n).shift(e); }

u64 big_mod(const big& x, u64 m) {
    big r = x % m;
    if (r < 0) r += m;
    return r.convert_to<u64>();
}

} // namespace

TEST(Padic, FromInteger) {
    const auto x = P(18, 3, 2);
    EXPECT_EQ(x.valuation(), 2);
    EXPECT_EQ(x.unit(), 2U);
    EXPECT_TRUE(P(0, 7, 3).is_zero());
    const auto y = P(-10, 5, 3);
    EXPECT_EQ(y.valuation(), 1);
    EXPECT_EQ(y.unit(), 123U);
}

TEST(Padic, Add) {
    const auto s = unit_at(1, 1, 5, 2) + unit_at(0, 1, 5, 2);
    EXPECT_EQ(s.valuation(), 0);
    EXPECT_EQ(s.unit(), 6U);

    const auto x = P(17, 5, 2);
    EXPECT_EQ(x + PadicRational::zero(5, 2), x);
    EXPECT_EQ(PadicRational::zero(5, 2) + x, x);
}

TEST(Padic, CancellationBeyondPrecisionIsFlagged) {
    const auto s = unit_at(0, 1, 5, 2) + unit_at(0, 24, 5, 2);
    EXPECT_TRUE(s.is_indeterminate());
    EXPECT_FALSE(s.is_zero());
    EXPECT_EQ(s.valuation(), 2);
    EXPECT_THROW((void)s.unit(), precision_exhausted);
    // Still determined modulo 5^2.
    EXPECT_EQ(s.to_residue(2).value(), 0U);
    EXPECT_THROW((void)s.to_residue(3), insufficient_precision);
}

TEST(Padic, PartialCancellationShedsDigits) {
    // 1 + 4 = 5 at N = 3: valuation 1, only two unit digits survive.
    const auto s = P(1, 5, 3) + P(4, 5, 3);
    EXPECT_EQ(s.valuation(), 1);
    EXPECT_EQ(s.unit(), 1U);
    EXPECT_EQ(s.relative_precision(), 2U);
    EXPECT_EQ(s.absolute_precision(), 3);
}

TEST(Padic, MulInvNeg) {
    const auto x = unit_at(1, 2, 3, 2);
    const auto xi = x.inv();
    EXPECT_EQ(xi.valuation(), -1);
    EXPECT_EQ(xi.unit(), 5U);
    const auto one = x * xi;
    EXPECT_EQ(one.valuation(), 0);
    EXPECT_EQ(one.unit(), 1U);

    const auto m = unit_at(1, 1, 3, 2) * unit_at(2, 2, 3, 2);
    EXPECT_EQ(m.valuation(), 3);
    EXPECT_EQ(m.unit(), 2U);

    EXPECT_THROW(PadicRational::zero(3, 2).inv(), division_by_zero);
    EXPECT_EQ((-P(1, 7, 2)).unit(), 48U);
    EXPECT_THROW(P(1, 7, 2) + P(1, 5, 2), mixed_rings);
    EXPECT_THROW(P(1, 7, 2) + P(1, 7, 3), mixed_rings);
}

TEST(Padic, ToResidue) {
    EXPECT_EQ(unit_at(2, 2, 3, 2).to_residue(2).value(), 0U);
    EXPECT_EQ(unit_at(0, 5, 7, 2).to_residue(2).value(), 5U);
    EXPECT_EQ(unit_at(0, 5, 7, 2).to_residue(2).modulus(), 49U);
    EXPECT_THROW((void)unit_at(-1, 1, 7, 2).to_residue(1), negative_valuation);
    EXPECT_THROW((void)P(3, 7, 2).to_residue(3), insufficient_precision);
}

TEST(Padic, ToResidueOfIntegers) {
    for (const u64 p : {3ULL, 5ULL, 7ULL, 13ULL}) {
        for (i64 z = -1'000'000; z <= 1'000'000; z += 997) {
            for (unsigned k = 1; k <= 4; ++k) {
                const u64 mod = ipow(p, k);
                ASSERT_EQ(P(z, p, 4).to_residue(k).value(), reduce(z, mod)) << z << " p=" << p << " k=" << k;
            }
        }
    }
}

TEST(Padic, RingAxioms) {
    std::mt19937_64 rng(11);
    const u64 primes[] = {3, 5, 7, 13};
    for (int i = 0; i < 10000; ++i) {
        const u64 p = primes[rng() % 4];
        const unsigned n = 2 + static_cast<unsigned>(rng() % 3);
        auto draw = [&] {
            const i64 z = static_cast<i64>(rng() % 200001) - 100000;
            return P(z == 0 ? 1 : z, p, n);
        };
        const auto x = draw();
        const auto y = draw();
        const auto z = draw();
        ASSERT_EQ(x * y, y * x);
        ASSERT_EQ((x * y) * z, x * (y * z));
        // Addition and distributivity compared as residues where both sides are determined.
        for (const auto& [l, r] : {std::pair{(x + y) + z, x + (y + z)}, std::pair{x * (y + z), x * y + x * z}}) {
            const int k = std::min({l.absolute_precision(), r.absolute_precision(), static_cast<int>(n)});
            if (k <= 0) continue;
            ASSERT_EQ(l.to_residue(static_cast<unsigned>(k)), r.to_residue(static_cast<unsigned>(k)));
        }
        ASSERT_EQ(x + y, y + x);
    }
}

TEST(Padic, MatchesBigRationals) {
    std::mt19937_64 rng(12);
    const u64 primes[] = {3, 5, 7, 11, 13, 101};
    for (int i = 0; i < 1000; ++i) {
        const u64 p = primes[rng() % 6];
        const unsigned n = 1 + static_cast<unsigned>(rng() % 4);
        const u64 pn = ipow(p, n);
        i64 u = static_cast<i64>(rng() % 2000001) - 1000000;
        i64 v = static_cast<i64>(rng() % 1000000) + 1;
        while (v % static_cast<i64>(p) == 0) ++v;
        if (u == 0) u = 1;
        const auto r = P(u, p, n) * P(v, p, n).inv();
        // u/v mod p^n by big-integer arithmetic.
        const big vinv = boost::integer::mod_inverse(big(v), big(pn));
        const u64 expect = big_mod(big(u) * vinv, pn);
        ASSERT_EQ(r.to_residue(n).value(), expect) << u << "/" << v << " mod " << p << "^" << n;
    }
}

TEST(Padic, Pow) {
    const auto x = P(6, 3, 3);
    const auto y = x.pow(4);
    EXPECT_EQ(y.valuation(), 4);
    EXPECT_EQ(y.unit(), 16U);
    EXPECT_EQ(x.pow(0), P(1, 3, 3));
}
