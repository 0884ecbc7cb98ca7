#include <gtest/gtest.h>

#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "congru/modmath.hpp"

using namespace congru;
using big = boost::multiprecision::cpp_int;

namespace {

u64 naive_pow(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    for (u64 i = 0; i < e; ++i) r = r * (b % m) % m;
    return r;
}

bool trial_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

// Legendre symbol by listing squares.
int squares_legendre(i64 a, u64 p) {
    const u64 r = reduce(a, p);
    if (r == 0) return 0;
    for (u64 x = 1; x < p; ++x) {
        if (x * x % p == r) return 1;
    }
    return -1;
}

} // namespace

TEST(Powmod, Examples) {
    EXPECT_EQ(powmod(i64{2}, 10, 1000).value(), 24U);
    EXPECT_EQ(powmod(i64{3}, 5, 7).value(), 243U % 7);
    for (u64 m : {2ULL, 17ULL, 1000ULL, (1ULL << 62) + 135}) EXPECT_EQ(powmod(i64{123456789}, 0, m).value(), 1U);
}

TEST(Powmod, MatchesRepeatedMultiplication) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<u64> small(0, (1U << 16) - 1);
    std::uniform_int_distribution<u64> exps(0, 63);
    for (int i = 0; i < 100000; ++i) {
        const u64 b = small(rng);
        const u64 m = std::max<u64>(2, small(rng));
        const u64 e = exps(rng);
        ASSERT_EQ(powmod(static_cast<i64>(b), e, m).value(), naive_pow(b, e, m)) << b << "^" << e << " mod " << m;
    }
}

TEST(Powmod, LargeModulusAgainstBigInt) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 2000; ++i) {
        const u64 m = (rng() >> 1) | 2;
        const u64 b = rng() % m;
        const u64 e = rng() % 100000;
        ASSERT_EQ(powmod(b, e, m), boost::multiprecision::powm(big(b), big(e), big(m)).convert_to<u64>());
    }
}

TEST(Invmod, Examples) {
    EXPECT_EQ(invmod(16, 25).value(), 11U);
    EXPECT_EQ(invmod(1, 97).value(), 1U);
    try {
        invmod(3, 9);
        FAIL() << "expected not_invertible";
    } catch (const not_invertible& e) {
        EXPECT_EQ(e.gcd(), 3U);
    }
}

TEST(Invmod, FailsExactlyWhenNotCoprime) {
    for (u64 m = 2; m < 300; ++m) {
        for (i64 x = -20; x < 320; ++x) {
            const u64 g = gcd(reduce(x, m), m);
            if (g == 1) {
                const Residue y = invmod(x, m);
                ASSERT_EQ(mulmod(reduce(x, m), y.value(), m), 1 % m);
            } else {
                ASSERT_THROW(invmod(x, m), not_invertible) << x << " mod " << m;
            }
        }
    }
}

TEST(Jacobi, Examples) {
    EXPECT_EQ(jacobi(1, 9), 1);
    EXPECT_EQ(jacobi(2, 7), squares_legendre(2, 7));
    EXPECT_EQ(jacobi(3, 5), squares_legendre(3, 5));
    EXPECT_EQ(jacobi(2, 15), squares_legendre(2, 3) * squares_legendre(2, 5));
    EXPECT_EQ(jacobi(5, 9), 1);
    EXPECT_EQ(jacobi(6, 9), 0);
    EXPECT_THROW(jacobi(3, 10), even_modulus);
    EXPECT_THROW(jacobi(3, 0), even_modulus);
}

TEST(Jacobi, EulerCriterion) {
    for (u64 p = 3; p <= 997; p += 2) {
        if (!trial_prime(p)) continue;
        for (u64 a = 1; a < p; ++a) {
            const u64 e = naive_pow(a, (p - 1) / 2, p) == 1 ? 1 : 0;
            ASSERT_EQ(jacobi(static_cast<i64>(a), p), e ? 1 : -1) << a << "/" << p;
        }
    }
}

TEST(Jacobi, MultiplicativeInTop) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10000; ++i) {
        const i64 a = static_cast<i64>(rng() % 2000001) - 1000000;
        const i64 b = static_cast<i64>(rng() % 2000001) - 1000000;
        const u64 n = (rng() % 100000) * 2 + 1;
        ASSERT_EQ(jacobi(a * b, n), jacobi(a, n) * jacobi(b, n));
    }
}

TEST(Jacobi, ProductOverPrimeFactorsOfModulus) {
    for (u64 n = 3; n < 400; n += 2) {
        for (i64 a = -30; a < 30; ++a) {
            int expect = 1;
            u64 rest = n;
            for (u64 d = 3; d <= rest; d += 2) {
                while (rest % d == 0) {
                    expect *= squares_legendre(a, d);
                    rest /= d;
                }
            }
            ASSERT_EQ(jacobi(a, n), expect) << a << "/" << n;
        }
    }
}

TEST(IsPrime, Examples) {
    EXPECT_TRUE(is_prime(2));
    EXPECT_FALSE(is_prime(341));
    EXPECT_TRUE(is_prime(1000000007));
    EXPECT_FALSE(is_prime(0));
    EXPECT_FALSE(is_prime(1));
    EXPECT_FALSE(is_prime(3215031751ULL)); // strong pseudoprime to bases 2, 3, 5, 7
    EXPECT_TRUE(is_prime(18446744073709551557ULL));
    EXPECT_FALSE(is_prime(18446744073709551557ULL - 2));
}

TEST(IsPrime, MatchesTrialDivision) {
    for (u64 n = 0; n < 200000; ++n) ASSERT_EQ(is_prime(n), trial_prime(n)) << n;
}

TEST(PrimesIn, Examples) {
    EXPECT_EQ(collect_primes(2, 10), (std::vector<u64>{2, 3, 5, 7}));
    EXPECT_TRUE(collect_primes(24, 28).empty());
    EXPECT_EQ(collect_primes(90, 100), (std::vector<u64>{97}));
    EXPECT_TRUE(collect_primes(10, 9).empty());
}

TEST(PrimesIn, SegmentedMatchesIsPrime) {
    for (const std::size_t seg : {std::size_t{7}, std::size_t{64}, default_segment_size}) {
        const u64 lo = 999'000;
        const u64 hi = 1'201'000;
        std::vector<u64> expect;
        for (u64 n = lo; n <= hi; ++n) {
            if (is_prime(n)) expect.push_back(n);
        }
        EXPECT_EQ(collect_primes(lo, hi, seg), expect) << "segment " << seg;
    }
    EXPECT_EQ(collect_primes(0, 1'000'000).size(), 78498U);
}

TEST(PrimesIn, HighRange) {
    const u64 lo = 4'000'000'000ULL;
    std::vector<u64> expect;
    for (u64 n = lo; n <= lo + 5000; ++n) {
        if (is_prime(n)) expect.push_back(n);
    }
    EXPECT_EQ(collect_primes(lo, lo + 5000), expect);
}

TEST(NuFactorial, Examples) {
    EXPECT_EQ(nu_factorial(10, 3), 4U);
    EXPECT_EQ(nu_factorial(5, 7), 0U);
    for (u64 p : {2ULL, 3ULL, 101ULL}) EXPECT_EQ(nu_factorial(p, p), 1U);
}

TEST(NuFactorial, MatchesFactoredFactorial) {
    for (u64 p = 2; p <= 50; ++p) {
        if (!trial_prime(p)) continue;
        unsigned acc = 0;
        for (u64 n = 1; n <= 2000; ++n) {
            acc += valuation(n, p);
            ASSERT_EQ(nu_factorial(n, p), acc) << n << "! at " << p;
        }
    }
}

TEST(BinomLucas, Examples) {
    EXPECT_EQ(binom_mod_lucas(10, 4, 3).value(), 0U);
    EXPECT_EQ(binom_mod_lucas(7, 2, 5).value(), 21U % 5);
    EXPECT_EQ(binom_mod_lucas(123, 0, 7).value(), 1U);
}

TEST(BinomLucas, MatchesBigInt) {
    for (u64 p : {3ULL, 5ULL, 7ULL, 13ULL}) {
        std::vector<big> row{1};
        for (u64 n = 0; n <= 500; ++n) {
            for (u64 k = 0; k <= n; ++k) {
                ASSERT_EQ(binom_mod_lucas(n, k, p).value(), static_cast<u64>(row[k] % p)) << n << "," << k;
            }
            std::vector<big> next(n + 2, 1);
            for (u64 k = 1; k <= n; ++k) next[k] = row[k - 1] + row[k];
            row = std::move(next);
        }
    }
}

TEST(Residue, MixedModuliRejected) {
    EXPECT_THROW(Residue(1, 7) + Residue(1, 11), mixed_rings);
    EXPECT_EQ((Residue(5, 7) * Residue(4, 7)).value(), 6U);
    EXPECT_EQ(Residue(6, 7).centered(), -1);
}

TEST(PrimePower, Construction) {
    const auto pp = PrimePower::make(7, 3);
    EXPECT_EQ(pp.q, 343U);
    EXPECT_EQ(pp.q_mod4, 3U);
    EXPECT_THROW(PrimePower::make(9, 1), error);
    EXPECT_THROW(PrimePower::make(2, 1), error);
    EXPECT_NO_THROW(PrimePower::make(2, 5, true));
    EXPECT_THROW(PrimePower::make(1000003, 4), precision_overflow);
}

TEST(Montgomery, AgreesWithPlain) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 20000; ++i) {
        const u64 m = ((rng() >> 1) | 1) >> (rng() % 60);
        if (m < 3) continue;
        const Montgomery64 mg(m | 1);
        const u64 mm = m | 1;
        const u64 x = rng() % mm;
        const u64 y = rng() % mm;
        ASSERT_EQ(mg.from(mg.mul(mg.to(x), mg.to(y))), mulmod(x, y, mm));
    }
}
