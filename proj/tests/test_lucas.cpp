#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "congru/lucas.hpp"

using namespace congru;

namespace {

// u_0..u_n and v_0..v_n by the plain recurrence, with signed 128-bit reduction.
struct Direct {
    std::vector<u64> u, v;
};

Direct direct(const LucasParams& ab, u64 n, u64 m) {
    Direct d;
    const u64 a = reduce(ab.A, m), b = reduce(ab.B, m);
    auto next = [&](u64 s1, u64 s0) {
        const __int128 t = static_cast<__int128>(a) * s1 - static_cast<__int128>(b) * s0;
        __int128 r = t % static_cast<__int128>(m);
        if (r < 0) r += m;
        return static_cast<u64>(r);
    };
    d.u = {0, 1 % m};
    d.v = {2 % m, a};
    for (u64 i = 2; i <= n; ++i) {
        d.u.push_back(next(d.u[i - 1], d.u[i - 2]));
        d.v.push_back(next(d.v[i - 1], d.v[i - 2]));
    }
    return d;
}

std::vector<u64> primes_upto(u64 n) {
    std::vector<u64> out;
    for (u64 p = 3; p <= n; p += 2) {
        if (is_prime(p)) out.push_back(p);
    }
    return out;
}

} // namespace

TEST(LucasPair, Examples) {
    auto f = lucas_pair_mod(LucasParams::fibonacci(), 10, 1000);
    EXPECT_EQ(f.u.value(), 55U);
    EXPECT_EQ(f.v.value(), 123U);
    for (const auto ab : {LucasParams{3, 7}, LucasParams{-2, 5}}) {
        const auto z = lucas_pair_mod(ab, 0, 97);
        EXPECT_EQ(z.u.value(), 0U);
        EXPECT_EQ(z.v.value(), 2U);
    }
    auto pell = lucas_pair_mod(LucasParams::pell(), 8, 1'000'000);
    EXPECT_EQ(pell.u.value(), 408U);
    EXPECT_EQ(pell.v.value(), 1154U);
    auto s = lucas_pair_mod(LucasParams::neg6_1(), 2, 1'000'000);
    EXPECT_EQ(s.u.value(), 1'000'000U - 6);
    EXPECT_EQ(s.v.value(), 34U);
}

TEST(LucasPair, MatchesDirectRecurrence) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const LucasParams ab{static_cast<i64>(rng() % 2001) - 1000, static_cast<i64>(rng() % 2001) - 1000};
        u64 m = 2 + rng() % ((trial % 3 == 0) ? 1000 : (u64{1} << 62));
        if (trial % 7 == 0) m &= ~u64{1}; // even moduli too
        if (m < 2) m = 2;
        const auto d = direct(ab, 2049, m);
        for (u64 n = 0; n <= 2048; ++n) {
            const auto got = lucas_pair_mod(ab, n, m);
            ASSERT_EQ(got.u.value(), d.u[n]) << "u_" << n << " A=" << ab.A << " B=" << ab.B << " m=" << m;
            ASSERT_EQ(got.v.value(), d.v[n]) << "v_" << n;
        }
        if (m % 2 == 1 && m > 2) {
            const Montgomery64 mg(m);
            for (u64 n = 0; n <= 2048; n += 37) ASSERT_EQ(lucas_pair_mod(mg, ab, n).u.value(), d.u[n]);
        }
    }
}

TEST(LucasPair, WalkerMatchesDirect) {
    const LucasParams ab{5, -3};
    const auto d = direct(ab, 500, 1'000'003);
    auto w = LucasWalker::u(ab, 1'000'003);
    auto wv = LucasWalker::v(ab, 1'000'003);
    for (u64 n = 0; n <= 500; ++n) {
        ASSERT_EQ(w.value(), d.u[n]);
        ASSERT_EQ(wv.value(), d.v[n]);
        w.step();
        wv.step();
    }
}

TEST(LucasPair, DiscriminantInvariant) {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 10000; ++i) {
        const LucasParams ab{static_cast<i64>(rng() % 201) - 100, static_cast<i64>(rng() % 201) - 100};
        const u64 m = 2 + rng() % (u64{1} << 40);
        const u64 n = rng() % 1'000'000'000;
        const auto r = lucas_pair_mod(ab, n, m);
        const Residue lhs = r.v * r.v - Residue::from_signed(ab.delta(), m) * r.u * r.u;
        ASSERT_EQ(lhs, Residue(4 % m, m) * r.bn) << n;
        ASSERT_EQ(r.bn.value(), powmod(reduce(ab.B, m), n, m));
    }
}

TEST(NamedSequence, Examples) {
    EXPECT_EQ(named_sequence_mod(NamedSequence::fib, 10, 1'000'000).value(), 55U);
    EXPECT_EQ(named_sequence_mod(NamedSequence::luc, 0, 17).value(), 2U);
    EXPECT_EQ(named_sequence_mod(NamedSequence::pell_q, 9, 1'000'000).value(), 2786U);
    EXPECT_EQ(named_sequence_mod(NamedSequence::pell_p, 5, 1'000'000).value(), 29U);
}

TEST(NamedSequence, PellNorm) {
    const u64 m = 1'152'921'504'606'846'883ULL; // prime below 2^60
    ASSERT_TRUE(is_prime(m));
    auto wp = LucasWalker::u(LucasParams::pell(), m);
    auto wq = LucasWalker::v(LucasParams::pell(), m);
    for (u64 n = 0; n <= 10000; ++n) {
        const Residue p(wp.value(), m), q(wq.value(), m);
        const Residue sign(n % 2 == 0 ? 1 : m - 1, m);
        ASSERT_EQ(q * q - Residue(8, m) * p * p, Residue(4, m) * sign) << n;
        wp.step();
        wq.step();
    }
}

TEST(NamedSequence, NegSixOneFromPell) {
    const u64 m = 1'000'000'007ULL;
    const Residue half = invmod(2, m);
    auto ws = LucasWalker::u(LucasParams::neg6_1(), m);
    auto wp = LucasWalker::u(LucasParams::pell(), m);
    auto wq = LucasWalker::v(LucasParams::pell(), m);
    for (u64 n = 0; n <= 10000; ++n) {
        if (n >= 1) {
            const Residue sign(n % 2 == 1 ? 1 : m - 1, m);
            ASSERT_EQ(Residue(ws.value(), m), sign * half * Residue(wp.value(), m) * Residue(wq.value(), m)) << n;
        }
        ws.step();
        wp.step();
        wq.step();
    }
}

TEST(SignIndex, Examples) {
    auto s = sign_index(PrimePower::make(3, 1), 5);
    EXPECT_EQ(s.eps, -1);
    EXPECT_EQ(s.index, 4U);
    s = sign_index(PrimePower::make(11, 1), 5);
    EXPECT_EQ(s.eps, 1);
    EXPECT_EQ(s.index, 10U);
    s = sign_index(PrimePower::make(3, 2), 5);
    EXPECT_EQ(s.eps, 1);
    EXPECT_EQ(s.index, 8U);
    EXPECT_THROW(sign_index(PrimePower::make(5, 1), 5), zero_symbol);
}

namespace {

std::vector<LucasParams> sample_params(std::mt19937_64& rng, u64 p, std::size_t count) {
    std::vector<LucasParams> out;
    while (out.size() < count) {
        const LucasParams ab{static_cast<i64>(rng() % 41) - 20, static_cast<i64>(rng() % 41) - 20};
        if (reduce(2 * ab.B * ab.delta(), p) == 0) continue;
        out.push_back(ab);
    }
    return out;
}

} // namespace

TEST(LucasFacts, VAndUAtPrimePowers) {
    std::mt19937_64 rng(23);
    for (const u64 p : primes_upto(1000)) {
        for (const auto& ab : sample_params(rng, p, 20)) {
            for (unsigned a = 1; a <= 3; ++a) {
                const auto pp = PrimePower::make(p, a);
                const auto r = lucas_pair_mod(ab, pp.q, p);
                ASSERT_EQ(r.v, Residue::from_signed(ab.A, p)) << p << "^" << a;
                const Residue d = Residue::from_signed(ab.delta(), p);
                const int eps = jacobi(ab.delta(), pp.q);
                ASSERT_EQ(d * r.u, d * Residue::from_signed(eps, p)) << p << "^" << a;
            }
        }
    }
}

// p | u_{q - (D/q)}: the first power of p divides the shifted term.
TEST(LucasFacts, ShiftedIndexDivisibleByP) {
    std::mt19937_64 rng(24);
    for (const u64 p : primes_upto(1000)) {
        for (const auto& ab : sample_params(rng, p, 20)) {
            for (unsigned a = 1; a <= 3; ++a) {
                const auto pp = PrimePower::make(p, a);
                const auto si = sign_index(pp, ab.delta());
                ASSERT_EQ(lucas_u(ab, si.index, p).value(), 0U) << p << "^" << a << " A=" << ab.A << " B=" << ab.B;
            }
        }
    }
}

// For a = 1 the full power p^a = p divides it, which is the same statement.
// For a >= 2 divisibility by p^a is not automatic: F_8 = 21 and 9 does not divide it.
TEST(LucasFacts, ShiftedIndexNotAlwaysDivisibleByPrimePower) {
    const auto pp = PrimePower::make(3, 2);
    const auto si = sign_index(pp, 5);
    EXPECT_EQ(si.index, 8U);
    EXPECT_EQ(lucas_u(LucasParams::fibonacci(), 8, 9).value(), 21U % 9);
    EXPECT_NE(lucas_u(LucasParams::fibonacci(), 8, 9).value(), 0U);
}

TEST(LucasFacts, FibonacciShiftedIndex) {
    for (u64 p = 3; p <= 100'000; p += 2) {
        if (p == 5 || !is_prime(p)) continue;
        const u64 idx = jacobi(static_cast<i64>(p), 5) > 0 ? p - 1 : p + 1;
        ASSERT_EQ(lucas_u(LucasParams::fibonacci(), idx, p).value(), 0U) << p;
    }
}
