#pragma once

/// @file registry.hpp
/// Table of every registered congruence and the generic evaluation driver.

#include <algorithm>
#include <array>
#include <chrono>
#include <exception>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "congru/congruence_result.hpp"
#include "congru/evaluators.hpp"

namespace congru {

/// What the optional integer arguments of a row mean.
enum class ExtraKind {
    none,
    x,  ///< {x}: an integer substituted for the indeterminate
    ab, ///< {A, B}: Lucas parameters
    l,  ///< {l}: the complementary index of k + l = p^a
};

struct RegistryRow {
    CongruenceId id;
    std::string_view tag;
    std::string_view statement;
    Relation relation;
    ExtraKind extra;
    /// False when the statement involves p only; such rows are evaluated at a = 1.
    bool uses_exponent;
    /// Comparison modulus p^k as k(a); 0 marks an exact or inequality row.
    unsigned (*modulus_exponent)(unsigned a);
    /// Largest power of p the evaluator reduces by; must stay below 2^63.
    unsigned (*working_exponent)(unsigned a);
    /// Largest p^a the evaluator accepts (exact rows are bounded by cost).
    u64 q_cap;
    bool (*eligible)(const PrimePower& pp, std::span<const i64> extra);
    eval::Outcome (*evaluate)(const PrimePower& pp, std::span<const i64> extra);
};

namespace detail {

inline constexpr u64 no_cap = ~u64{0};

inline bool p1mod4_or_a_gt1(const PrimePower& pp) { return pp.p % 4 == 1 || pp.a > 1; }
inline bool not_five(const PrimePower& pp) { return pp.p != 5; }

inline bool ab_coprime(const PrimePower& pp, std::span<const i64> e, bool need_a, bool need_b, bool need_delta) {
    if (e.size() != 2) return false;
    const LucasParams ab{e[0], e[1]};
    if (need_a && reduce(ab.A, pp.p) == 0) return false;
    if (need_b && reduce(ab.B, pp.p) == 0) return false;
    if (need_delta && reduce(ab.delta(), pp.p) == 0) return false;
    return true;
}

inline bool x_ok(const PrimePower& pp, std::span<const i64> e) {
    return e.size() == 1 && reduce(e[0], pp.p) != 0 && reduce(e[0] - 1, pp.p) != 0;
}

inline bool no_extra(std::span<const i64> e) { return e.empty(); }

inline unsigned k0(unsigned) { return 0; }
inline unsigned k1(unsigned) { return 1; }
inline unsigned k2(unsigned) { return 2; }
inline unsigned k3(unsigned) { return 3; }
inline unsigned k_a(unsigned a) { return a; }
inline unsigned k_a1(unsigned a) { return a + 1; }
inline unsigned k_a1_or3(unsigned a) { return std::max(a + 1, 3U); }

// clang-format off
inline const std::vector<RegistryRow>& table() {
    using E = std::span<const i64>;
    static const std::vector<RegistryRow> rows{
        {CongruenceId::thm1, "THM1",
         "sum_{k=0}^{floor(3q/4)} C(-1/2,k) == (2/q) mod p^2",
         Relation::congruent, ExtraKind::none, true, k2, k2, no_cap,
         [](const PrimePower& pp, E e) { return no_extra(e) && p1mod4_or_a_gt1(pp); }, eval::thm1},
        {CongruenceId::thm2, "THM2",
         "sum_{k=1}^{p-1} L_k/k^2 == 0 mod p",
         Relation::congruent, ExtraKind::none, false, k1, k1, no_cap,
         [](const PrimePower& pp, E e) { return no_extra(e) && pp.p > 5; }, eval::thm2},
        {CongruenceId::thm3, "THM3",
         "sum_{k=0}^{q-1} (-1)^k C(2k,k) == (q/5)(1 - 2F_{q-(q/5)}) mod p^3",
         Relation::congruent, ExtraKind::none, true, k3, k3, no_cap,
         [](const PrimePower& pp, E e) { return no_extra(e) && not_five(pp); }, eval::thm3},
        {CongruenceId::s1sum, "S1SUM",
         "sum_{k=0}^{q-1} C(2k,k)/(-4)^k == (2/q) + u_{q-(2/q)}(-6,1) mod p^2",
         Relation::congruent, ExtraKind::none, true, k2, k2, no_cap,
         [](const PrimePower&, E e) { return no_extra(e); }, eval::s1sum},
        {CongruenceId::e23, "E23",
         "sum_{k=(3q+d)/4}^{q-1} C(2k,k)/(-4)^k == u_{q-(2/q)}(-6,1) mod p^2, q == d mod 4",
         Relation::congruent, ExtraKind::none, true, k2, k2, no_cap,
         [](const PrimePower& pp, E e) { return no_extra(e) && p1mod4_or_a_gt1(pp); }, eval::e23},
        {CongruenceId::e24, "E24",
         "q sum_{k=0}^{(q-d)/4-1} 1/C((q-3)/2,k) == -u_{q-(2/q)}(-6,1) mod p^2",
         Relation::congruent, ExtraKind::none, true, k2, k_a1, no_cap,
         [](const PrimePower& pp, E e) { return no_extra(e) && p1mod4_or_a_gt1(pp); }, eval::e24},
        {CongruenceId::l21, "L21",
         "P_{q-(2/q)} Q_{q-(2/q)} == (2/q)(Q_q - 2)/2 mod p^2",
         Relation::congruent, ExtraKind::none, true, k2, k2, no_cap,
         [](const PrimePower&, E e) { return no_extra(e); }, eval::l21},
        {CongruenceId::l22, "L22",
         "q sum_{0<=k<floor(q/4)} 1/C((q-3)/2,k) == (2/q)(Q_q - 2)/4 mod p^2",
         Relation::congruent, ExtraKind::none, true, k2, k_a1, no_cap,
         [](const PrimePower& pp, E e) { return no_extra(e) && p1mod4_or_a_gt1(pp); }, eval::l22},
        {CongruenceId::cb1, "CB1",
         "C(2q-2, q-1) == -q mod p^{a+1}",
         Relation::congruent, ExtraKind::none, true, k_a1, k_a1, no_cap,
         [](const PrimePower&, E e) { return no_extra(e); }, eval::cb1},
        {CongruenceId::cb2, "CB2",
         "C(2k,k) == -2q/(l C(2l,l)) mod p^2 for k + l = q, 0 < l < q/2",
         Relation::congruent, ExtraKind::l, true, k2, k_a1, no_cap,
         [](const PrimePower& pp, E e) {
             return e.size() == 1 && e[0] >= 1 && 2 * static_cast<u64>(e[0]) < pp.q;
         }, eval::cb2},
        {CongruenceId::nu1, "NU1",
         "nu_p(C((q-3)/2, (q-3)/4)) < a - 1 for q == 3 mod 4, a > 1",
         Relation::less_than, ExtraKind::none, true, k0, k0, no_cap,
         [](const PrimePower& pp, E e) { return no_extra(e) && pp.q_mod4 == 3 && pp.a > 1; }, eval::nu1},
        {CongruenceId::l31, "L31",
         "((x^p + (1-x)^p - 1)/p)^2 == -2 sum (1-x)^k/k^2 - 2x^{2p} sum (1-1/x)^k/k^2 mod p",
         Relation::congruent, ExtraKind::x, false, k1, k2, no_cap,
         [](const PrimePower& pp, E e) { return pp.p > 3 && x_ok(pp, e); }, eval::l31},
        {CongruenceId::p31a, "P31A",
         "((v_p - A^p)/p)^2 == -2A^2 sum alpha^k/(A^k k^2) - 2beta^{2p} sum alpha^{2k}/((-B)^k k^2) mod p",
         Relation::congruent, ExtraKind::ab, false, k1, k2, no_cap,
         [](const PrimePower& pp, E e) { return pp.p > 3 && ab_coprime(pp, e, true, true, false); }, eval::p31a},
        {CongruenceId::p31b, "P31B",
         "((v_p - A^p)/p)^2 == -2A alpha^p sum alpha^k/(A^k k^2) - 2beta^{2p} sum A^k alpha^k/(B^k k^2) mod p",
         Relation::congruent, ExtraKind::ab, false, k1, k2, no_cap,
         [](const PrimePower& pp, E e) { return pp.p > 3 && ab_coprime(pp, e, true, true, false); }, eval::p31b},
        {CongruenceId::e34, "E34",
         "((L_p - 1)/p)^2 == -2 sum alpha^k/k^2 - 2beta^{2p} sum alpha^{2k}/k^2 mod p",
         Relation::congruent, ExtraKind::none, false, k1, k2, no_cap,
         [](const PrimePower& pp, E e) { return no_extra(e) && pp.p > 3; }, eval::e34},
        {CongruenceId::e35, "E35",
         "((L_p - 1)/p)^2 == -2alpha^p sum alpha^k/k^2 - 2beta^{2p} sum (-alpha)^k/k^2 mod p",
         Relation::congruent, ExtraKind::none, false, k1, k2, no_cap,
         [](const PrimePower& pp, E e) { return no_extra(e) && pp.p > 3; }, eval::e35},
        {CongruenceId::e36, "E36",
         "((L_p - 1)/p)^2 == -2(1 + 2(1+alpha^p)beta^{2p}) sum alpha^k/k^2 - 4(1-alpha^p)beta^{2p} sum (-alpha)^k/k^2 mod p",
         Relation::congruent, ExtraKind::none, false, k1, k2, no_cap,
         [](const PrimePower& pp, E e) { return no_extra(e) && pp.p > 3; }, eval::e36},
        {CongruenceId::e37, "E37",
         "(2beta^p - 1)((L_p - 1)/p)^2 == -10 sum beta^k/k^2 mod p",
         Relation::congruent, ExtraKind::none, false, k1, k2, no_cap,
         [](const PrimePower& pp, E e) { return no_extra(e) && pp.p > 3; }, eval::e37},
        {CongruenceId::e38, "E38",
         "sum_{k=1}^{p-1} F_k/k^2 == -(1/5)(p/5)((L_p - 1)/p)^2 mod p",
         Relation::congruent, ExtraKind::none, false, k1, k2, no_cap,
         [](const PrimePower& pp, E e) { return no_extra(e) && pp.p > 5; }, eval::e38},
        {CongruenceId::l41, "L41",
         "p d_{p,3} + p^{a-1} sum_{k=1}^{q-1} (1-x)^k/k == (1 - x^q - (1-x)^q)/p - p (sum_{k=1}^{p-1} x^k/k^2)^{p^{a-1}} mod p^2",
         Relation::congruent, ExtraKind::x, true, k2, k_a1_or3, no_cap,
         [](const PrimePower& pp, E e) { return x_ok(pp, e); }, eval::l41},
        {CongruenceId::harm, "HARM",
         "p^{a-1} sum_{k=1}^{q-1} 1/k == -p d_{p,3} mod p^2",
         Relation::congruent, ExtraKind::none, true, k2, k_a1, no_cap,
         [](const PrimePower&, E e) { return no_extra(e); }, eval::harm},
        {CongruenceId::p41, "P41",
         "p^{a-1} sum_{k=1}^{q-1} F_{2(q-k)}/k == (F_{2q} - F_q)/p + (p/10)(q/5)((L_p - 1)/p)^2 mod p^2",
         Relation::congruent, ExtraKind::none, true, k2, k_a1_or3, no_cap,
         [](const PrimePower& pp, E e) { return no_extra(e) && not_five(pp); }, eval::p41},
        {CongruenceId::l42, "L42",
         "(q/5)(2F_q - F_{2q}) + (L_p - 1)^2/5 == 1 - 2F_{q-(q/5)} mod p^3",
         Relation::congruent, ExtraKind::none, true, k3, k3, no_cap,
         [](const PrimePower& pp, E e) { return no_extra(e) && not_five(pp); }, eval::l42},
        {CongruenceId::e44, "E44",
         "(q/5)F_q - 1 == (L_q - 1)/5 mod p^2",
         Relation::congruent, ExtraKind::none, true, k2, k2, no_cap,
         [](const PrimePower& pp, E e) { return no_extra(e) && not_five(pp); }, eval::e44},
        {CongruenceId::e45, "E45",
         "sum_{k<q} (-1)^k C(2k,k) = sum_{k<q} (-1)^k C(2q,k) F_{2(q-k)} exactly",
         Relation::congruent, ExtraKind::none, true, k0, k0, 5000,
         [](const PrimePower& pp, E e) { return no_extra(e) && not_five(pp); }, eval::e45},
        {CongruenceId::vp, "VP",
         "v_q(A,B) == A mod p",
         Relation::congruent, ExtraKind::ab, true, k1, k1, no_cap,
         [](const PrimePower&, E e) { return e.size() == 2; }, eval::vp},
        {CongruenceId::up, "UP",
         "D u_q(A,B) == D (D/q) mod p, D = A^2 - 4B",
         Relation::congruent, ExtraKind::ab, true, k1, k1, no_cap,
         [](const PrimePower&, E e) { return e.size() == 2; }, eval::up},
        {CongruenceId::udiv, "UDIV",
         "u_{q-(D/q)}(A,B) == 0 mod q for p not dividing B D",
         Relation::congruent, ExtraKind::ab, true, k_a, k_a, no_cap,
         [](const PrimePower& pp, E e) { return ab_coprime(pp, e, false, true, true); }, eval::udiv},
        {CongruenceId::udivp, "UDIVP",
         "u_{q-(D/q)}(A,B) == 0 mod p for p not dividing B D",
         Relation::congruent, ExtraKind::ab, true, k1, k_a, no_cap,
         [](const PrimePower& pp, E e) { return ab_coprime(pp, e, false, true, true); }, eval::udivp},
    };
    return rows;
}
// clang-format on

} // namespace detail

inline const std::vector<RegistryRow>& registry() { return detail::table(); }

inline const RegistryRow& registry_row(CongruenceId id) {
    for (const auto& r : registry()) {
        if (r.id == id) return r;
    }
    throw unknown_congruence("unregistered congruence id");
}

inline std::string_view to_string(CongruenceId id) { return registry_row(id).tag; }

inline std::optional<CongruenceId> parse_congruence_id(std::string_view tag) {
    for (const auto& r : registry()) {
        if (r.tag == tag) return r.id;
    }
    return std::nullopt;
}

/// (A, B) pairs sampled for parameterized Lucas rows.
inline const std::vector<std::vector<i64>>& default_ab_samples() {
    static const std::vector<std::vector<i64>> s{{1, -1}, {2, -1}, {-6, 1}, {3, 1},
                                                 {3, 5},  {-4, 7}, {7, -3}, {5, 6}};
    return s;
}

/// Default extra-argument sample for a row at a given prime power (before eligibility filtering).
inline std::vector<std::vector<i64>> default_extras(const RegistryRow& row, const PrimePower& pp) {
    std::vector<std::vector<i64>> out;
    auto push_unique = [&](std::vector<i64> v) {
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
    };
    switch (row.extra) {
    case ExtraKind::none: out.push_back({}); break;
    case ExtraKind::x:
        for (const i64 x : {i64{2}, i64{3}, i64{5}, i64{-1}, static_cast<i64>(pp.p) - 2}) push_unique({x});
        break;
    case ExtraKind::ab:
        for (const auto& ab : default_ab_samples()) push_unique(ab);
        break;
    case ExtraKind::l: {
        const auto q = static_cast<i64>(pp.q);
        for (const i64 l : {i64{1}, i64{2}, i64{3}, (q - 1) / 4, (q - 1) / 2}) {
            if (l >= 1) push_unique({l});
        }
        break;
    }
    }
    return out;
}

/// True when p^(working exponent) and p^(modulus exponent) fit below 2^63 and q is within the row cap.
inline bool within_bounds(const RegistryRow& row, const PrimePower& pp) {
    if (pp.q > row.q_cap) return false;
    const unsigned w = std::max(row.working_exponent(pp.a), row.modulus_exponent(pp.a));
    return checked_pow(pp.p, w).has_value();
}

inline bool is_eligible(const RegistryRow& row, const PrimePower& pp, std::span<const i64> extra) {
    if (!row.uses_exponent && pp.a != 1) return false;
    return row.eligible(pp, extra);
}

struct EvalOptions {
    /// Mutation control: shift the right-hand side by one unit against the claim before comparing.
    bool perturb_rhs = false;
};

namespace detail {

inline big_int reduce_big(const big_int& v, const big_int& m) {
    if (m == 0) return v;
    big_int r = v % m;
    if (r < 0) r += m;
    return r;
}

inline bool compare(Relation rel, const Quantity& lhs, const Quantity& rhs, const big_int& modulus) {
    if (rel == Relation::less_than) return lhs.c0 < rhs.c0;
    if (lhs.c1.has_value() != rhs.c1.has_value()) return false;
    if (reduce_big(lhs.c0, modulus) != reduce_big(rhs.c0, modulus)) return false;
    if (lhs.c1 && reduce_big(*lhs.c1, modulus) != reduce_big(*rhs.c1, modulus)) return false;
    return true;
}

} // namespace detail

/// Evaluates one registered congruence at (p, a, extra).
inline CongruenceResult evaluate(CongruenceId id, u64 p, unsigned a, std::span<const i64> extra = {},
                                 EvalOptions opts = {}) {
    const RegistryRow& row = registry_row(id);
    const PrimePower pp = PrimePower::make(p, a);
    if (!is_eligible(row, pp, extra)) {
        throw ineligible_parameters(std::string(row.tag) + " is not stated for p=" + std::to_string(p) +
                                    ", a=" + std::to_string(a));
    }
    if (!within_bounds(row, pp)) {
        throw precision_overflow(std::string(row.tag) + " at p=" + std::to_string(p) + ", a=" + std::to_string(a) +
                                 " needs more than 63 bits or exceeds the row's size cap");
    }

    const auto start = std::chrono::steady_clock::now();
    eval::Outcome out = row.evaluate(pp, extra);
    const auto stop = std::chrono::steady_clock::now();

    CongruenceResult r;
    r.id = id;
    r.p = p;
    r.a = a;
    r.extra.assign(extra.begin(), extra.end());
    const unsigned k = row.modulus_exponent(a);
    r.modulus = k == 0 ? big_int(0) : big_int(pp.power(k));
    r.lhs = std::move(out.lhs);
    r.rhs = std::move(out.rhs);
    if (opts.perturb_rhs) {
        if (row.relation == Relation::less_than) {
            r.rhs.c0 -= 1;
        } else {
            r.rhs.c0 = detail::reduce_big(r.rhs.c0 + 1, r.modulus);
        }
    }
    r.holds = detail::compare(row.relation, r.lhs, r.rhs, r.modulus);
    r.micros = static_cast<u64>(std::chrono::duration_cast<std::chrono::microseconds>(stop - start).count());
    return r;
}

inline CongruenceResult evaluate(CongruenceId id, u64 p, unsigned a, std::initializer_list<i64> extra,
                                 EvalOptions opts = {}) {
    return evaluate(id, p, a, std::span<const i64>(extra.begin(), extra.size()), opts);
}

struct RangeOptions {
    u64 p_min = 3;
    u64 p_max = 100;
    unsigned a_max = 1;
    /// Upper bound on p^a.
    u64 q_max = 1'000'000;
    /// Explicit extra arguments; empty means the row's default sample.
    std::vector<std::vector<i64>> extras;
    unsigned jobs = 1;
    EvalOptions options;
};

struct RangeSummary {
    u64 evaluated = 0;
    u64 skipped = 0;
    u64 failures = 0;
};

struct Tuple {
    PrimePower pp;
    std::vector<i64> extra;
};

/// Eligible (p, a, extra) tuples of a row in ascending order, counting the ineligible ones.
inline std::vector<Tuple> enumerate_tuples(const RegistryRow& row, const RangeOptions& range, u64& skipped) {
    std::vector<Tuple> out;
    if (range.p_min > range.p_max) return out;
    const unsigned a_top = row.uses_exponent ? std::max(1U, range.a_max) : 1U;
    for (const u64 p : primes_in(std::max<u64>(range.p_min, 3), range.p_max)) {
        for (unsigned a = 1; a <= a_top; ++a) {
            const auto q = checked_pow(p, a);
            if (!q || *q > range.q_max) break;
            const PrimePower pp = PrimePower::make(p, a);
            if (!within_bounds(row, pp)) {
                ++skipped;
                continue;
            }
            const auto extras = range.extras.empty() ? default_extras(row, pp) : range.extras;
            for (const auto& e : extras) {
                if (is_eligible(row, pp, e)) {
                    out.push_back({pp, e});
                } else {
                    ++skipped;
                }
            }
        }
    }
    return out;
}

/// Evaluates a row over a range, emitting results in ascending (p, a, extra) order
/// regardless of the number of workers.
inline RangeSummary evaluate_range(CongruenceId id, const RangeOptions& range,
                                   const std::function<void(const CongruenceResult&)>& emit) {
    const RegistryRow& row = registry_row(id);
    RangeSummary summary;
    const auto tuples = enumerate_tuples(row, range, summary.skipped);
    const unsigned jobs = std::max(1U, range.jobs);
    const std::size_t batch = std::max<std::size_t>(64, 16 * std::size_t{jobs});

    std::vector<CongruenceResult> slot;
    for (std::size_t base = 0; base < tuples.size(); base += batch) {
        const std::size_t count = std::min(batch, tuples.size() - base);
        slot.assign(count, {});
        std::vector<std::exception_ptr> failed(jobs);
        auto work = [&](unsigned first) {
            try {
                for (std::size_t i = first; i < count; i += jobs) {
                    const auto& t = tuples[base + i];
                    slot[i] = evaluate(id, t.pp.p, t.pp.a, t.extra, range.options);
                }
            } catch (...) {
                failed[first] = std::current_exception();
            }
        };
        if (jobs == 1) {
            work(0);
        } else {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
        }
        for (const auto& e : failed) {
            if (e) std::rethrow_exception(e);
        }
        for (const auto& r : slot) {
            ++summary.evaluated;
            if (!r.holds) ++summary.failures;
            emit(r);
        }
    }
    return summary;
}

inline std::vector<CongruenceResult> evaluate_range(CongruenceId id, const RangeOptions& range,
                                                    RangeSummary* summary = nullptr) {
    std::vector<CongruenceResult> out;
    const auto s = evaluate_range(id, range, [&](const CongruenceResult& r) { out.push_back(r); });
    if (summary) *summary = s;
    return out;
}

} // namespace congru
