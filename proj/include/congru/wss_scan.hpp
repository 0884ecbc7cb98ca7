#pragma once

/// @file wss_scan.hpp
/// Wall-Sun-Sun search: F_{p-(p/5)} mod p^2 for every prime in a range.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "congru/errors.hpp"
#include "congru/lucas.hpp"
#include "congru/modmath.hpp"

namespace congru {

struct ScanRecord {
    u64 p = 0;
    int eps = 0;
    u64 f_index = 0;
    Residue f_mod_p2;
    Residue fib_quotient;
    bool is_hit = false;

    /// p | F_{p-eps}; false only if the kernel is broken.
    bool valid() const noexcept { return f_mod_p2.value() % p == 0; }
};

/// Largest hi with hi^2 < 2^63.
inline constexpr u64 scan_limit = 3'037'000'499ULL;

inline ScanRecord scan_prime(u64 p) {
    if (p == 5 || p < 3 || p > scan_limit) throw error("scan_prime needs an odd prime p != 5 with p^2 < 2^63");
    ScanRecord r;
    r.p = p;
    r.eps = jacobi(static_cast<i64>(p), 5);
    r.f_index = r.eps > 0 ? p - 1 : p + 1;
    const u64 m = p * p;
    r.f_mod_p2 = lucas_pair_mod(Montgomery64(m), LucasParams::fibonacci(), r.f_index).u;
    r.fib_quotient = Residue((r.f_mod_p2.value() / p) % p, p);
    r.is_hit = r.f_mod_p2.value() == 0;
    return r;
}

/// F_{p-(p/5)} / p mod p.
inline Residue fib_quotient(u64 p) {
    if (!is_prime(p)) throw error(std::to_string(p) + " is not prime");
    const ScanRecord r = scan_prime(p);
    if (!r.valid()) {
        throw negative_valuation("F_" + std::to_string(r.f_index) + " is not divisible by " + std::to_string(p));
    }
    return r.fib_quotient;
}

struct ScanOptions {
    unsigned workers = 1;
    /// Resume file; created when absent, refreshed every checkpoint_every integers.
    std::optional<std::filesystem::path> checkpoint;
    u64 checkpoint_every = u64{1} << 20;
    /// Called for every scanned prime in ascending order (quotient dump).
    std::function<void(const ScanRecord&)> on_record;
    /// Stop after this many chunks; for interrupted-run tests.
    std::optional<u64> max_chunks;
};

struct ScanSummary {
    u64 lo = 0;
    u64 hi = 0;
    u64 cursor = 0; ///< first integer not yet scanned
    u64 scanned = 0;
    u64 divisible = 0; ///< records with p | F_{p-eps}
    std::vector<u64> hits;
    double seconds = 0;
    bool complete = false;

    double primes_per_second() const noexcept { return seconds > 0 ? static_cast<double>(scanned) / seconds : 0; }

    /// Everything but timing.
    bool same_outcome(const ScanSummary& o) const {
        return lo == o.lo && hi == o.hi && cursor == o.cursor && scanned == o.scanned && divisible == o.divisible &&
               hits == o.hits && complete == o.complete;
    }
};

namespace detail {

inline nlohmann::ordered_json checkpoint_json(const ScanSummary& s) {
    nlohmann::ordered_json j;
    j["lo"] = s.lo;
    j["hi"] = s.hi;
    j["cursor"] = s.cursor;
    j["scanned"] = s.scanned;
    j["divisible"] = s.divisible;
    auto hits = nlohmann::ordered_json::array();
    for (const u64 h : s.hits) hits.push_back(std::to_string(h));
    j["hits"] = hits;
    return j;
}

inline void write_checkpoint(const std::filesystem::path& path, const ScanSummary& s) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw error("cannot write checkpoint " + tmp.string());
        out << checkpoint_json(s).dump() << '\n';
        if (!out) throw error("short write to checkpoint " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline ScanSummary read_checkpoint(const std::filesystem::path& path, u64 lo, u64 hi) {
    std::ifstream in(path);
    if (!in) throw checkpoint_mismatch("cannot open checkpoint " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw checkpoint_mismatch("unreadable checkpoint " + path.string() + ": " + e.what());
    }
    ScanSummary s;
    try {
        s.lo = j.at("lo").get<u64>();
        s.hi = j.at("hi").get<u64>();
        s.cursor = j.at("cursor").get<u64>();
        s.scanned = j.at("scanned").get<u64>();
        s.divisible = j.value("divisible", s.scanned);
        for (const auto& h : j.at("hits")) s.hits.push_back(std::stoull(h.get<std::string>()));
    } catch (const std::exception& e) {
        throw checkpoint_mismatch("malformed checkpoint " + path.string() + ": " + e.what());
    }
    if (s.lo != lo || s.hi != hi) {
        throw checkpoint_mismatch("checkpoint covers [" + std::to_string(s.lo) + ", " + std::to_string(s.hi) +
                                  "], asked for [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    if (s.cursor < lo || s.cursor > hi + 1) throw checkpoint_mismatch("checkpoint cursor outside its range");
    return s;
}

struct ChunkPart {
    u64 scanned = 0;
    u64 divisible = 0;
    std::vector<u64> hits;
    std::vector<ScanRecord> records;
};

inline ChunkPart scan_part(u64 lo, u64 hi, bool keep_records) {
    ChunkPart part;
    if (lo > hi) return part;
    for (const u64 p : primes_in(lo, hi)) {
        if (p == 5 || p == 2) continue;
        const ScanRecord r = scan_prime(p);
        ++part.scanned;
        if (r.valid()) ++part.divisible;
        if (r.is_hit) part.hits.push_back(p);
        if (keep_records) part.records.push_back(r);
    }
    return part;
}

} // namespace detail

/// Scans every prime p != 5 in [lo, hi]. Sub-ranges are split across workers
/// and merged in order, so the result does not depend on the worker count.
inline ScanSummary scan_range(u64 lo, u64 hi, const ScanOptions& opts = {}) {
    if (lo < 3 || lo > hi) throw error("scan range must satisfy 3 <= lo <= hi");
    if (hi > scan_limit) throw precision_overflow("hi^2 must stay below 2^63");
    const auto start = std::chrono::steady_clock::now();

    ScanSummary s;
    s.lo = lo;
    s.hi = hi;
    s.cursor = lo;
    if (opts.checkpoint && std::filesystem::exists(*opts.checkpoint)) s = detail::read_checkpoint(*opts.checkpoint, lo, hi);

    const unsigned workers = std::max(1U, opts.workers);
    const u64 every = std::max<u64>(1, opts.checkpoint_every);
    const bool keep = static_cast<bool>(opts.on_record);
    u64 chunks = 0;

    while (s.cursor <= hi) {
        if (opts.max_chunks && chunks == *opts.max_chunks) break;
        const u64 c_lo = s.cursor;
        const u64 c_hi = hi - c_lo < every ? hi : c_lo + every - 1;
        const u64 width = c_hi - c_lo + 1;
        const u64 share = (width + workers - 1) / workers;

        std::vector<detail::ChunkPart> parts(workers);
        std::vector<std::exception_ptr> failed(workers);
        auto work = [&](unsigned w) {
            try {
                const u64 a = c_lo + share * w;
                if (a > c_hi || a < c_lo) return;
                const u64 b = std::min(c_hi, a + share - 1);
                parts[w] = detail::scan_part(a, b, keep);
            } catch (...) {
                failed[w] = std::current_exception();
            }
        };
        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        }
        for (const auto& e : failed) {
            if (e) std::rethrow_exception(e);
        }
        for (auto& part : parts) {
            s.scanned += part.scanned;
            s.divisible += part.divisible;
            s.hits.insert(s.hits.end(), part.hits.begin(), part.hits.end());
            if (keep) {
                for (const auto& r : part.records) opts.on_record(r);
            }
        }
        s.cursor = c_hi + 1;
        ++chunks;
        if (opts.checkpoint) detail::write_checkpoint(*opts.checkpoint, s);
        if (c_hi == hi) break;
    }

    s.complete = s.cursor > hi;
    s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return s;
}

} // namespace congru
