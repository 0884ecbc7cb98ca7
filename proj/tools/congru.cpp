// congru: range verification of registered congruences, the Wall-Sun-Sun
// scan, and exact identity checks.
//
// Exit codes: 0 all checks hold, 1 some check failed (or a scan hit),
// 2 usage or configuration error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "congru/exact.hpp"
#include "congru/registry.hpp"
#include "congru/report.hpp"
#include "congru/wss_scan.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

unsigned resolve_jobs(unsigned flag) {
    if (flag > 0) return flag;
    if (const char* env = std::getenv("CONGRU_JOBS"); env && *env) {
        try {
            const unsigned long v = std::stoul(env);
            if (v > 0 && v <= 4096) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        throw usage_error(std::string("CONGRU_JOBS must be a positive integer, got '") + env + "'");
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string tok; std::getline(is, tok, sep);) {
        if (!tok.empty()) out.push_back(tok);
    }
    return out;
}

congru::i64 to_i64(const std::string& s) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw usage_error("not an integer: '" + s + "'");
    }
    if (used != s.size()) throw usage_error("not an integer: '" + s + "'");
    return v;
}

void list_registry(std::ostream& os) {
    os << "registered congruences:\n";
    for (const auto& row : congru::registry()) os << "  " << row.tag << "  " << row.statement << '\n';
}

struct VerifyArgs {
    std::string id;
    congru::u64 p_min = 3;
    congru::u64 p_max = 100;
    unsigned a_max = 1;
    congru::u64 q_max = 1'000'000;
    std::vector<std::string> x;
    std::vector<std::string> ab;
    std::vector<std::string> l;
    std::string format = "jsonl";
    std::string out;
    unsigned jobs = 0;
};

/// Explicit extras for a row, or empty for the default sample.
std::vector<std::vector<congru::i64>> explicit_extras(const congru::RegistryRow& row, const VerifyArgs& a) {
    std::vector<std::vector<congru::i64>> out;
    switch (row.extra) {
    case congru::ExtraKind::x:
        for (const auto& v : a.x) out.push_back({to_i64(v)});
        break;
    case congru::ExtraKind::l:
        for (const auto& v : a.l) out.push_back({to_i64(v)});
        break;
    case congru::ExtraKind::ab:
        for (const auto& v : a.ab) {
            const auto parts = split(v, ',');
            if (parts.size() != 2) throw usage_error("--ab expects A,B, got '" + v + "'");
            out.push_back({to_i64(parts[0]), to_i64(parts[1])});
        }
        break;
    case congru::ExtraKind::none: break;
    }
    return out;
}

int cmd_verify(const VerifyArgs& a) {
    std::vector<congru::CongruenceId> ids;
    if (a.id == "all") {
        for (const auto& row : congru::registry()) ids.push_back(row.id);
    } else if (const auto id = congru::parse_congruence_id(a.id)) {
        ids.push_back(*id);
    } else {
        std::cerr << "congru: unknown congruence id '" << a.id << "'\n";
        list_registry(std::cerr);
        return exit_usage;
    }
    if (a.p_min > a.p_max) throw usage_error("--p-min exceeds --p-max");
    if (a.a_max == 0) throw usage_error("--a-max must be positive");
    if (a.format != "jsonl" && a.format != "csv") throw usage_error("--format must be jsonl or csv");

    std::unique_ptr<std::ofstream> file;
    std::ostream* os = &std::cout;
    if (!a.out.empty()) {
        file = std::make_unique<std::ofstream>(a.out, std::ios::trunc);
        if (!*file) throw usage_error("cannot open " + a.out);
        os = file.get();
    }
    congru::report::Writer writer(*os, a.format == "csv" ? congru::report::Format::csv : congru::report::Format::jsonl);

    congru::RangeSummary total;
    for (const auto id : ids) {
        const auto& row = congru::registry_row(id);
        congru::RangeOptions range;
        range.p_min = a.p_min;
        range.p_max = a.p_max;
        range.a_max = a.a_max;
        range.q_max = a.q_max;
        range.extras = explicit_extras(row, a);
        range.jobs = resolve_jobs(a.jobs);
        const auto s = congru::evaluate_range(id, range, [&](const congru::CongruenceResult& r) { writer.write(r); });
        total.evaluated += s.evaluated;
        total.skipped += s.skipped;
        total.failures += s.failures;
        if (s.failures > 0) std::cerr << row.tag << ": " << s.failures << " of " << s.evaluated << " failed\n";
    }
    os->flush();
    std::cerr << "evaluated: " << total.evaluated << "\n";
    std::cerr << "skipped: " << total.skipped << "\n";
    std::cerr << "failures: " << total.failures << "\n";
    return total.failures == 0 ? exit_ok : exit_fail;
}

struct ScanArgs {
    congru::u64 from = 3;
    congru::u64 to = 1'000'000;
    unsigned jobs = 0;
    std::string checkpoint;
    bool emit_quotients = false;
    std::string out;
};

int cmd_scan(const ScanArgs& a) {
    if (a.from > a.to) throw usage_error("--from exceeds --to");
    if (a.from < 3) throw usage_error("--from must be at least 3");
    if (a.to > congru::scan_limit) throw usage_error("--to must not exceed " + std::to_string(congru::scan_limit));

    std::unique_ptr<std::ofstream> file;
    std::ostream* os = &std::cout;
    if (!a.out.empty()) {
        file = std::make_unique<std::ofstream>(a.out, std::ios::trunc);
        if (!*file) throw usage_error("cannot open " + a.out);
        os = file.get();
    }

    congru::ScanOptions opts;
    opts.workers = resolve_jobs(a.jobs);
    if (!a.checkpoint.empty()) opts.checkpoint = a.checkpoint;
    if (a.emit_quotients) {
        opts.on_record = [os](const congru::ScanRecord& r) { *os << congru::report::to_jsonl(r) << '\n'; };
    }
    const auto s = congru::scan_range(a.from, a.to, opts);
    os->flush();

    std::cerr << "range: [" << s.lo << ", " << s.hi << "]\n";
    std::cerr << "scanned: " << s.scanned << "\n";
    std::cerr << "divisible by p: " << s.divisible << "\n";
    std::cerr << "hits:";
    if (s.hits.empty()) std::cerr << " none";
    for (const auto h : s.hits) std::cerr << ' ' << h;
    std::cerr << "\n";
    std::cerr << "seconds: " << s.seconds << "\n";
    std::cerr << "throughput: " << static_cast<long long>(s.primes_per_second()) << " primes/s\n";
    if (!s.hits.empty()) {
        std::cerr << "*** Wall-Sun-Sun prime found ***\n";
        return exit_fail;
    }
    if (s.divisible != s.scanned) {
        std::cerr << "kernel error: " << s.scanned - s.divisible << " records with p not dividing F_{p-eps}\n";
        return exit_fail;
    }
    return exit_ok;
}

int cmd_gould(unsigned n_max, const std::vector<std::string>& xs) {
    if (n_max == 0) throw usage_error("--n-max must be positive");
    std::vector<congru::big_rational> values;
    for (const auto& text : xs) {
        try {
            values.push_back(congru::parse_rational(text));
        } catch (const congru::invalid_x&) {
            throw;
        } catch (const std::exception&) {
            throw usage_error("not a rational: '" + text + "'");
        }
        if (values.back() == 0 || values.back() == -1) throw congru::invalid_x("x must avoid 0 and -1, got " + text);
    }
    bool all = true;
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (unsigned n = 1; n <= n_max; ++n) {
            const auto g = congru::gould_identity_exact(n, values[i]);
            std::cout << "n=" << n << " x=" << xs[i] << " lhs=" << g.lhs << " rhs=" << g.rhs
                      << (g.equal ? " equal" : " DIFFERENT") << '\n';
            all = all && g.equal;
        }
    }
    return all ? exit_ok : exit_fail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical verification of Lucas-sequence congruences"};
    app.require_subcommand(1);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "evaluate a registered congruence (or all) over a prime range");
    verify->add_option("id", va.id, "congruence id, or 'all'")->required();
    verify->add_option("--p-min", va.p_min, "smallest prime");
    verify->add_option("--p-max", va.p_max, "largest prime");
    verify->add_option("--a-max", va.a_max, "largest exponent a");
    verify->add_option("--q-max", va.q_max, "largest p^a");
    verify->add_option("--x", va.x, "values of x (comma separated)")->delimiter(',');
    verify->add_option("--ab", va.ab, "Lucas parameters A,B (repeatable)");
    verify->add_option("--l", va.l, "values of l (comma separated)")->delimiter(',');
    verify->add_option("--format", va.format, "jsonl or csv");
    verify->add_option("--out", va.out, "output file (default stdout)");
    verify->add_option("--jobs", va.jobs, "worker threads (default $CONGRU_JOBS, then all cores)");

    ScanArgs sa;
    auto* scan = app.add_subcommand("scan", "search a range for Wall-Sun-Sun primes");
    scan->add_option("--from", sa.from, "lower bound (>= 3)");
    scan->add_option("--to", sa.to, "upper bound");
    scan->add_option("--jobs", sa.jobs, "worker threads");
    scan->add_option("--checkpoint", sa.checkpoint, "resume file");
    scan->add_flag("--emit-quotients", sa.emit_quotients, "write every record as JSONL");
    scan->add_option("--out", sa.out, "record output file (default stdout)");

    unsigned n_max = 25;
    std::vector<std::string> gould_x{"1", "2", "3", "-2", "5"};
    auto* identity = app.add_subcommand("identity", "exact identity checks");
    identity->require_subcommand(1);
    auto* gould = identity->add_subcommand("gould", "sum x^k / C(n,k) closed form, exact rationals");
    gould->add_option("--n-max", n_max, "largest n");
    gould->add_option("--x", gould_x, "values of x, integers or a/b (comma separated)")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*verify) return cmd_verify(va);
        if (*scan) return cmd_scan(sa);
        if (*gould) return cmd_gould(n_max, gould_x);
    } catch (const usage_error& e) {
        std::cerr << "congru: " << e.what() << '\n';
        return exit_usage;
    } catch (const congru::invalid_x& e) {
        std::cerr << "congru: " << e.what() << '\n';
        return exit_usage;
    } catch (const congru::checkpoint_mismatch& e) {
        std::cerr << "congru: " << e.what() << '\n';
        return exit_usage;
    } catch (const congru::error& e) {
        std::cerr << "congru: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
