#pragma once

/// @file report.hpp
/// JSONL and CSV serialization of results, one record per line.

#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "congru/registry.hpp"
#include "congru/wss_scan.hpp"

namespace congru::report {

inline constexpr int schema_version = 1;

inline nlohmann::ordered_json to_json(const CongruenceResult& r) {
    nlohmann::ordered_json j;
    j["schema"] = schema_version;
    j["id"] = std::string(to_string(r.id));
    j["p"] = r.p;
    j["a"] = r.a;
    j["extra"] = r.extra;
    j["modulus"] = r.modulus.str();
    j["lhs"] = r.lhs.to_string();
    j["rhs"] = r.rhs.to_string();
    j["holds"] = r.holds;
    j["micros"] = r.micros;
    return j;
}

inline std::string to_jsonl(const CongruenceResult& r) { return to_json(r).dump(); }

inline CongruenceResult from_json(const nlohmann::json& j) {
    const int schema = j.value("schema", schema_version);
    if (schema != schema_version) throw error("unsupported report schema " + std::to_string(schema));
    const auto tag = j.at("id").get<std::string>();
    const auto id = parse_congruence_id(tag);
    if (!id) throw unknown_congruence("unknown congruence id " + tag);
    CongruenceResult r;
    r.id = *id;
    r.p = j.at("p").get<u64>();
    r.a = j.at("a").get<unsigned>();
    r.extra = j.at("extra").get<std::vector<i64>>();
    r.modulus = big_int(j.at("modulus").get<std::string>());
    r.lhs = Quantity::parse(j.at("lhs").get<std::string>());
    r.rhs = Quantity::parse(j.at("rhs").get<std::string>());
    r.holds = j.at("holds").get<bool>();
    r.micros = j.at("micros").get<u64>();
    return r;
}

inline CongruenceResult from_jsonl(std::string_view line) { return from_json(nlohmann::json::parse(line)); }

inline nlohmann::ordered_json to_json(const ScanRecord& r) {
    nlohmann::ordered_json j;
    j["schema"] = schema_version;
    j["record"] = "wss";
    j["p"] = r.p;
    j["eps"] = r.eps;
    j["f_index"] = r.f_index;
    j["f_mod_p2"] = std::to_string(r.f_mod_p2.value());
    j["fib_quotient"] = std::to_string(r.fib_quotient.value());
    j["is_hit"] = r.is_hit;
    return j;
}

inline std::string to_jsonl(const ScanRecord& r) { return to_json(r).dump(); }

inline ScanRecord scan_record_from_jsonl(std::string_view line) {
    const auto j = nlohmann::json::parse(line);
    ScanRecord r;
    r.p = j.at("p").get<u64>();
    r.eps = j.at("eps").get<int>();
    r.f_index = j.at("f_index").get<u64>();
    r.f_mod_p2 = Residue(std::stoull(j.at("f_mod_p2").get<std::string>()), r.p * r.p);
    r.fib_quotient = Residue(std::stoull(j.at("fib_quotient").get<std::string>()), r.p);
    r.is_hit = j.at("is_hit").get<bool>();
    return r;
}

inline constexpr std::string_view csv_header = "id,p,a,extra,modulus,lhs,rhs,holds,micros";

/// Extra arguments are joined with ';' to keep the column count fixed.
inline std::string to_csv(const CongruenceResult& r) {
    std::ostringstream os;
    os << to_string(r.id) << ',' << r.p << ',' << r.a << ',';
    for (std::size_t i = 0; i < r.extra.size(); ++i) os << (i ? ";" : "") << r.extra[i];
    os << ',' << r.modulus << ',' << r.lhs.to_string() << ',' << r.rhs.to_string() << ','
       << (r.holds ? "true" : "false") << ',' << r.micros;
    return os.str();
}

inline CongruenceResult from_csv(std::string_view line) {
    std::vector<std::string> f;
    std::string cur;
    for (const char c : line) {
        if (c == ',') {
            f.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    f.push_back(cur);
    if (f.size() != 9) throw error("csv row needs 9 fields: " + std::string(line));
    const auto id = parse_congruence_id(f[0]);
    if (!id) throw unknown_congruence("unknown congruence id " + f[0]);
    CongruenceResult r;
    r.id = *id;
    r.p = std::stoull(f[1]);
    r.a = static_cast<unsigned>(std::stoul(f[2]));
    std::istringstream extra(f[3]);
    for (std::string tok; std::getline(extra, tok, ';');) {
        if (!tok.empty()) r.extra.push_back(std::stoll(tok));
    }
    r.modulus = big_int(f[4]);
    r.lhs = Quantity::parse(f[5]);
    r.rhs = Quantity::parse(f[6]);
    if (f[7] != "true" && f[7] != "false") throw error("bad holds field: " + f[7]);
    r.holds = f[7] == "true";
    r.micros = std::stoull(f[8]);
    return r;
}

enum class Format { jsonl, csv };

/// Writes results in one format; the CSV header goes out before the first row.
class Writer {
public:
    Writer(std::ostream& os, Format fmt) : os_(os), fmt_(fmt) {}

    void write(const CongruenceResult& r) {
        if (fmt_ == Format::csv) {
            if (!header_done_) {
                os_ << csv_header << '\n';
                header_done_ = true;
            }
            os_ << to_csv(r) << '\n';
        } else {
            os_ << to_jsonl(r) << '\n';
        }
        ++lines_;
    }

    std::size_t lines() const noexcept { return lines_; }

private:
    std::ostream& os_;
    Format fmt_;
    bool header_done_ = false;
    std::size_t lines_ = 0;
};

} // namespace congru::report
