#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "matrix.hpp"
#include "verify.hpp"

namespace polykeller {

/// Row-major serialization of a polynomial matrix.
inline nlohmann::json matrix_to_json(const PolyMatrix& m, const VariableFrame& frame) {
    nlohmann::json j;
    j["rows"] = m.rows;
    j["cols"] = m.cols;
    nlohmann::json entries = nlohmann::json::array();
    for (int i = 0; i < m.rows; ++i)
        for (int k = 0; k < m.cols; ++k)
            entries.push_back(print_polynomial(m.at(i, k), frame));
    j["entries"] = entries;
    return j;
}

/// FNV-1a 64-bit digest of input text, rendered as hex.
inline std::string text_digest(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline nlohmann::json report_to_json(const PropertyReport& rep) {
    nlohmann::json j;
    j["property"] = rep.property;
    j["instance"] = rep.instance;
    j["verdict"] = verdict_name(rep.verdict);
    j["seed"] = rep.seed;
    j["trials"] = rep.trials;
    if (!rep.note.empty())
        j["note"] = rep.note;
    nlohmann::json ws = nlohmann::json::array();
    for (const auto& [role, value] : rep.witnesses)
        ws.push_back({{"role", role}, {"value", value}});
    j["witnesses"] = ws;
    return j;
}

/// Top-level result of one CLI invocation. JSON is canonical: nlohmann's
/// object keys are sorted, every rational is a "p/q" string, and no field is
/// a float (the duration is integral milliseconds and excluded from
/// canonical comparison).
struct RunReport {
    std::string command;
    std::map<std::string, std::string> input_digests;
    std::uint64_t seed = 0;
    std::int64_t duration_ms = 0;
    std::vector<PropertyReport> reports;
    nlohmann::json attachments = nlohmann::json::object(); // e.g. serialized matrices
};

inline nlohmann::json run_report_to_json(const RunReport& rr, bool include_duration = true) {
    nlohmann::json j;
    j["command"] = rr.command;
    j["seed"] = rr.seed;
    if (include_duration)
        j["duration_ms"] = rr.duration_ms;
    nlohmann::json inputs = nlohmann::json::object();
    for (const auto& [name, digest] : rr.input_digests)
        inputs[name] = digest;
    j["inputs"] = inputs;
    std::uint64_t pass = 0, fail = 0, inapplicable = 0;
    nlohmann::json reps = nlohmann::json::array();
    for (const auto& rep : rr.reports) {
        reps.push_back(report_to_json(rep));
        switch (rep.verdict) {
        case Verdict::Pass: ++pass; break;
        case Verdict::Fail: ++fail; break;
        case Verdict::Inapplicable: ++inapplicable; break;
        }
    }
    j["reports"] = reps;
    j["summary"] = {{"pass", pass}, {"fail", fail}, {"inapplicable", inapplicable}};
    if (!rr.attachments.empty())
        j["attachments"] = rr.attachments;
    return j;
}

inline std::string canonical_report_text(const RunReport& rr, bool include_duration = false) {
    return run_report_to_json(rr, include_duration).dump(2) + "\n";
}

} // namespace polykeller
