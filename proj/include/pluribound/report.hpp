#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pluribound {

using Json = nlohmann::ordered_json;

enum class ReportStatus { Reproduced, Refuted, Error };

const char* report_status_name(ReportStatus s);

/// A machine-readable run record. Rationals appear as "p/q" strings
/// everywhere; no floating-point token is ever emitted.
struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;
    Json results = Json::object();
    ReportStatus status = ReportStatus::Reproduced;
    std::int64_t timing_ms = 0;

    Json to_json() const;
    std::string to_csv() const;
    std::string to_markdown() const;

    /// json | csv | md
    std::string emit(const std::string& format) const;

    int exit_code() const;
};

/// Content-addressed report cache: one JSON file per window, keyed by a
/// stable 64-bit FNV-1a hash of the window description. The stored
/// description is compared on load, so hash collisions only cost a miss.
std::uint64_t fnv1a64(const std::string& text);
std::optional<Json> cache_load(const std::string& dir, const std::string& key_text);
void cache_store(const std::string& dir, const std::string& key_text, const Json& payload);

}  // namespace pluribound
