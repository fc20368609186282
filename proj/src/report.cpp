#include "pluribound/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pluribound {

namespace fs = std::filesystem;

const char* report_status_name(ReportStatus s) {
    switch (s) {
        case ReportStatus::Reproduced: return "reproduced";
        case ReportStatus::Refuted: return "refuted";
        case ReportStatus::Error: return "error";
    }
    throw std::logic_error("report_status_name: unknown status");
}

int Report::exit_code() const {
    switch (status) {
        case ReportStatus::Reproduced: return 0;
        case ReportStatus::Refuted: return 1;
        case ReportStatus::Error: return 2;
    }
    return 2;
}

Json Report::to_json() const {
    Json j = Json::object();
    j["command"] = command;
    Json in = Json::object();
    for (const auto& [k, v] : inputs) in[k] = v;
    j["inputs"] = std::move(in);
    j["status"] = report_status_name(status);
    j["results"] = results;
    j["timing_ms"] = timing_ms;
    return j;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

// Tabular form of a results payload: an array of flat objects becomes a
// table, anything else becomes key/value rows (nested values as compact
// JSON). The table rows that the commands emit are flat by construction.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

Table tabulate(const Json& results) {
    Table t;
    const Json* array = nullptr;
    if (results.is_array()) {
        array = &results;
    } else if (results.is_object()) {
        // A payload that is a single array field plus scalar context is
        // rendered as the array's table; context keys go to key/value rows.
        const Json* only_array = nullptr;
        int arrays = 0;
        for (const auto& [k, v] : results.items()) {
            (void)k;
            if (v.is_array() && !v.empty() && v.front().is_object()) {
                ++arrays;
                only_array = &v;
            }
        }
        if (arrays == 1) array = only_array;
    }
    if (array && !array->empty() && array->front().is_object()) {
        for (const auto& [k, v] : array->front().items()) {
            (void)v;
            t.header.push_back(k);
        }
        for (const auto& row : *array) {
            std::vector<std::string> cells;
            for (const auto& col : t.header) {
                cells.push_back(row.contains(col) ? scalar_text(row.at(col)) : "");
            }
            t.rows.push_back(std::move(cells));
        }
        return t;
    }
    t.header = {"key", "value"};
    if (results.is_object()) {
        for (const auto& [k, v] : results.items()) {
            t.rows.push_back({k, scalar_text(v)});
        }
    } else {
        t.rows.push_back({"results", scalar_text(results)});
    }
    return t;
}

}  // namespace

std::string Report::to_csv() const {
    Table t = tabulate(results);
    std::ostringstream os;
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        if (i) os << ",";
        os << csv_escape(t.header[i]);
    }
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ",";
            os << csv_escape(row[i]);
        }
        os << "\n";
    }
    return os.str();
}

std::string Report::to_markdown() const {
    Table t = tabulate(results);
    std::ostringstream os;
    os << "# " << command << " (" << report_status_name(status) << ")\n\n";
    os << "|";
    for (const auto& h : t.header) os << " " << h << " |";
    os << "\n|";
    for (std::size_t i = 0; i < t.header.size(); ++i) os << " --- |";
    os << "\n";
    for (const auto& row : t.rows) {
        os << "|";
        for (const auto& cell : row) os << " " << cell << " |";
        os << "\n";
    }
    return os.str();
}

std::string Report::emit(const std::string& format) const {
    if (format == "json") return to_json().dump(2) + "\n";
    if (format == "csv") return to_csv();
    if (format == "md") return to_markdown();
    throw std::invalid_argument("unknown output format '" + format + "'");
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

namespace {

fs::path cache_path(const std::string& dir, const std::string& key_text) {
    std::ostringstream name;
    name << std::hex << fnv1a64(key_text);
    return fs::path(dir) / (name.str() + ".json");
}

}  // namespace

std::optional<Json> cache_load(const std::string& dir, const std::string& key_text) {
    fs::path path = cache_path(dir, key_text);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    if (!j.contains("key") || j["key"] != key_text) return std::nullopt;
    if (!j.contains("payload")) return std::nullopt;
    return j["payload"];
}

void cache_store(const std::string& dir, const std::string& key_text, const Json& payload) {
    fs::create_directories(dir);
    Json j = Json::object();
    j["key"] = key_text;
    j["payload"] = payload;
    std::ofstream out(cache_path(dir, key_text));
    out << j.dump(2) << "\n";
}

}  // namespace pluribound
