#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pluribound/report.hpp"

#include <cstdio>
#include <filesystem>
#include <regex>

using namespace pluribound;

namespace {

Report sample_report() {
    Report r;
    r.command = "search";
    r.inputs = {{"fiber", "k3"}, {"lambda-ge", "42"}};
    Json hit = Json::object();
    hit["chi"] = 2;
    hit["basket"] = "2,1x8;3,1x6;7,1;7,2;7,3";
    hit["sigma"] = "340/7";
    hit["lambda"] = "42";
    r.results["window"] = "chi_f=2;chi=0,1,2;cmp=closed;threshold=42";
    r.results["hit_count"] = 1;
    r.results["hits"] = Json::array({hit});
    r.status = ReportStatus::Reproduced;
    r.timing_ms = 17;
    return r;
}

bool has_float_token(const std::string& text) {
    static const std::regex decimal(R"([0-9]+\.[0-9])");
    static const std::regex exponent(R"([0-9][eE][-+]?[0-9])");
    return std::regex_search(text, decimal) || std::regex_search(text, exponent);
}

}  // namespace

TEST_CASE("json shape and round-trip") {
    Report r = sample_report();
    Json j = r.to_json();
    CHECK(j["command"] == "search");
    CHECK(j["status"] == "reproduced");
    CHECK(j["inputs"]["fiber"] == "k3");
    CHECK(j["results"]["hit_count"] == 1);
    CHECK(j["timing_ms"] == 17);

    std::string text = r.emit("json");
    Json parsed = Json::parse(text);
    CHECK(parsed == j);
    CHECK(Json::parse(parsed.dump(2)) == parsed);
}

TEST_CASE("no floating-point token in any emitted format") {
    Report r = sample_report();
    CHECK_FALSE(has_float_token(r.emit("json")));
    CHECK_FALSE(has_float_token(r.emit("csv")));
    CHECK_FALSE(has_float_token(r.emit("md")));
    // The audit itself detects floats.
    CHECK(has_float_token("\"sigma\": 48.57"));
    CHECK(has_float_token("1e-5"));
}

TEST_CASE("csv renders the hit table") {
    std::string csv = sample_report().to_csv();
    CHECK(csv.find("chi,basket,sigma,lambda") != std::string::npos);
    CHECK(csv.find("2,\"2,1x8;3,1x6;7,1;7,2;7,3\",340/7,42") != std::string::npos);
}

TEST_CASE("markdown renders a table") {
    std::string md = sample_report().to_markdown();
    CHECK(md.find("# search (reproduced)") != std::string::npos);
    CHECK(md.find("| chi | basket | sigma | lambda |") != std::string::npos);
}

TEST_CASE("exit codes follow the status") {
    Report r = sample_report();
    CHECK(r.exit_code() == 0);
    r.status = ReportStatus::Refuted;
    CHECK(r.exit_code() == 1);
    r.status = ReportStatus::Error;
    CHECK(r.exit_code() == 2);
}

TEST_CASE("emit rejects unknown formats") {
    CHECK_THROWS_AS(sample_report().emit("xml"), std::invalid_argument);
}

TEST_CASE("fnv1a64 is stable") {
    CHECK(fnv1a64("") == 14695981039346656037ULL);
    CHECK(fnv1a64("a") == fnv1a64("a"));
    CHECK(fnv1a64("a") != fnv1a64("b"));
}

TEST_CASE("cache stores and reloads payloads") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "pluribound_cache_test";
    fs::remove_all(dir);

    std::string key = "chi_f=2;chi=0,1,2;cmp=strict;threshold=42";
    CHECK_FALSE(cache_load(dir.string(), key).has_value());

    Json payload = Json::array();
    payload.push_back({{"chi", 2}, {"basket", "2,1"}});
    cache_store(dir.string(), key, payload);

    auto loaded = cache_load(dir.string(), key);
    REQUIRE(loaded.has_value());
    CHECK(*loaded == payload);

    // A different key misses even when it hashes to a different file.
    CHECK_FALSE(cache_load(dir.string(), key + ";x").has_value());
    fs::remove_all(dir);
}
