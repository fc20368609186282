#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(PLURIBOUND_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 4096> buffer;
    std::size_t n;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        result.stdout_text.append(buffer.data(), n);
    }
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

Json parse_report(const RunResult& r) {
    Json j = Json::parse(r.stdout_text, nullptr, false);
    REQUIRE_FALSE(j.is_discarded());
    return j;
}

}  // namespace

TEST_CASE("search exit codes follow the claim") {
    // Upper-bound claims that hold: empty result, exit 0.
    auto ok = run_cli("search --fiber k3 --chi 0 --lambda-gt 42");
    CHECK(ok.exit_code == 0);
    Json j = parse_report(ok);
    CHECK(j["status"] == "reproduced");
    CHECK(j["results"]["hit_count"] == 0);

    auto enriques = run_cli("search --fiber enriques --lambda-gt 20");
    CHECK(enriques.exit_code == 0);
    CHECK(parse_report(enriques)["results"]["hit_count"] == 0);

    // A claim that fails: 69 baskets above lambda = 10 for Enriques fibers.
    auto refuted = run_cli("search --fiber enriques --lambda-gt 10");
    CHECK(refuted.exit_code == 1);
    Json rj = parse_report(refuted);
    CHECK(rj["status"] == "refuted");
    CHECK(rj["results"]["hit_count"] == 69);
}

TEST_CASE("closed search reports the witness basket") {
    auto run = run_cli("search --fiber k3 --chi 2 --lambda-ge 42");
    CHECK(run.exit_code == 0);
    Json j = parse_report(run);
    REQUIRE(j["results"]["hit_count"] == 1);
    CHECK(j["results"]["hits"][0]["basket"] == "2,1x8;3,1x6;7,1;7,2;7,3");
    CHECK(j["results"]["hits"][0]["lambda"] == "42");
}

TEST_CASE("search usage errors") {
    CHECK(run_cli("search --fiber k3").exit_code == 2);
    CHECK(run_cli("search --fiber k3 --lambda-gt 42 --lambda-ge 42").exit_code == 2);
    CHECK(run_cli("search --fiber k3 --lambda-gt 0").exit_code == 2);
    CHECK(run_cli("search --fiber k3 --lambda-gt 1/0").exit_code == 2);
    CHECK(run_cli("search --fiber weird --lambda-gt 42").exit_code == 2);
    CHECK(run_cli("search --fiber k3 --lambda-gt 42 --emit yaml").exit_code == 2);
}

TEST_CASE("verify-basket cases") {
    auto good = run_cli(
        "verify-basket --basket \"2,1x8;3,1x6;7,1;7,2;7,3\" --chi 2 --chi-f 2");
    CHECK(good.exit_code == 0);
    Json j = parse_report(good);
    CHECK(j["results"]["sigma"] == "340/7");
    CHECK(j["results"]["k_dot_c2"] == "4/7");
    CHECK(j["results"]["lambda"] == "42");
    CHECK(j["results"]["chi_mk_nonnegative"] == true);
    CHECK(j["results"]["period"] == "42");
    CHECK(j["results"]["chi_mK"].size() == 42);  // m = 2 .. 43
    CHECK(j["results"]["chi_mK"][0]["chi_mK"] == "0");
    CHECK(j["results"]["chi_mK"][40]["m"] == "42");
    CHECK(j["results"]["chi_mK"][40]["chi_mK"] == "4");

    auto failing = run_cli("verify-basket --basket \"2,1\" --chi 1 --chi-f 1");
    CHECK(failing.exit_code == 1);
    Json fj = parse_report(failing);
    CHECK(fj["results"]["chi_mk_nonnegative"] == false);
    CHECK(fj["results"]["lambda"].is_null());

    CHECK(run_cli("verify-basket --basket \"4,2\" --chi 1 --chi-f 1").exit_code == 2);
    CHECK(run_cli("verify-basket --basket \"2,1;;\" --chi 1 --chi-f 1").exit_code == 2);
    CHECK(run_cli("verify-basket --basket \"2,1\" --chi 1 --chi-f 3").exit_code == 2);
}

TEST_CASE("min-dega cases") {
    auto abelian = run_cli("min-dega --fiber abelian");
    CHECK(abelian.exit_code == 0);
    Json a = parse_report(abelian);
    CHECK(a["results"]["overall"] == "1/360");
    CHECK(a["results"]["witness"]["u"] == 3);
    CHECK(a["results"]["witness"]["alpha"] == 4);

    auto bielliptic = run_cli("min-dega --fiber bielliptic");
    CHECK(bielliptic.exit_code == 0);
    CHECK(parse_report(bielliptic)["results"]["overall"] == "1/2160");

    auto hurwitz = run_cli("min-dega --hurwitz");
    CHECK(hurwitz.exit_code == 0);
    Json h = parse_report(hurwitz);
    CHECK(h["results"]["delta"] == "1/42");
    CHECK(h["results"]["orders"] == Json::array({2, 3, 7}));

    CHECK(run_cli("min-dega").exit_code == 2);
    CHECK(run_cli("min-dega --fiber k3").exit_code == 2);
    CHECK(run_cli("min-dega --hurwitz --order-cap 5").exit_code == 2);
}

TEST_CASE("bounds command") {
    auto one = run_cli("bounds --fiber enriques");
    CHECK(one.exit_code == 0);
    Json j = parse_report(one);
    REQUIRE(j["results"]["certificates"].size() == 1);
    CHECK(j["results"]["certificates"][0]["m_min"] == 42);
    CHECK(j["results"]["certificates"][0]["divisibility"] == 2);

    CHECK(run_cli("bounds --fiber unknown").exit_code == 2);
}

TEST_CASE("reports are deterministic up to timing") {
    auto first = run_cli("search --fiber enriques --lambda-ge 20");
    auto second = run_cli("search --fiber enriques --lambda-ge 20");
    Json a = parse_report(first);
    Json b = parse_report(second);
    a["timing_ms"] = 0;
    b["timing_ms"] = 0;
    CHECK(a.dump() == b.dump());
}

TEST_CASE("worker count does not change the report") {
    auto seq = run_cli("search --fiber k3 --chi 2 --lambda-ge 42 --jobs 1");
    auto par = run_cli("search --fiber k3 --chi 2 --lambda-ge 42 --jobs 4");
    Json a = parse_report(seq);
    Json b = parse_report(par);
    a["timing_ms"] = 0;
    b["timing_ms"] = 0;
    a["inputs"]["jobs"] = b["inputs"]["jobs"] = "x";
    CHECK(a.dump() == b.dump());
}

TEST_CASE("cache round-trip and re-verification") {
    fs::path dir = fs::temp_directory_path() / "pluribound_cli_cache";
    fs::remove_all(dir);
    std::string args = "search --fiber enriques --lambda-ge 20 --cache " + dir.string();

    auto cold = run_cli(args);
    CHECK(cold.exit_code == 0);
    bool have_file = false;
    for (const auto& entry : fs::directory_iterator(dir)) {
        have_file |= entry.path().extension() == ".json";
    }
    CHECK(have_file);

    auto warm = run_cli(args);
    CHECK(warm.exit_code == 0);
    Json a = parse_report(cold);
    Json b = parse_report(warm);
    a["timing_ms"] = 0;
    b["timing_ms"] = 0;
    CHECK(a.dump() == b.dump());

    // Corrupt every cache entry; the run must fall back to the search.
    for (const auto& entry : fs::directory_iterator(dir)) {
        std::ofstream out(entry.path());
        out << "{\"key\": \"mismatch\"}";
    }
    auto repaired = run_cli(args);
    CHECK(repaired.exit_code == 0);
    Json c = parse_report(repaired);
    c["timing_ms"] = 0;
    CHECK(b.dump() == c.dump());
    fs::remove_all(dir);
}

TEST_CASE("oracle command cross-checks pass") {
    auto run = run_cli("oracle --jobs 2");
    CHECK(run.exit_code == 0);
    Json j = parse_report(run);
    CHECK(j["results"]["all_ok"] == true);
    CHECK(j["results"]["checks"].size() >= 4);
}

TEST_CASE("csv and md formats emit") {
    auto csv = run_cli("min-dega --fiber abelian --emit csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.stdout_text.find("case,bound") != std::string::npos);
    CHECK(csv.stdout_text.find("1/360") != std::string::npos);

    auto md = run_cli("bounds --fiber nonrational-base --emit md");
    CHECK(md.exit_code == 0);
    CHECK(md.stdout_text.find("| fiber |") != std::string::npos);

    fs::path out = fs::temp_directory_path() / "pluribound_out.json";
    fs::remove(out);
    auto to_file = run_cli("min-dega --hurwitz --out " + out.string());
    CHECK(to_file.exit_code == 0);
    CHECK(to_file.stdout_text.empty());
    std::ifstream in(out);
    Json j = Json::parse(in);
    CHECK(j["results"]["delta"] == "1/42");
    fs::remove(out);
}
