#include "pluribound/basket.hpp"
#include "pluribound/bounds.hpp"
#include "pluribound/enumerate.hpp"
#include "pluribound/moduli.hpp"
#include "pluribound/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace pluribound;

struct OutputOptions {
    std::string format = "json";
    std::string out_path;
};

void add_output_flags(CLI::App* cmd, OutputOptions& opts) {
    cmd->add_option("--emit", opts.format, "Output format: json, csv or md")
        ->check(CLI::IsMember({"json", "csv", "md"}));
    cmd->add_option("--out", opts.out_path, "Write the report to this file instead of stdout");
}

int finish(Report& report, const OutputOptions& opts,
           std::chrono::steady_clock::time_point start) {
    report.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    std::string text = report.emit(opts.format);
    if (opts.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opts.out_path);
        if (!out) {
            std::cerr << "error: cannot write to '" << opts.out_path << "'\n";
            return 2;
        }
        out << text;
    }
    return report.exit_code();
}

Json result_row(const SearchResult& r) {
    Json row = Json::object();
    row["chi"] = r.basket.chi();
    row["basket"] = r.basket.str();
    row["sigma"] = r.sigma.str();
    row["lambda"] = r.lambda.str();
    return row;
}

Json results_to_json(const std::vector<SearchResult>& results) {
    Json arr = Json::array();
    for (const auto& r : results) arr.push_back(result_row(r));
    return arr;
}

// Re-derives every field of a cached hit from its basket string; a cache
// file that fails any check is discarded and the search reruns.
std::optional<std::vector<SearchResult>> revalidate_cached(const SearchWindow& window,
                                                           const Json& payload) {
    if (!payload.is_array()) return std::nullopt;
    Rational width = Rational(12 * window.chi_F) / window.threshold;
    std::vector<SearchResult> results;
    for (const auto& row : payload) {
        if (!row.is_object() || !row.contains("chi") || !row.contains("basket") ||
            !row.contains("sigma") || !row.contains("lambda")) {
            return std::nullopt;
        }
        try {
            Basket basket = Basket::parse(row["basket"].get<std::string>(),
                                          row["chi"].get<long long>());
            Rational sigma = basket_sigma(basket);
            if (sigma.str() != row["sigma"].get<std::string>()) return std::nullopt;
            Rational lo(24 * basket.chi());
            if (!(sigma > lo)) return std::nullopt;
            Rational hi = lo + width;
            bool in_window =
                window.comparison == Comparison::Closed ? sigma <= hi : sigma < hi;
            if (!in_window) return std::nullopt;
            if (!chi_mk_nonnegative(basket)) return std::nullopt;
            Rational lambda = lambda_from_basket(basket, window.chi_F);
            if (lambda.str() != row["lambda"].get<std::string>()) return std::nullopt;
            bool chi_allowed = false;
            for (long long c : window.chi_values) chi_allowed |= (c == basket.chi());
            if (!chi_allowed) return std::nullopt;
            results.push_back(SearchResult{std::move(basket), std::move(sigma), std::move(lambda)});
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    for (std::size_t i = 1; i < results.size(); ++i) {
        if (!result_less(results[i - 1], results[i])) return std::nullopt;
    }
    return results;
}

std::vector<SearchResult> run_window(const SearchWindow& window, int jobs,
                                     const std::string& cache_dir) {
    if (cache_dir.empty()) {
        return enumerate_baskets(window, jobs);
    }
    std::string key = window.describe();
    if (auto payload = cache_load(cache_dir, key)) {
        if (auto cached = revalidate_cached(window, *payload)) {
            return std::move(*cached);
        }
    }
    auto results = enumerate_baskets(window, jobs);
    cache_store(cache_dir, key, results_to_json(results));
    return results;
}

Json witness_to_json(const DegAWitness& w) {
    Json j = Json::object();
    j["b"] = w.b;
    j["u"] = w.u;
    j["denoms"] = Json::array({w.denoms[0], w.denoms[1], w.denoms[2]});
    j["alpha"] = w.alpha;
    j["beta"] = w.beta;
    j["gamma"] = w.gamma;
    j["value"] = w.value.str();
    return j;
}

Json certificate_to_json(const BoundCertificate& cert) {
    Json j = Json::object();
    j["fiber"] = fiber_type_name(cert.fiber);
    j["lambda_bound"] = cert.lambda_bound.str();
    j["divisibility"] = cert.divisibility;
    j["m_min"] = cert.m_min;
    Json prov = Json::array();
    for (const auto& line : cert.provenance) prov.push_back(line);
    j["provenance"] = std::move(prov);
    return j;
}

int cmd_search(const std::string& fiber, const std::string& gt, const std::string& ge,
               const std::vector<long long>& chi_override, int jobs,
               const std::string& cache_dir, const OutputOptions& opts) {
    auto start = std::chrono::steady_clock::now();
    Comparison cmp = gt.empty() ? Comparison::Closed : Comparison::Strict;
    Rational threshold = Rational::parse(gt.empty() ? ge : gt);
    SearchWindow window = fiber == "k3" ? SearchWindow::k3(threshold, cmp)
                                        : SearchWindow::enriques(threshold, cmp);
    if (!chi_override.empty()) {
        window.chi_values = chi_override;
    }
    window.validate();

    Report report;
    report.command = "search";
    report.inputs = {
        {"fiber", fiber},
        {cmp == Comparison::Strict ? "lambda-gt" : "lambda-ge", threshold.str()},
        {"window", window.describe()},
        {"jobs", std::to_string(jobs)},
    };
    auto results = run_window(window, jobs, cache_dir);
    report.results["window"] = window.describe();
    report.results["hit_count"] = results.size();
    report.results["hits"] = results_to_json(results);
    // A strict search asserts the threshold is an upper bound for lambda; a
    // non-empty result set refutes that. A closed search collects witnesses.
    report.status = (cmp == Comparison::Strict && !results.empty()) ? ReportStatus::Refuted
                                                                    : ReportStatus::Reproduced;
    return finish(report, opts, start);
}

int cmd_verify_basket(const std::string& basket_text, long long chi, int chi_f,
                      const OutputOptions& opts) {
    auto start = std::chrono::steady_clock::now();
    Basket basket = Basket::parse(basket_text, chi);

    Report report;
    report.command = "verify-basket";
    report.inputs = {
        {"basket", basket_text},
        {"chi", std::to_string(chi)},
        {"chi-f", std::to_string(chi_f)},
    };
    Rational sigma = basket_sigma(basket);
    Rational kc2 = k_dot_c2(basket);
    BigInt period = chi_mk_period(basket);
    bool chi_nonneg = chi_mk_nonnegative(basket);

    report.results["basket"] = basket.str();
    report.results["chi"] = chi;
    report.results["chi_f"] = chi_f;
    report.results["sigma"] = sigma.str();
    report.results["k_dot_c2"] = kc2.str();
    bool lambda_defined = kc2.sign() > 0;
    if (lambda_defined) {
        report.results["lambda"] = lambda_from_basket(basket, chi_f).str();
    } else {
        report.results["lambda"] = nullptr;
    }
    report.results["chi_mk_nonnegative"] = chi_nonneg;
    report.results["period"] = period.str();
    Json table = Json::array();
    BigInt m = 2;
    for (const Rational& value : chi_mk_table(basket, period + 1)) {
        Json row = Json::object();
        row["m"] = m.str();
        row["chi_mK"] = value.str();
        table.push_back(std::move(row));
        ++m;
    }
    report.results["chi_mK"] = std::move(table);
    report.status =
        (chi_nonneg && lambda_defined) ? ReportStatus::Reproduced : ReportStatus::Refuted;
    return finish(report, opts, start);
}

int cmd_min_dega(const std::string& fiber, bool hurwitz, long long order_cap, int count_cap,
                 const OutputOptions& opts) {
    auto start = std::chrono::steady_clock::now();
    Report report;
    report.command = "min-dega";
    if (hurwitz) {
        report.inputs = {
            {"mode", "hurwitz"},
            {"order-cap", std::to_string(order_cap)},
            {"count-cap", std::to_string(count_cap)},
        };
        HurwitzSignature sig = hurwitz_min_positive(order_cap, count_cap);
        report.results["mode"] = "hurwitz";
        Json orders = Json::array();
        for (long long m : sig.orders) orders.push_back(m);
        report.results["orders"] = std::move(orders);
        report.results["delta"] = sig.delta.str();
        report.status = ReportStatus::Reproduced;
        return finish(report, opts, start);
    }
    report.inputs = {{"fiber", fiber}};
    ModuliFiber mf = fiber == "abelian" ? ModuliFiber::Abelian : ModuliFiber::Bielliptic;
    DegALowerBound lb = dega_lower_bound(mf);
    report.results["fiber"] = fiber;
    report.results["overall"] = lb.overall.str();
    Json cases = Json::array();
    for (const auto& c : lb.cases) {
        Json row = Json::object();
        row["case"] = c.case_label;
        row["bound"] = c.bound.str();
        if (c.witness) row["witness"] = witness_to_json(*c.witness);
        cases.push_back(std::move(row));
    }
    report.results["cases"] = std::move(cases);
    for (const auto& c : lb.cases) {
        if (c.witness) report.results["witness"] = witness_to_json(*c.witness);
    }
    report.status = ReportStatus::Reproduced;
    return finish(report, opts, start);
}

int cmd_bounds(const std::string& fiber_filter, int jobs, const OutputOptions& opts) {
    auto start = std::chrono::steady_clock::now();
    Report report;
    report.command = "bounds";
    report.inputs = {{"fiber", fiber_filter.empty() ? "all" : fiber_filter},
                     {"jobs", std::to_string(jobs)}};
    Json certs = Json::array();
    try {
        if (fiber_filter.empty()) {
            for (const auto& cert : bound_table(jobs)) {
                certs.push_back(certificate_to_json(cert));
            }
        } else {
            auto type = fiber_type_from_name(fiber_filter);
            certs.push_back(certificate_to_json(fiber_bound(*type, jobs)));
        }
    } catch (const std::runtime_error& e) {
        // A search that fails to reproduce its bound refutes the table.
        report.results["error"] = e.what();
        report.status = ReportStatus::Refuted;
        return finish(report, opts, start);
    }
    report.results["certificates"] = std::move(certs);
    report.status = ReportStatus::Reproduced;
    return finish(report, opts, start);
}

int cmd_oracle(int jobs, const OutputOptions& opts) {
    auto start = std::chrono::steady_clock::now();
    Report report;
    report.command = "oracle";
    report.inputs = {{"jobs", std::to_string(jobs)}};
    Json checks = Json::array();
    bool all_ok = true;
    auto add = [&](const std::string& name, bool ok, const std::string& detail) {
        Json row = Json::object();
        row["check"] = name;
        row["ok"] = ok;
        row["detail"] = detail;
        checks.push_back(std::move(row));
        all_ok &= ok;
    };

    // Walk vs naive generation on windows whose sigma range keeps the oracle
    // caps slack (chi = 0 forces sigma <= 12, well inside r <= 12, count <= 8).
    int checked = 0, agreed = 0;
    for (int chi_f : {1, 2}) {
        for (long long n_num : {1, 2, 3, 4, 5, 6}) {
            for (Comparison cmp : {Comparison::Strict, Comparison::Closed}) {
                SearchWindow w{chi_f, {0}, Rational(n_num * chi_f), cmp};
                auto fast = enumerate_baskets(w, jobs);
                // Window width is 12/n_num, so tighter caps stay non-binding
                // on the narrow windows and the naive generator stays small.
                auto naive = n_num == 1 ? brute_force_oracle(w, 12, 8)
                                        : brute_force_oracle(w, 6, 4);
                ++checked;
                if (fast == naive) ++agreed;
            }
        }
    }
    add("enumeration equals naive generation", checked == agreed,
        std::to_string(agreed) + "/" + std::to_string(checked) + " windows agree");

    // Structured minimization vs direct configuration enumeration.
    try {
        DegAWitness w1 = min_positive_degA({1});
        add("abelian minimum witness evaluates",
            eval_degA_expr(w1.u, w1.denoms, w1.alpha, w1.beta, w1.gamma, w1.b) == w1.value,
            w1.value.str());
        DegAWitness w46 = min_positive_degA({4, 6});
        add("bielliptic minimum witness evaluates",
            eval_degA_expr(w46.u, w46.denoms, w46.alpha, w46.beta, w46.gamma, w46.b) == w46.value,
            w46.value.str());
    } catch (const std::exception& e) {
        add("deg A minimization", false, e.what());
    }

    // Hurwitz cap stability.
    HurwitzSignature h1 = hurwitz_min_positive(84, 4);
    HurwitzSignature h2 = hurwitz_min_positive(200, 4);
    add("hurwitz minimum stable under enlarged caps",
        h1.delta == h2.delta && h1.orders == h2.orders, h1.delta.str());

    report.results["checks"] = std::move(checks);
    report.results["all_ok"] = all_ok;
    report.status = all_ok ? ReportStatus::Reproduced : ReportStatus::Refuted;
    return finish(report, opts, start);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic searches behind effective pluricanonical bounds for "
                 "minimal terminal threefolds fibered over a curve"};
    app.require_subcommand(1);

    OutputOptions search_out, verify_out, dega_out, bounds_out, oracle_out;

    // search
    auto* search = app.add_subcommand("search", "Enumerate baskets against a lambda threshold");
    std::string search_fiber;
    std::string lambda_gt, lambda_ge;
    std::vector<long long> chi_override;
    int search_jobs = 1;
    std::string cache_dir;
    search->add_option("--fiber", search_fiber, "Fiber preset: k3 or enriques")
        ->required()
        ->check(CLI::IsMember({"k3", "enriques"}));
    auto* gt_opt = search->add_option("--lambda-gt", lambda_gt,
                                      "Strict threshold: find baskets with lambda > N");
    auto* ge_opt = search->add_option("--lambda-ge", lambda_ge,
                                      "Closed threshold: find baskets with lambda >= N");
    gt_opt->excludes(ge_opt);
    search->add_option("--chi", chi_override,
                       "Restrict or override the chi(O_X) values (repeatable)");
    search->add_option("--jobs", search_jobs, "Worker threads")->check(CLI::PositiveNumber);
    search->add_option("--cache", cache_dir, "Directory for the search result cache");
    add_output_flags(search, search_out);

    // verify-basket
    auto* verify = app.add_subcommand("verify-basket", "Check one basket against the formulas");
    std::string basket_text;
    long long verify_chi = 0;
    int verify_chi_f = 2;
    verify->add_option("--basket", basket_text, "Basket string, e.g. \"2,1x8;3,1x6;7,1\"")
        ->required();
    verify->add_option("--chi", verify_chi, "chi(O_X)")->required();
    verify->add_option("--chi-f", verify_chi_f, "chi(O_F): 2 for K3, 1 for Enriques")
        ->required()
        ->check(CLI::IsMember({1, 2}));
    add_output_flags(verify, verify_out);

    // min-dega
    auto* dega = app.add_subcommand("min-dega", "Minimize the moduli-part degree expression");
    std::string dega_fiber;
    bool hurwitz = false;
    long long order_cap = 84;
    int count_cap = 4;
    auto* dega_fiber_opt = dega->add_option("--fiber", dega_fiber, "abelian or bielliptic")
                               ->check(CLI::IsMember({"abelian", "bielliptic"}));
    auto* hurwitz_opt =
        dega->add_flag("--hurwitz", hurwitz, "Minimize the orbifold ramification defect instead");
    dega->add_option("--order-cap", order_cap, "Hurwitz search: largest branch order");
    dega->add_option("--count-cap", count_cap, "Hurwitz search: most branch points");
    hurwitz_opt->excludes(dega_fiber_opt);
    add_output_flags(dega, dega_out);

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Assemble the effective bound table");
    std::string bounds_fiber;
    int bounds_jobs = 1;
    bounds->add_option("--fiber", bounds_fiber, "Restrict to one fiber type");
    bounds->add_option("--jobs", bounds_jobs, "Worker threads")->check(CLI::PositiveNumber);
    add_output_flags(bounds, bounds_out);

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Cross-check the fast paths against naive ones");
    int oracle_jobs = 1;
    oracle->add_option("--jobs", oracle_jobs, "Worker threads")->check(CLI::PositiveNumber);
    add_output_flags(oracle, oracle_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (search->parsed()) {
            if (lambda_gt.empty() == lambda_ge.empty()) {
                std::cerr << "usage error: exactly one of --lambda-gt / --lambda-ge is required\n";
                return 2;
            }
            return cmd_search(search_fiber, lambda_gt, lambda_ge, chi_override, search_jobs,
                              cache_dir, search_out);
        }
        if (verify->parsed()) {
            return cmd_verify_basket(basket_text, verify_chi, verify_chi_f, verify_out);
        }
        if (dega->parsed()) {
            if (!hurwitz && dega_fiber.empty()) {
                std::cerr << "usage error: min-dega needs --fiber or --hurwitz\n";
                return 2;
            }
            return cmd_min_dega(dega_fiber, hurwitz, order_cap, count_cap, dega_out);
        }
        if (bounds->parsed()) {
            if (!bounds_fiber.empty() && !fiber_type_from_name(bounds_fiber)) {
                std::cerr << "usage error: unknown fiber type '" << bounds_fiber << "'\n";
                return 2;
            }
            return cmd_bounds(bounds_fiber, bounds_jobs, bounds_out);
        }
        if (oracle->parsed()) {
            return cmd_oracle(oracle_jobs, oracle_out);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
