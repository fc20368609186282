#include "pluribound/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace pluribound {

SearchWindow SearchWindow::k3(Rational threshold, Comparison cmp) {
    return SearchWindow{2, {0, 1, 2}, std::move(threshold), cmp};
}

SearchWindow SearchWindow::enriques(Rational threshold, Comparison cmp) {
    return SearchWindow{1, {1}, std::move(threshold), cmp};
}

void SearchWindow::validate() const {
    if (chi_F != 1 && chi_F != 2) {
        throw std::invalid_argument("search window: chi_F must be 1 or 2");
    }
    if (threshold.sign() <= 0) {
        throw std::invalid_argument("search window: threshold must be positive");
    }
    if (chi_values.empty()) {
        throw std::invalid_argument("search window: no chi values");
    }
}

std::string SearchWindow::describe() const {
    std::ostringstream os;
    os << "chi_f=" << chi_F << ";chi=";
    for (std::size_t i = 0; i < chi_values.size(); ++i) {
        if (i) os << ",";
        os << chi_values[i];
    }
    os << ";cmp=" << (comparison == Comparison::Strict ? "strict" : "closed");
    os << ";threshold=" << threshold.str();
    return os.str();
}

bool result_less(const SearchResult& a, const SearchResult& b) {
    if (a.basket.chi() != b.basket.chi()) return a.basket.chi() < b.basket.chi();
    const auto& ea = a.basket.entries();
    const auto& eb = b.basket.entries();
    return std::lexicographical_compare(
        ea.begin(), ea.end(), eb.begin(), eb.end(), [](const BasketEntry& x, const BasketEntry& y) {
            if (x.r != y.r) return x.r < y.r;
            if (x.b != y.b) return x.b < y.b;
            return x.multiplicity < y.multiplicity;
        });
}

namespace {

Rational entry_weight(long long r) {
    return Rational(BigInt(r) * r - 1, BigInt(r));
}

std::vector<long long> canonical_bs(long long r) {
    std::vector<long long> out;
    for (long long b = 1; 2 * b <= r; ++b) {
        if (std::gcd(b, r) == 1) out.push_back(b);
    }
    return out;
}

struct ChiWindow {
    long long chi;
    Rational lo;  // 24 chi, open
    Rational hi;  // 24 chi + 12 chi_F / N
    bool closed;

    bool contains(const Rational& sigma) const {
        if (!(sigma > lo)) return false;
        return closed ? sigma <= hi : sigma < hi;
    }
};

long long max_index_for(const Rational& hi) {
    // Largest r >= 2 with r - 1/r <= hi; 1 if even r = 2 does not fit.
    long long r = 1;
    while (entry_weight(r + 1) <= hi) ++r;
    return r;
}

// Expands all canonical b-assignments of an r-multiset, filters by the chi(mK) >= 0 test and
// appends the survivors.
class BAssigner {
public:
    BAssigner(const ChiWindow& win, int chi_F, const Rational& sigma,
              const std::vector<std::pair<long long, long long>>& groups,
              std::vector<SearchResult>& out)
        : win_(win), chi_F_(chi_F), sigma_(sigma), groups_(groups), out_(out) {
        entries_.reserve(groups.size() * 2);
    }

    void run() { expand(0); }

private:
    void expand(std::size_t gi) {
        if (gi == groups_.size()) {
            Basket basket(entries_, win_.chi);
            if (chi_mk_nonnegative(basket)) {
                Rational lambda = Rational(12 * chi_F_) / (sigma_ - win_.lo);
                out_.push_back(SearchResult{std::move(basket), sigma_, std::move(lambda)});
            }
            return;
        }
        auto [r, count] = groups_[gi];
        const auto bs = canonical_bs(r);
        chooseB(gi, r, count, bs, 0);
    }

    void chooseB(std::size_t gi, long long r, long long left, const std::vector<long long>& bs,
                 std::size_t from) {
        if (left == 0) {
            expand(gi + 1);
            return;
        }
        for (std::size_t t = from; t < bs.size(); ++t) {
            entries_.push_back(BasketEntry{r, bs[t], 1});
            chooseB(gi, r, left - 1, bs, t);
            entries_.pop_back();
        }
    }

    const ChiWindow& win_;
    int chi_F_;
    const Rational& sigma_;
    const std::vector<std::pair<long long, long long>>& groups_;
    std::vector<SearchResult>& out_;
    std::vector<BasketEntry> entries_;
};

// The sigma of a basket depends only on the multiset of indices r, so the
// walk runs over r-multisets and expands residues b only at window hits.
class RWalker {
public:
    RWalker(const ChiWindow& win, int chi_F, long long r_max, std::vector<SearchResult>& out)
        : win_(win), chi_F_(chi_F), r_max_(r_max), out_(out) {}

    void run_root() { maybe_emit(Rational(0)); }

    // Subtree of multisets whose smallest index is exactly first_r.
    void run_subtree(long long first_r) {
        Rational sigma = entry_weight(first_r);
        if (sigma > win_.hi) return;
        groups_.push_back({first_r, 1});
        walk(first_r, sigma);
        groups_.pop_back();
    }

private:
    void maybe_emit(const Rational& sigma) {
        if (win_.contains(sigma)) {
            BAssigner(win_, chi_F_, sigma, groups_, out_).run();
        }
    }

    void walk(long long min_r, const Rational& sigma) {
        maybe_emit(sigma);
        for (long long r = min_r; r <= r_max_; ++r) {
            Rational next = sigma + entry_weight(r);
            if (next > win_.hi) break;  // weights increase with r
            if (!groups_.empty() && groups_.back().first == r) {
                ++groups_.back().second;
                walk(r, next);
                --groups_.back().second;
            } else {
                groups_.push_back({r, 1});
                walk(r, next);
                groups_.pop_back();
            }
        }
    }

    const ChiWindow& win_;
    int chi_F_;
    long long r_max_;
    std::vector<SearchResult>& out_;
    std::vector<std::pair<long long, long long>> groups_;
};

std::vector<ChiWindow> chi_windows(const SearchWindow& window) {
    Rational width = Rational(12 * window.chi_F) / window.threshold;
    std::vector<ChiWindow> wins;
    wins.reserve(window.chi_values.size());
    for (long long chi : window.chi_values) {
        Rational lo(24 * chi);
        wins.push_back(ChiWindow{chi, lo, lo + width, window.comparison == Comparison::Closed});
    }
    return wins;
}

void sort_and_check(std::vector<SearchResult>& results) {
    std::sort(results.begin(), results.end(), result_less);
    for (std::size_t i = 1; i < results.size(); ++i) {
        if (results[i - 1].basket == results[i].basket) {
            throw std::logic_error("enumeration produced a duplicate basket");
        }
    }
}

}  // namespace

std::vector<SearchResult> enumerate_baskets(const SearchWindow& window, int jobs) {
    window.validate();
    if (jobs < 1) {
        throw std::invalid_argument("enumerate_baskets: jobs must be >= 1");
    }
    auto sorted_chis = window.chi_values;
    std::sort(sorted_chis.begin(), sorted_chis.end());
    sorted_chis.erase(std::unique(sorted_chis.begin(), sorted_chis.end()), sorted_chis.end());
    SearchWindow canon = window;
    canon.chi_values = sorted_chis;

    const auto wins = chi_windows(canon);
    std::vector<SearchResult> results;

    // Tasks: per chi the empty multiset plus one subtree per smallest index.
    struct Task {
        const ChiWindow* win;
        long long first_r;  // 0 = the empty-multiset root
    };
    std::vector<Task> tasks;
    std::vector<long long> r_maxes;
    r_maxes.reserve(wins.size());
    for (const auto& w : wins) {
        long long r_max = max_index_for(w.hi);
        r_maxes.push_back(r_max);
        tasks.push_back({&w, 0});
        for (long long r = 2; r <= r_max; ++r) tasks.push_back({&w, r});
    }

    auto run_task = [&](const Task& t, std::vector<SearchResult>& out) {
        std::size_t wi = static_cast<std::size_t>(t.win - wins.data());
        RWalker walker(*t.win, canon.chi_F, r_maxes[wi], out);
        if (t.first_r == 0) {
            walker.run_root();
        } else {
            walker.run_subtree(t.first_r);
        }
    };

    if (jobs == 1) {
        for (const auto& t : tasks) run_task(t, results);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::vector<SearchResult>> buffers(static_cast<std::size_t>(jobs));
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(jobs));
        for (int w = 0; w < jobs; ++w) {
            workers.emplace_back([&, w]() {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= tasks.size()) break;
                    run_task(tasks[i], buffers[static_cast<std::size_t>(w)]);
                }
            });
        }
        for (auto& th : workers) th.join();
        for (auto& buf : buffers) {
            results.insert(results.end(), std::make_move_iterator(buf.begin()),
                           std::make_move_iterator(buf.end()));
        }
    }

    sort_and_check(results);
    return results;
}

LambdaCheckReport max_lambda_check(FiberPreset fiber, const Rational& claimed_bound, int jobs) {
    if (claimed_bound.sign() <= 0) {
        throw std::invalid_argument("max_lambda_check: claimed bound must be positive");
    }
    auto make = [&](Comparison cmp) {
        return fiber == FiberPreset::K3 ? SearchWindow::k3(claimed_bound, cmp)
                                        : SearchWindow::enriques(claimed_bound, cmp);
    };
    LambdaCheckReport report;
    report.empty_above = enumerate_baskets(make(Comparison::Strict), jobs).empty();
    report.witnesses_at_bound = enumerate_baskets(make(Comparison::Closed), jobs);
    return report;
}

std::vector<SearchResult> brute_force_oracle(const SearchWindow& window, int r_cap, int count_cap) {
    window.validate();
    if (r_cap < 2 || r_cap > 12) {
        throw std::invalid_argument("brute_force_oracle: r_cap must lie in [2, 12]");
    }
    if (count_cap < 0 || count_cap > 8) {
        throw std::invalid_argument("brute_force_oracle: count_cap must lie in [0, 8]");
    }
    std::vector<BasketEntry> types;
    for (long long r = 2; r <= r_cap; ++r) {
        for (long long b : canonical_bs(r)) types.push_back({r, b, 1});
    }
    SearchWindow canon = window;
    std::sort(canon.chi_values.begin(), canon.chi_values.end());
    canon.chi_values.erase(std::unique(canon.chi_values.begin(), canon.chi_values.end()),
                           canon.chi_values.end());
    const auto wins = chi_windows(canon);
    std::vector<SearchResult> results;
    std::vector<BasketEntry> current;

    auto filter = [&](const Rational& sigma) {
        for (const auto& w : wins) {
            if (!w.contains(sigma)) continue;
            Basket basket(current, w.chi);
            if (chi_mk_nonnegative(basket)) {
                Rational lambda = Rational(12 * window.chi_F) / (sigma - w.lo);
                results.push_back(SearchResult{std::move(basket), sigma, std::move(lambda)});
            }
        }
    };

    // Plain multiset generation over entry types, no pruning.
    auto rec = [&](auto&& self, std::size_t from, int left, const Rational& sigma) -> void {
        filter(sigma);
        if (left == 0) return;
        for (std::size_t t = from; t < types.size(); ++t) {
            current.push_back(types[t]);
            self(self, t, left - 1, sigma + entry_weight(types[t].r));
            current.pop_back();
        }
    };
    rec(rec, 0, count_cap, Rational(0));

    sort_and_check(results);
    return results;
}

}  // namespace pluribound
