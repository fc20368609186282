#pragma once

#include "pluribound/basket.hpp"
#include "pluribound/rational.hpp"

#include <string>
#include <vector>

namespace pluribound {

enum class Comparison {
    Strict,  // lambda > N
    Closed,  // lambda >= N
};

/// An enumeration problem: find every basket whose lambda clears a threshold.
/// In sigma-space the window per chi is 24 chi < sigma < 24 chi + 12 chi_F / N
/// (strict) resp. <= (closed).
struct SearchWindow {
    int chi_F = 2;                      // chi(O_F): 2 for K3 fibers, 1 for Enriques
    std::vector<long long> chi_values;  // allowed chi(O_X), sorted unique
    Rational threshold;                 // N > 0
    Comparison comparison = Comparison::Strict;

    static SearchWindow k3(Rational threshold, Comparison cmp);        // chi in {0,1,2}
    static SearchWindow enriques(Rational threshold, Comparison cmp);  // chi in {1}

    /// Throws std::invalid_argument if chi_F is not 1 or 2 or threshold <= 0.
    void validate() const;

    /// Canonical one-line description; used as the cache key text.
    std::string describe() const;
};

struct SearchResult {
    Basket basket;  // canonical form, carries its chi
    Rational sigma;
    Rational lambda;

    friend bool operator==(const SearchResult&, const SearchResult&) = default;
};

/// Deterministic total order on results: by chi, then entries.
bool result_less(const SearchResult& a, const SearchResult& b);

/// The complete duplicate-free list of baskets over all chi in the window
/// whose sigma lies in the window and whose chi(mK) stays non-negative, each paired with
/// its exact lambda. Depth-first multiset walk in nondecreasing (r, b); a
/// branch is cut as soon as its partial sigma exceeds the upper endpoint.
/// With jobs > 1 disjoint subtrees run on worker threads; output is sorted
/// and identical to the single-threaded run.
std::vector<SearchResult> enumerate_baskets(const SearchWindow& window, int jobs = 1);

struct LambdaCheckReport {
    bool empty_above = false;                     // strict window at the bound came back empty
    std::vector<SearchResult> witnesses_at_bound; // closed-window results
};

enum class FiberPreset { K3, Enriques };

/// Runs the strict window at claimed_bound (expected empty) and the closed
/// window (collecting witnesses).
LambdaCheckReport max_lambda_check(FiberPreset fiber, const Rational& claimed_bound, int jobs = 1);

/// Naive unpruned generate-and-filter oracle over baskets with all r <= r_cap
/// and at most count_cap points; used only for cross-checking the walk.
/// Requires 2 <= r_cap <= 12 and 0 <= count_cap <= 8.
std::vector<SearchResult> brute_force_oracle(const SearchWindow& window, int r_cap, int count_cap);

}  // namespace pluribound
