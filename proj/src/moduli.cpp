#include "pluribound/moduli.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace pluribound {

namespace {

constexpr std::array<int, 9> kAdmissibleN{1, 2, 3, 4, 5, 6, 8, 10, 12};

const std::array<std::array<int, 3>, 6> kPerms{{{8, 10, 12},
                                                {8, 12, 10},
                                                {10, 8, 12},
                                                {10, 12, 8},
                                                {12, 8, 10},
                                                {12, 10, 8}}};

bool is_perm_8_10_12(const std::array<int, 3>& d) {
    std::array<int, 3> s = d;
    std::sort(s.begin(), s.end());
    return s == std::array<int, 3>{8, 10, 12};
}

void check_b(int b) {
    if (b != 1 && b != 4 && b != 6) {
        throw std::invalid_argument("deg A expression: b must be 1, 4 or 6");
    }
}

}  // namespace

Rational eval_degA_expr(int u, const std::array<int, 3>& denoms, long long alpha, long long beta,
                        long long gamma, int b) {
    if (u < 2 || u > 12) {
        throw std::invalid_argument("deg A expression: u must lie in [2, 12]");
    }
    if (!is_perm_8_10_12(denoms)) {
        throw std::invalid_argument("deg A expression: denominators must be a permutation of (8,10,12)");
    }
    if (alpha < 0 || beta < 0 || gamma < 0) {
        throw std::invalid_argument("deg A expression: numerators must be >= 0");
    }
    check_b(b);
    return Rational(alpha, static_cast<long long>(b) * u * denoms[0]) +
           Rational(beta, static_cast<long long>(b) * denoms[1]) +
           Rational(gamma, static_cast<long long>(b) * denoms[2]) - Rational(1, u);
}

namespace {

struct PointData {  // one point: moduli fraction a/n plus boundary k/(b n)
    int n = 1;
    int a = 0;
    int k = 0;

    friend auto operator<=>(const PointData&, const PointData&) = default;
};

// Scaled contribution tables over the denominator D = 120 b u. A point with
// Cartier index n > 1 must carry a moduli fraction a/n in lowest terms; a
// point with n = 1 is boundary-only with coefficient k/b.
std::map<long long, PointData> point_items(int b, long long D) {
    std::map<long long, PointData> items;
    auto offer = [&](long long scaled, PointData p) {
        if (scaled <= 0 || scaled > D) return;
        auto it = items.find(scaled);
        if (it == items.end() || p < it->second) items[scaled] = p;
    };
    for (int n : kAdmissibleN) {
        if (n == 1) {
            for (int k = 1; k < b; ++k) {
                offer(D / b * k, PointData{1, 0, k});
            }
            continue;
        }
        for (int a = 1; a < n; ++a) {
            if (std::gcd(a, n) != 1) continue;
            for (int k = 0; k < b * n; ++k) {
                // a/n + k/(b n), scaled by D = 120 b u
                long long scaled = D / n * a + D / (b * n) * k;
                offer(scaled, PointData{n, a, k});
            }
        }
    }
    return items;
}

std::map<long long, PointData> distinguished_items(int b, int u, long long D) {
    std::map<long long, PointData> items;
    auto offer = [&](long long scaled, PointData p) {
        auto it = items.find(scaled);
        if (it == items.end() || p < it->second) items[scaled] = p;
    };
    const long long minus_1_over_u = D / u;
    for (int n : kAdmissibleN) {
        if (n == 1) {
            for (int k = 0; k < b; ++k) {
                offer(D / (b * u) * k - minus_1_over_u, PointData{1, 0, k});
            }
            continue;
        }
        for (int a = 1; a < n; ++a) {
            if (std::gcd(a, n) != 1) continue;
            for (int k = 0; k < b * n; ++k) {
                long long scaled = D / n * a + D / (b * n * u) * k - minus_1_over_u;
                offer(scaled, PointData{n, a, k});
            }
        }
    }
    return items;
}

struct Attainer {
    int b;
    int u;
    PointData prime;            // the u_P > 1 point
    std::vector<PointData> points;
};

// Aggregates a configuration into the reduced (alpha, beta, gamma) form for
// one permutation of the denominators. Returns false when some part cannot
// be folded into any slot of this permutation.
bool aggregate(const Attainer& at, const std::array<int, 3>& denoms, DegAWitness& out) {
    const int n = denoms[0], m = denoms[1], mp = denoms[2];
    const int b = at.b, u = at.u;
    if (n % at.prime.n != 0) return false;
    long long alpha = static_cast<long long>(at.prime.a) * b * u * (n / at.prime.n) +
                      static_cast<long long>(at.prime.k) * (n / at.prime.n);
    long long beta = 0, gamma = 0;
    for (const auto& p : at.points) {
        if ((static_cast<long long>(u) * n) % p.n == 0) {
            alpha += static_cast<long long>(p.a) * b * (static_cast<long long>(u) * n / p.n) +
                     static_cast<long long>(p.k) * (static_cast<long long>(u) * n / p.n);
        } else if (m % p.n == 0) {
            beta += static_cast<long long>(p.a) * b * (m / p.n) +
                    static_cast<long long>(p.k) * (m / p.n);
        } else if (mp % p.n == 0) {
            gamma += static_cast<long long>(p.a) * b * (mp / p.n) +
                     static_cast<long long>(p.k) * (mp / p.n);
        } else {
            return false;
        }
    }
    out.b = b;
    out.u = u;
    out.denoms = denoms;
    out.alpha = alpha;
    out.beta = beta;
    out.gamma = gamma;
    return true;
}

// Tie-break key: (b, u, denoms descending, beta/gamma within (m, m'), then
// lexicographic numerators).
auto witness_key(const DegAWitness& w) {
    bool outside = w.beta > w.denoms[1] || w.gamma > w.denoms[2];
    return std::tuple(w.b, w.u, -w.denoms[0], -w.denoms[1], -w.denoms[2], outside, w.alpha, w.beta,
                      w.gamma);
}

}  // namespace

DegAWitness min_positive_degA(const std::set<int>& b_values) {
    if (b_values.empty()) {
        throw std::invalid_argument("min_positive_degA: no b values");
    }
    for (int b : b_values) check_b(b);

    std::optional<Rational> best;
    std::vector<Attainer> attainers;

    for (int b : b_values) {
        for (int u = 2; u <= 12; ++u) {
            const long long D = 120LL * b * u;
            const auto items = point_items(b, D);
            // Unbounded-multiset reachability with parent links, sums <= D.
            std::vector<long long> parent(static_cast<std::size_t>(D) + 1, -1);
            parent[0] = 0;
            for (long long s = 1; s <= D; ++s) {
                for (const auto& [v, rep] : items) {
                    if (v > s) break;
                    if (parent[static_cast<std::size_t>(s - v)] >= 0) {
                        parent[static_cast<std::size_t>(s)] = v;
                        break;
                    }
                }
            }
            std::vector<long long> next_reachable(static_cast<std::size_t>(D) + 2);
            next_reachable[static_cast<std::size_t>(D) + 1] = D + 1;
            for (long long s = D; s >= 0; --s) {
                next_reachable[static_cast<std::size_t>(s)] =
                    parent[static_cast<std::size_t>(s)] >= 0
                        ? s
                        : next_reachable[static_cast<std::size_t>(s) + 1];
            }

            for (const auto& [ps, prep] : distinguished_items(b, u, D)) {
                long long need = std::max<long long>(0, 1 - ps);
                if (need > D) continue;
                long long s = next_reachable[static_cast<std::size_t>(need)];
                if (s > D) continue;
                Rational total(ps + s, D);
                if (best && total > *best) continue;
                if (!best || total < *best) {
                    best = total;
                    attainers.clear();
                }
                Attainer at{b, u, prep, {}};
                long long rest = s;
                while (rest > 0) {
                    long long v = parent[static_cast<std::size_t>(rest)];
                    at.points.push_back(items.at(v));
                    rest -= v;
                }
                attainers.push_back(std::move(at));
            }
        }
    }

    if (!best) {
        throw std::logic_error("min_positive_degA: no positive value found");
    }

    std::optional<DegAWitness> chosen;
    for (const auto& at : attainers) {
        for (const auto& denoms : kPerms) {
            DegAWitness w;
            if (!aggregate(at, denoms, w)) continue;
            w.value = *best;
            if (!chosen || witness_key(w) < witness_key(*chosen)) chosen = w;
        }
    }
    if (!chosen) {
        throw std::logic_error("min_positive_degA: attainer could not be aggregated");
    }
    // The aggregation must reproduce the exact minimum.
    Rational check = eval_degA_expr(chosen->u, chosen->denoms, chosen->alpha, chosen->beta,
                                    chosen->gamma, chosen->b);
    if (check != *best) {
        throw std::logic_error("min_positive_degA: witness does not evaluate to the minimum");
    }
    return *chosen;
}

DegALowerBound dega_lower_bound(ModuliFiber fiber) {
    const bool bielliptic = fiber == ModuliFiber::Bielliptic;
    DegALowerBound out;
    // |I| = 0: 120 b (M + B) is integral, so deg A >= 1/(120 b).
    out.cases.push_back({"|I|=0", Rational(1, bielliptic ? 720 : 120), std::nullopt});
    out.cases.push_back({"|I|>=3 or some u>=3", Rational(1, 6), std::nullopt});
    out.cases.push_back({bielliptic ? "|I|=2" : "|I|=2, u=2", Rational(1, 6), std::nullopt});
    out.cases.push_back({"|I|=1, u>=13", Rational(1, 12) - Rational(1, 13), std::nullopt});
    DegAWitness w = min_positive_degA(bielliptic ? std::set<int>{4, 6} : std::set<int>{1});
    out.cases.push_back({"|I|=1, u<=12", w.value, w});
    out.overall = out.cases.front().bound;
    for (const auto& c : out.cases) {
        out.overall = std::min(out.overall, c.bound);
    }
    return out;
}

Rational hurwitz_delta(const std::vector<long long>& orders) {
    Rational delta(-2);
    for (long long m : orders) {
        if (m < 2) {
            throw std::invalid_argument("hurwitz_delta: orders must be >= 2");
        }
        delta += Rational(1) - Rational(1, m);
    }
    return delta;
}

HurwitzSignature hurwitz_min_positive(long long order_cap, int count_cap) {
    if (order_cap < 7) {
        throw std::invalid_argument("hurwitz_min_positive: order_cap must be >= 7");
    }
    if (count_cap < 3) {
        throw std::invalid_argument("hurwitz_min_positive: count_cap must be >= 3");
    }
    std::optional<Rational> best;
    std::vector<long long> best_orders;
    std::vector<long long> current;

    // delta only grows when a term is added or an order is increased, so a
    // branch dies as soon as its positive delta fails to beat the best.
    auto rec = [&](auto&& self, long long min_order, const Rational& delta) -> void {
        if (static_cast<int>(current.size()) == count_cap) return;
        for (long long m = min_order; m <= order_cap; ++m) {
            Rational d = delta + Rational(1) - Rational(1, m);
            if (d.sign() > 0) {
                if (best && d >= *best) break;
                best = d;
                best_orders = current;
                best_orders.push_back(m);
                break;  // larger m and further terms only increase delta
            }
            current.push_back(m);
            self(self, m, d);
            current.pop_back();
        }
    };
    rec(rec, 2, Rational(-2));

    if (!best) {
        throw std::logic_error("hurwitz_min_positive: no positive delta found");
    }
    return HurwitzSignature{best_orders, *best};
}

long long euler_phi(long long n) {
    if (n < 1) {
        throw std::invalid_argument("euler_phi: n must be >= 1");
    }
    long long result = n;
    long long rest = n;
    for (long long p = 2; p * p <= rest; ++p) {
        if (rest % p == 0) {
            while (rest % p == 0) rest /= p;
            result -= result / p;
        }
    }
    if (rest > 1) result -= result / rest;
    return result;
}

std::vector<long long> admissible_indices(long long betti_bound) {
    if (betti_bound < 1) {
        throw std::invalid_argument("admissible_indices: bound must be >= 1");
    }
    std::vector<long long> out;
    // phi(n) >= sqrt(n/2), so phi(n) > bound once n > 2 bound^2.
    const long long n_max = 2 * betti_bound * betti_bound + 1;
    for (long long n = 1; n <= n_max; ++n) {
        if (euler_phi(n) <= betti_bound) out.push_back(n);
    }
    return out;
}

}  // namespace pluribound
