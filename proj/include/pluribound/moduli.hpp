#pragma once

#include "pluribound/rational.hpp"

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pluribound {

/// A point of the reduced moduli-degree expression together with its value:
///   value = alpha/(b u n) + beta/(b m) + gamma/(b m') - 1/u,
/// where (n, m, m') is a permutation of (8, 10, 12), u in [2, 12] and
/// b in {1, 4, 6}. A zero numerator means that slot carries no contribution.
struct DegAWitness {
    int b = 1;
    int u = 2;
    std::array<int, 3> denoms{8, 10, 12};  // (n, m, m')
    long long alpha = 1;
    long long beta = 1;
    long long gamma = 1;
    Rational value;

    friend bool operator==(const DegAWitness&, const DegAWitness&) = default;
};

struct CaseBound {
    std::string case_label;
    Rational bound;
    std::optional<DegAWitness> witness;
};

struct HurwitzSignature {
    std::vector<long long> orders;
    Rational delta;
};

/// Evaluates the reduced expression. Requires u in [2,12], denoms a
/// permutation of (8,10,12), alpha/beta/gamma >= 0 and b in {1,4,6}.
Rational eval_degA_expr(int u, const std::array<int, 3>& denoms, long long alpha, long long beta,
                        long long gamma, int b);

/// Minimum strictly positive value of the moduli-degree expression over the
/// admissible configurations with exactly one u_P > 1, minimized over
/// u in [2,12] and b in b_values.
///
/// A configuration is a finite set of points; at each point the fractional
/// part of the moduli divisor is a_P/n_P in lowest terms (n_P its Cartier
/// index, drawn from the Euler-phi-admissible set {1,...,6,8,10,12}) and the
/// boundary coefficient refines it by k_P/(b n_P) steps, k_P in [0, b n_P).
/// The distinguished point contributes a'/n' + k'/(b n' u) - 1/u. The result
/// is reported in the aggregated (alpha, beta, gamma) coordinates above.
///
/// Ties between configurations attaining the minimum are resolved toward
/// smaller b, then smaller u, then denominator triples in descending
/// lexicographic order, then witnesses with beta <= m and gamma <= m', then
/// the smallest (alpha, beta, gamma).
DegAWitness min_positive_degA(const std::set<int>& b_values);

enum class ModuliFiber { Abelian, Bielliptic };

struct DegALowerBound {
    Rational overall;
    std::vector<CaseBound> cases;
};

/// The case analysis for the moduli-degree lower bound: closed forms for
/// |I| = 0, |I| >= 2 and u >= 13, plus the computed |I| = 1, u <= 12 search.
DegALowerBound dega_lower_bound(ModuliFiber fiber);

/// delta = -2 + sum (1 - 1/m_i).
Rational hurwitz_delta(const std::vector<long long>& orders);

/// Signature minimizing delta > 0 over multisets of at most count_cap orders,
/// each in [2, order_cap]. Requires order_cap >= 7 and count_cap >= 3; any
/// multiset with delta < 1/6 has at most 4 entries since each term is >= 1/2.
HurwitzSignature hurwitz_min_positive(long long order_cap = 84, int count_cap = 4);

/// { n >= 1 : phi(n) <= betti_bound }, phi the Euler totient. Finite because
/// phi(n) >= sqrt(n/2). Requires betti_bound >= 1.
std::vector<long long> admissible_indices(long long betti_bound);

/// Exact Euler totient.
long long euler_phi(long long n);

}  // namespace pluribound
