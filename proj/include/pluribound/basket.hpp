#pragma once

#include "pluribound/rational.hpp"

#include <string>
#include <vector>

namespace pluribound {

/// One cyclic-quotient singularity datum: local index r and residue b,
/// with a multiplicity for repeated points. Requires 1 <= b <= r-1 and
/// gcd(b, r) = 1; canonical form additionally has b <= r/2.
struct BasketEntry {
    long long r = 2;
    long long b = 1;
    long long multiplicity = 1;

    friend bool operator==(const BasketEntry&, const BasketEntry&) = default;
};

/// Throws std::invalid_argument unless r >= 2, 1 <= b <= r-1, gcd(b, r) = 1
/// and multiplicity >= 1.
void validate_entry(const BasketEntry& e);

/// Canonical form: b replaced by min(b, r-b), entries sorted by (r, b),
/// equal entries merged. Every quantity computed from a basket is invariant
/// under b <-> r-b, so this loses nothing.
std::vector<BasketEntry> normalize_entries(std::vector<BasketEntry> entries);

/// A basket of singularities together with chi(O_X) and K^3.
/// Entries are always held in canonical form.
class Basket {
public:
    Basket() = default;
    Basket(std::vector<BasketEntry> entries, long long chi, Rational k_cubed = Rational(0));

    /// Parses the entry grammar "r,b" joined by ";" with an optional "xK"
    /// multiplicity suffix, e.g. "2,1x8;3,1x6;7,1;7,2;7,3". Whitespace is
    /// ignored. Throws std::invalid_argument on malformed input.
    static std::vector<BasketEntry> parse_entries(const std::string& text);
    static Basket parse(const std::string& text, long long chi, Rational k_cubed = Rational(0));

    const std::vector<BasketEntry>& entries() const { return entries_; }
    long long chi() const { return chi_; }
    const Rational& k_cubed() const { return k_cubed_; }

    /// Total number of singular points (multiplicities summed).
    long long point_count() const;

    /// Entry grammar round-trip of the canonical form.
    std::string str() const;

    friend bool operator==(const Basket&, const Basket&) = default;

private:
    std::vector<BasketEntry> entries_;
    long long chi_ = 0;
    Rational k_cubed_ = Rational(0);
};

/// Re-canonicalizes a basket. The constructor already does this, so the map
/// is idempotent; it exists as the named operation on raw entry data.
Basket normalize(const Basket& basket);

/// Local Riemann-Roch correction of one singularity at step j:
/// c(r-c)/(2r) with c = j*b mod r. Multiplicity is NOT applied.
Rational local_contribution(const BasketEntry& e, const BigInt& j);

/// l(m) = sum over entries (with multiplicity) and j = 1..m-1 of the local
/// contributions. Requires m >= 1.
Rational l_of_m(const Basket& basket, const BigInt& m);

/// chi(mK) = m(m-1)(2m-1)/12 * K^3 + (1-2m) chi + l(m). Requires m >= 1.
Rational chi_mK(const Basket& basket, const BigInt& m);

/// sigma = sum over entries (with multiplicity) of r - 1/r.
Rational basket_sigma(const Basket& basket);

/// K.c2 = -24 chi + sigma.
Rational k_dot_c2(const Basket& basket);

/// lambda = 12 chi_F / (sigma - 24 chi). Requires K^3 = 0, chi_F in {1, 2}
/// and sigma - 24 chi > 0; throws std::domain_error otherwise.
Rational lambda_from_basket(const Basket& basket, int chi_F);

/// Period of the correction term: lcm of the entry indices r (1 if empty).
BigInt chi_mk_period(const Basket& basket);

/// chi(mK) for m = 2 .. m_max inclusive, computed with running residues so a
/// full period costs O(m_max * entries). Requires K^3 = 0 and m_max >= 1.
std::vector<Rational> chi_mk_table(const Basket& basket, const BigInt& m_max);

/// True iff chi(mK) >= 0 for every m > 1. Requires K^3 = 0 (throws
/// std::domain_error otherwise). chi(m+L K) - chi(mK) = L (sigma - 24 chi)/12
/// with L the period, so checking m in [2, L+1] decides the universal
/// statement: a negative drift fails eventually, a non-negative drift makes
/// one clean period sufficient.
bool chi_mk_nonnegative(const Basket& basket);

}  // namespace pluribound
