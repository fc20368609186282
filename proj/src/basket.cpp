#include "pluribound/basket.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pluribound {

namespace mp = boost::multiprecision;

void validate_entry(const BasketEntry& e) {
    std::ostringstream what;
    if (e.r < 2) {
        what << "basket entry (" << e.r << "," << e.b << "): index r must be >= 2";
        throw std::invalid_argument(what.str());
    }
    if (e.b < 1 || e.b > e.r - 1) {
        what << "basket entry (" << e.r << "," << e.b << "): b must lie in [1, r-1]";
        throw std::invalid_argument(what.str());
    }
    if (std::gcd(e.b, e.r) != 1) {
        what << "basket entry (" << e.r << "," << e.b << "): gcd(b, r) must be 1";
        throw std::invalid_argument(what.str());
    }
    if (e.multiplicity < 1) {
        what << "basket entry (" << e.r << "," << e.b << "): multiplicity must be >= 1";
        throw std::invalid_argument(what.str());
    }
}

std::vector<BasketEntry> normalize_entries(std::vector<BasketEntry> entries) {
    for (auto& e : entries) {
        validate_entry(e);
        e.b = std::min(e.b, e.r - e.b);
    }
    std::sort(entries.begin(), entries.end(), [](const BasketEntry& a, const BasketEntry& b) {
        return a.r != b.r ? a.r < b.r : a.b < b.b;
    });
    std::vector<BasketEntry> merged;
    for (const auto& e : entries) {
        if (!merged.empty() && merged.back().r == e.r && merged.back().b == e.b) {
            merged.back().multiplicity += e.multiplicity;
        } else {
            merged.push_back(e);
        }
    }
    return merged;
}

Basket::Basket(std::vector<BasketEntry> entries, long long chi, Rational k_cubed)
    : entries_(normalize_entries(std::move(entries))), chi_(chi), k_cubed_(std::move(k_cubed)) {}

Basket normalize(const Basket& basket) {
    return Basket(basket.entries(), basket.chi(), basket.k_cubed());
}

namespace {

long long parse_ll(const std::string& text, std::size_t& pos, const std::string& full) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) {
        throw std::invalid_argument("basket string '" + full + "': expected a number at position " +
                                    std::to_string(start));
    }
    try {
        return std::stoll(text.substr(start, pos - start));
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("basket string '" + full + "': number out of range");
    }
}

void skip_ws(const std::string& text, std::size_t& pos) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
}

}  // namespace

std::vector<BasketEntry> Basket::parse_entries(const std::string& text) {
    std::vector<BasketEntry> out;
    std::size_t pos = 0;
    skip_ws(text, pos);
    if (pos == text.size()) {
        return out;  // empty basket
    }
    while (true) {
        BasketEntry e;
        e.r = parse_ll(text, pos, text);
        skip_ws(text, pos);
        if (pos >= text.size() || text[pos] != ',') {
            throw std::invalid_argument("basket string '" + text + "': expected ',' after index");
        }
        ++pos;
        e.b = parse_ll(text, pos, text);
        skip_ws(text, pos);
        if (pos < text.size() && (text[pos] == 'x' || text[pos] == 'X')) {
            ++pos;
            e.multiplicity = parse_ll(text, pos, text);
            skip_ws(text, pos);
        }
        validate_entry(e);
        out.push_back(e);
        if (pos == text.size()) break;
        if (text[pos] != ';') {
            throw std::invalid_argument("basket string '" + text + "': expected ';' between entries");
        }
        ++pos;
        skip_ws(text, pos);
        if (pos == text.size()) {
            throw std::invalid_argument("basket string '" + text + "': trailing ';'");
        }
    }
    return out;
}

Basket Basket::parse(const std::string& text, long long chi, Rational k_cubed) {
    return Basket(parse_entries(text), chi, std::move(k_cubed));
}

long long Basket::point_count() const {
    long long n = 0;
    for (const auto& e : entries_) n += e.multiplicity;
    return n;
}

std::string Basket::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& e : entries_) {
        if (!first) os << ";";
        first = false;
        os << e.r << "," << e.b;
        if (e.multiplicity > 1) os << "x" << e.multiplicity;
    }
    return os.str();
}

Rational local_contribution(const BasketEntry& e, const BigInt& j) {
    if (j < 0) {
        throw std::domain_error("local_contribution: j must be >= 0");
    }
    validate_entry(e);
    BigInt c = (j * e.b) % e.r;
    return Rational(c * (e.r - c), BigInt(2 * e.r));
}

Rational l_of_m(const Basket& basket, const BigInt& m) {
    if (m < 1) {
        throw std::domain_error("l_of_m: m must be >= 1");
    }
    // Running residues c = j*b mod r per entry; exact rational accumulation.
    Rational total(0);
    for (const auto& e : basket.entries()) {
        BigInt num(0);
        long long c = 0;
        for (BigInt j = 1; j < m; ++j) {
            c += e.b;
            if (c >= e.r) c -= e.r;
            num += BigInt(c) * (e.r - c);
        }
        total += Rational(num * e.multiplicity, BigInt(2 * e.r));
    }
    return total;
}

Rational chi_mK(const Basket& basket, const BigInt& m) {
    if (m < 1) {
        throw std::domain_error("chi_mK: m must be >= 1");
    }
    Rational cubic = Rational(m * (m - 1) * (2 * m - 1), BigInt(12)) * basket.k_cubed();
    return cubic + Rational(BigInt(1 - 2 * m) * basket.chi()) + l_of_m(basket, m);
}

Rational basket_sigma(const Basket& basket) {
    Rational total(0);
    for (const auto& e : basket.entries()) {
        total += Rational(BigInt(e.multiplicity) * (BigInt(e.r) * e.r - 1), BigInt(e.r));
    }
    return total;
}

Rational k_dot_c2(const Basket& basket) {
    return Rational(-24 * basket.chi()) + basket_sigma(basket);
}

Rational lambda_from_basket(const Basket& basket, int chi_F) {
    if (chi_F != 1 && chi_F != 2) {
        throw std::domain_error("lambda_from_basket: chi_F must be 1 or 2");
    }
    if (!basket.k_cubed().is_zero()) {
        throw std::domain_error("lambda_from_basket: requires K^3 = 0");
    }
    Rational denom = basket_sigma(basket) - Rational(24 * basket.chi());
    if (denom.sign() <= 0) {
        throw std::domain_error("lambda_from_basket: sigma - 24 chi must be positive");
    }
    return Rational(12 * chi_F) / denom;
}

BigInt chi_mk_period(const Basket& basket) {
    BigInt L = 1;
    for (const auto& e : basket.entries()) {
        L = mp::lcm(L, BigInt(e.r));
    }
    return L;
}

std::vector<Rational> chi_mk_table(const Basket& basket, const BigInt& m_max) {
    if (!basket.k_cubed().is_zero()) {
        throw std::domain_error("chi_mk_table: requires K^3 = 0");
    }
    if (m_max < 1) {
        throw std::domain_error("chi_mk_table: m_max must be >= 1");
    }
    std::vector<Rational> table;
    std::vector<long long> residues(basket.entries().size(), 0);
    Rational l(0);
    for (BigInt m = 2; m <= m_max; ++m) {
        for (std::size_t i = 0; i < basket.entries().size(); ++i) {
            const auto& e = basket.entries()[i];
            residues[i] = (residues[i] + e.b) % e.r;
            long long c = residues[i];
            l += Rational(e.multiplicity * c * (e.r - c), 2 * e.r);
        }
        table.push_back(Rational((1 - 2 * m) * basket.chi()) + l);
    }
    return table;
}

bool chi_mk_nonnegative(const Basket& basket) {
    if (!basket.k_cubed().is_zero()) {
        throw std::domain_error("chi_mk_nonnegative: requires K^3 = 0");
    }
    const long long chi = basket.chi();
    Rational drift = basket_sigma(basket) - Rational(24 * chi);
    if (drift.sign() < 0) {
        // chi(mK) decreases by |drift| * L / 12 per period; it goes negative
        // eventually no matter what the first period looks like.
        return false;
    }
    const BigInt L = chi_mk_period(basket);
    // Work over the fixed denominator 2L: the contribution of an entry at
    // step j is c(r-c) * (L/r) there, all integers.
    struct State {
        long long r;
        long long b;
        long long c;
        BigInt step;  // multiplicity * L / r
    };
    std::vector<State> states;
    states.reserve(basket.entries().size());
    for (const auto& e : basket.entries()) {
        states.push_back({e.r, e.b, 0, BigInt(e.multiplicity) * (L / e.r)});
    }
    const BigInt D = 2 * L;
    const BigInt chi_step = BigInt(-2) * chi * D;
    BigInt chi_term = BigInt(-3) * chi * D;  // (1 - 2m) chi D at m = 2
    BigInt l_scaled = 0;
    for (BigInt j = 1; j <= L; ++j) {
        for (auto& s : states) {
            s.c += s.b;
            if (s.c >= s.r) s.c -= s.r;
            l_scaled += s.step * (BigInt(s.c) * (s.r - s.c));
        }
        if (chi_term + l_scaled < 0) {
            return false;
        }
        chi_term += chi_step;
    }
    return true;
}

}  // namespace pluribound
