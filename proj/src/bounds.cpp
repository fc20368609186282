#include "pluribound/bounds.hpp"

#include "pluribound/enumerate.hpp"
#include "pluribound/moduli.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pluribound {

const char* fiber_type_name(FiberType t) {
    switch (t) {
        case FiberType::K3: return "k3";
        case FiberType::Enriques: return "enriques";
        case FiberType::AbelianNonIsotrivial: return "abelian-nonisotrivial";
        case FiberType::AbelianIsotrivial: return "abelian-isotrivial";
        case FiberType::BiellipticIsotrivial: return "bielliptic-isotrivial";
        case FiberType::BiellipticNonIsotrivial: return "bielliptic-nonisotrivial";
        case FiberType::NonRationalBase: return "nonrational-base";
    }
    throw std::logic_error("fiber_type_name: unknown tag");
}

std::optional<FiberType> fiber_type_from_name(const std::string& name) {
    for (FiberType t : kAllFiberTypes) {
        if (name == fiber_type_name(t)) return t;
    }
    return std::nullopt;
}

int fiber_b(FiberType t) {
    switch (t) {
        case FiberType::K3: return 1;
        case FiberType::Enriques: return 2;
        case FiberType::AbelianNonIsotrivial: return 1;
        case FiberType::AbelianIsotrivial: return 1;
        case FiberType::BiellipticIsotrivial: return 6;
        case FiberType::BiellipticNonIsotrivial: return 6;
        case FiberType::NonRationalBase: return 6;
    }
    throw std::logic_error("fiber_b: unknown tag");
}

long long pluricanonical_threshold(const Rational& lambda_bound, long long divisibility) {
    if (lambda_bound.sign() < 0) {
        throw std::invalid_argument("pluricanonical_threshold: lambda bound must be >= 0");
    }
    if (divisibility < 1) {
        throw std::invalid_argument("pluricanonical_threshold: divisibility must be >= 1");
    }
    // Least integer strictly above 2 lambda + 1, rounded up to the divisor.
    Rational t = Rational(2) * lambda_bound + Rational(1);
    BigInt m0 = t.floor() + 1;
    BigInt d(divisibility);
    BigInt rem = m0 % d;
    if (rem != 0) m0 += d - rem;
    if (m0 > BigInt(std::numeric_limits<long long>::max())) {
        throw std::domain_error("pluricanonical_threshold: threshold out of range");
    }
    return static_cast<long long>(m0);
}

NonrationalBound nonrational_bound(int b_fiber) {
    if (b_fiber != 2 && b_fiber != 3 && b_fiber != 4 && b_fiber != 6) {
        throw std::invalid_argument("nonrational_bound: b must be one of {2, 3, 4, 6}");
    }
    NonrationalBound out;
    out.m_min_with_b_divisibility = 3LL * b_fiber;
    long long worst = 0;
    for (int b : {2, 3, 4, 6}) worst = std::max(worst, 3LL * b);
    out.div12_statement = ((worst + 11) / 12) * 12;
    return out;
}

namespace {

std::string rat(const Rational& x) { return x.str(); }

BoundCertificate from_lambda(FiberType fiber, Rational lambda, long long divisibility,
                             std::vector<std::string> provenance) {
    BoundCertificate cert;
    cert.fiber = fiber;
    cert.lambda_bound = std::move(lambda);
    cert.divisibility = divisibility;
    cert.m_min = pluricanonical_threshold(cert.lambda_bound, divisibility);
    std::ostringstream os;
    os << "pluricanonical_threshold: least m > 2*" << rat(cert.lambda_bound) << "+1 with "
       << divisibility << " | m is " << cert.m_min;
    provenance.push_back(os.str());
    provenance.push_back("direction: |mK| defines the fibration for every m >= " +
                         std::to_string(cert.m_min) + " divisible by " +
                         std::to_string(divisibility));
    cert.provenance = std::move(provenance);
    return cert;
}

BoundCertificate surface_fiber_bound(FiberType fiber, FiberPreset preset, const Rational& claimed,
                                     long long divisibility, int jobs) {
    LambdaCheckReport report = max_lambda_check(preset, claimed, jobs);
    if (!report.empty_above) {
        throw std::runtime_error(std::string(fiber_type_name(fiber)) +
                                 ": baskets above the claimed lambda bound " + claimed.str());
    }
    if (report.witnesses_at_bound.empty()) {
        throw std::runtime_error(std::string(fiber_type_name(fiber)) +
                                 ": no basket attains the claimed lambda bound " + claimed.str());
    }
    Rational lambda = report.witnesses_at_bound.front().lambda;
    for (const auto& w : report.witnesses_at_bound) {
        lambda = std::max(lambda, w.lambda);
    }
    std::vector<std::string> prov;
    std::ostringstream os;
    os << "max_lambda_check(" << (preset == FiberPreset::K3 ? "k3" : "enriques") << ", "
       << claimed.str() << "): strict window empty; " << report.witnesses_at_bound.size()
       << " witness basket(s) at the bound";
    prov.push_back(os.str());
    for (const auto& w : report.witnesses_at_bound) {
        prov.push_back("witness: chi=" + std::to_string(w.basket.chi()) + " basket=" +
                       w.basket.str() + " sigma=" + w.sigma.str() + " lambda=" + w.lambda.str());
    }
    prov.push_back("lambda bound = " + lambda.str() + " (largest witness lambda)");
    return from_lambda(fiber, lambda, divisibility, std::move(prov));
}

BoundCertificate moduli_fiber_bound(FiberType fiber, ModuliFiber mf, long long divisibility) {
    DegALowerBound lb = dega_lower_bound(mf);
    if (lb.overall.sign() <= 0) {
        throw std::runtime_error(std::string(fiber_type_name(fiber)) +
                                 ": moduli-degree lower bound is not positive");
    }
    Rational lambda = Rational(1) / lb.overall;
    std::vector<std::string> prov;
    prov.push_back(std::string("dega_lower_bound(") +
                   (mf == ModuliFiber::Abelian ? "abelian" : "bielliptic") +
                   "): overall = " + lb.overall.str());
    for (const auto& c : lb.cases) {
        std::string line = "case " + c.case_label + ": deg A >= " + c.bound.str();
        if (c.witness) {
            const auto& w = *c.witness;
            std::ostringstream os;
            os << " at b=" << w.b << " u=" << w.u << " (n,m,m')=(" << w.denoms[0] << ","
               << w.denoms[1] << "," << w.denoms[2] << ") alpha=" << w.alpha << " beta=" << w.beta
               << " gamma=" << w.gamma;
            line += os.str();
        }
        prov.push_back(line);
    }
    prov.push_back("lambda bound = 1 / deg A bound = " + lambda.str());
    return from_lambda(fiber, std::move(lambda), divisibility, std::move(prov));
}

BoundCertificate isotrivial_bound(FiberType fiber, long long divisibility) {
    HurwitzSignature sig = hurwitz_min_positive();
    if (sig.delta.sign() <= 0) {
        throw std::runtime_error("hurwitz_min_positive returned a non-positive delta");
    }
    Rational lambda = Rational(1) / sig.delta;
    std::vector<std::string> prov;
    std::ostringstream os;
    os << "hurwitz_min_positive(order_cap=84, count_cap=4): delta = " << sig.delta.str() << " at (";
    for (std::size_t i = 0; i < sig.orders.size(); ++i) {
        if (i) os << ",";
        os << sig.orders[i];
    }
    os << ")";
    prov.push_back(os.str());
    prov.push_back("lambda bound = 1/delta = " + lambda.str());
    return from_lambda(fiber, std::move(lambda), divisibility, std::move(prov));
}

BoundCertificate nonrational_base_bound(FiberType fiber) {
    long long worst_3b = 0;
    std::vector<std::string> prov;
    for (int b : {2, 3, 4, 6}) {
        NonrationalBound nb = nonrational_bound(b);
        worst_3b = std::max(worst_3b, nb.m_min_with_b_divisibility);
        prov.push_back("nonrational_bound(b=" + std::to_string(b) + "): |mK| defines for m >= " +
                       std::to_string(nb.m_min_with_b_divisibility) + " divisible by " +
                       std::to_string(b));
    }
    // Encode "m >= 3b for the worst b" as the threshold floor 2 lambda + 1,
    // so the certificate carries the same minimality invariant as the rest.
    Rational lambda(worst_3b - 1, 2);
    prov.push_back("worst 3b = " + std::to_string(worst_3b) +
                   "; least multiple of 12 above it is the uniform bound");
    BoundCertificate cert = from_lambda(fiber, std::move(lambda), 12, std::move(prov));
    NonrationalBound check = nonrational_bound(6);
    if (cert.m_min != check.div12_statement) {
        throw std::runtime_error("nonrational-base: threshold does not match the 12-divisible bound");
    }
    return cert;
}

}  // namespace

BoundCertificate fiber_bound(FiberType fiber, int jobs) {
    switch (fiber) {
        case FiberType::K3:
            return surface_fiber_bound(fiber, FiberPreset::K3, Rational(42), 1, jobs);
        case FiberType::Enriques:
            // |mK_F| is non-empty for even m only.
            return surface_fiber_bound(fiber, FiberPreset::Enriques, Rational(20), 2, jobs);
        case FiberType::AbelianNonIsotrivial:
            return moduli_fiber_bound(fiber, ModuliFiber::Abelian, 1);
        case FiberType::AbelianIsotrivial:
            return isotrivial_bound(fiber, 1);
        case FiberType::BiellipticIsotrivial:
            // b in {4, 6}; divisibility 12 covers both.
            return isotrivial_bound(fiber, 12);
        case FiberType::BiellipticNonIsotrivial:
            return moduli_fiber_bound(fiber, ModuliFiber::Bielliptic, 12);
        case FiberType::NonRationalBase:
            return nonrational_base_bound(fiber);
    }
    throw std::logic_error("fiber_bound: unknown tag");
}

std::vector<BoundCertificate> bound_table(int jobs) {
    std::vector<BoundCertificate> table;
    for (FiberType t : kAllFiberTypes) {
        table.push_back(fiber_bound(t, jobs));
    }
    return table;
}

}  // namespace pluribound
