#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pluribound/bounds.hpp"
#include "pluribound/moduli.hpp"

#include <stdexcept>

using namespace pluribound;

namespace {

void check_certificate_invariants(const BoundCertificate& cert) {
    Rational floor_bound = Rational(2) * cert.lambda_bound + Rational(1);
    CHECK(Rational(cert.m_min) > floor_bound);
    CHECK(cert.m_min % cert.divisibility == 0);
    // Minimality: one divisibility step down violates the threshold.
    CHECK(Rational(cert.m_min - cert.divisibility) <= floor_bound);
    // Closure: the step up stays above the threshold, trivially.
    CHECK(Rational(cert.m_min + cert.divisibility) > floor_bound);
    CHECK(!cert.provenance.empty());
}

}  // namespace

TEST_CASE("threshold computation") {
    CHECK(pluricanonical_threshold(Rational(42), 1) == 86);
    CHECK(pluricanonical_threshold(Rational(20), 2) == 42);
    CHECK(pluricanonical_threshold(Rational(0), 1) == 2);
    CHECK(pluricanonical_threshold(Rational(360), 1) == 722);
    CHECK(pluricanonical_threshold(Rational(42), 12) == 96);
    CHECK(pluricanonical_threshold(Rational(2160), 12) == 4332);
    CHECK(pluricanonical_threshold(Rational(17, 2), 12) == 24);
    CHECK(pluricanonical_threshold(Rational(41, 2), 1) == 43);
    CHECK_THROWS_AS(pluricanonical_threshold(Rational(-1), 1), std::invalid_argument);
    CHECK_THROWS_AS(pluricanonical_threshold(Rational(5), 0), std::invalid_argument);
}

TEST_CASE("non-rational base bound") {
    auto b6 = nonrational_bound(6);
    CHECK(b6.m_min_with_b_divisibility == 18);
    CHECK(b6.div12_statement == 24);
    auto b2 = nonrational_bound(2);
    CHECK(b2.m_min_with_b_divisibility == 6);
    CHECK(b2.div12_statement == 24);
    CHECK(nonrational_bound(3).m_min_with_b_divisibility == 9);
    CHECK(nonrational_bound(4).m_min_with_b_divisibility == 12);
    CHECK_THROWS_AS(nonrational_bound(5), std::invalid_argument);
    CHECK_THROWS_AS(nonrational_bound(1), std::invalid_argument);
}

TEST_CASE("fiber type names round-trip") {
    for (FiberType t : kAllFiberTypes) {
        auto back = fiber_type_from_name(fiber_type_name(t));
        REQUIRE(back.has_value());
        CHECK(*back == t);
    }
    CHECK_FALSE(fiber_type_from_name("unknown").has_value());
}

TEST_CASE("fiber b values") {
    CHECK(fiber_b(FiberType::K3) == 1);
    CHECK(fiber_b(FiberType::Enriques) == 2);
    CHECK(fiber_b(FiberType::AbelianNonIsotrivial) == 1);
    CHECK(fiber_b(FiberType::BiellipticNonIsotrivial) == 6);
}

TEST_CASE("abelian non-isotrivial certificate") {
    BoundCertificate cert = fiber_bound(FiberType::AbelianNonIsotrivial);
    CHECK(cert.m_min == 722);
    CHECK(cert.divisibility == 1);
    CHECK(cert.lambda_bound == Rational(360));
    // Chain integrity: the lambda is the reciprocal of the recomputed bound.
    CHECK(cert.lambda_bound == Rational(1) / dega_lower_bound(ModuliFiber::Abelian).overall);
    check_certificate_invariants(cert);
}

TEST_CASE("abelian isotrivial certificate") {
    BoundCertificate cert = fiber_bound(FiberType::AbelianIsotrivial);
    CHECK(cert.m_min == 86);
    CHECK(cert.divisibility == 1);
    CHECK(cert.lambda_bound == Rational(1) / hurwitz_min_positive().delta);
    check_certificate_invariants(cert);
}

TEST_CASE("bielliptic certificates") {
    BoundCertificate iso = fiber_bound(FiberType::BiellipticIsotrivial);
    CHECK(iso.m_min == 96);
    CHECK(iso.divisibility == 12);
    CHECK(iso.lambda_bound == Rational(42));
    check_certificate_invariants(iso);

    BoundCertificate noniso = fiber_bound(FiberType::BiellipticNonIsotrivial);
    CHECK(noniso.m_min == 4332);
    CHECK(noniso.divisibility == 12);
    CHECK(noniso.lambda_bound == Rational(2160));
    CHECK(noniso.lambda_bound ==
          Rational(1) / dega_lower_bound(ModuliFiber::Bielliptic).overall);
    check_certificate_invariants(noniso);
}

TEST_CASE("non-rational base certificate") {
    BoundCertificate cert = fiber_bound(FiberType::NonRationalBase);
    CHECK(cert.m_min == 24);
    CHECK(cert.divisibility == 12);
    check_certificate_invariants(cert);
}

TEST_CASE("enriques certificate runs the search end to end") {
    BoundCertificate cert = fiber_bound(FiberType::Enriques);
    CHECK(cert.m_min == 42);
    CHECK(cert.divisibility == 2);
    CHECK(cert.lambda_bound == Rational(20));
    check_certificate_invariants(cert);
}
