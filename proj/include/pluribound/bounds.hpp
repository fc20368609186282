#pragma once

#include "pluribound/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pluribound {

/// The seven fiber situations of the effective-bound table, in report order.
enum class FiberType {
    K3,
    Enriques,
    AbelianNonIsotrivial,
    AbelianIsotrivial,
    BiellipticIsotrivial,
    BiellipticNonIsotrivial,
    NonRationalBase,
};

inline constexpr FiberType kAllFiberTypes[] = {
    FiberType::K3,
    FiberType::Enriques,
    FiberType::AbelianNonIsotrivial,
    FiberType::AbelianIsotrivial,
    FiberType::BiellipticIsotrivial,
    FiberType::BiellipticNonIsotrivial,
    FiberType::NonRationalBase,
};

const char* fiber_type_name(FiberType t);
std::optional<FiberType> fiber_type_from_name(const std::string& name);

/// Least b >= 1 with |bK_F| non-empty (for the bielliptic and non-rational
/// rows the worst of the admissible b values, covered by 12-divisibility).
int fiber_b(FiberType t);

/// An effective bound certificate: every m >= m_min with divisibility | m has
/// h^0(mK) >= 2, hence the pluricanonical system defines the fibration.
/// m_min is the least integer with m_min > 2 lambda_bound + 1 and
/// divisibility | m_min. Provenance records how each number was produced.
struct BoundCertificate {
    FiberType fiber = FiberType::K3;
    Rational lambda_bound;
    long long divisibility = 1;
    long long m_min = 0;
    std::vector<std::string> provenance;
};

/// Least integer m with m > 2 lambda_bound + 1 and divisibility | m.
/// Requires lambda_bound >= 0 and divisibility >= 1.
long long pluricanonical_threshold(const Rational& lambda_bound, long long divisibility);

struct NonrationalBound {
    long long m_min_with_b_divisibility = 0;  // 3b, the least defining multiple of b
    long long div12_statement = 0;            // least multiple of 12 covering every b
};

/// Over a non-rational base: |3bK| defines the fibration whenever |bK_F| is
/// non-empty with b >= 2. Requires b in {2, 3, 4, 6}.
NonrationalBound nonrational_bound(int b_fiber);

/// Builds the certificate for one fiber type, recomputing every ingredient
/// (enumerations and minimizations included). A search that fails to
/// reproduce its expected shape throws std::runtime_error; nothing is ever
/// silently substituted.
BoundCertificate fiber_bound(FiberType fiber, int jobs = 1);

/// Certificates for all seven fiber types, each recomputed from scratch.
std::vector<BoundCertificate> bound_table(int jobs = 1);

}  // namespace pluribound
