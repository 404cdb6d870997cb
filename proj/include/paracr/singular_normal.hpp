#pragma once

// Finite type and the weighted jet normal form of singular (k > 2)
// surfaces y = a + b^m x^n + sum_{j>m} gamma_j b^j x^{k-j} + (weight > k).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "paracr/jet.hpp"
#include "paracr/linalg.hpp"
#include "paracr/point_map.hpp"
#include "paracr/regular_normal.hpp"

namespace paracr {

struct TypeData {
    int k = 0;
    unsigned m = 0, n = 0;
    std::vector<Rational> gammas;  ///< gamma_j for j = m+1 .. k-1 (after reduction)
    bool regular() const { return k == 2; }
};

struct TypeVerdict {
    std::optional<TypeData> type;  ///< empty: no mixed b^m x^n term up to `scannedTo`
    int scannedTo = 0;
};

/// k is read off F itself (the first mixed b^m x^n coefficient by total
/// degree); m, n and the gammas come from the preliminary reduction in the
/// weight-k grading.  Scans up to min(Lmax, F's order).
TypeVerdict finiteType(const WeightedPoly& F, int Lmax);

struct SingularPreliminary {
    SurfaceJet F;  ///< singular grading, order as the input's
    PointMap map;
    TypeData type;
};

/// Regrades F to the weight-k grading and reduces it to a + b^m x^n + ... .
SingularPreliminary prelimReduceSingular(const WeightedPoly& F);

/// Monomials of weight nu that the normal form excludes.
std::vector<Monomial> forbiddenMonomials(int k, unsigned m, unsigned n, int nu);
bool isForbidden(Monomial mono, int k, unsigned m, unsigned n);

struct SingularCheck {
    bool leading = false;  ///< weight-k part is a + b^m x^n + higher-b mixed terms
    bool normal = false;
    std::map<int, std::vector<Monomial>> offending;
};

SingularCheck checkSingularNormal(const SurfaceJet& F, const TypeData& t);

struct SingularNormalReport {
    SurfaceJet normalized;
    PointMap transform;
    TypeData type;
    std::map<int, std::vector<Monomial>> eliminatedByWeight;
    SingularCheck check;
};

/// F must be in the reduced form in the singular grading.  Each weight is
/// split against the tangency operator of the weight-k model with columns
/// in the order alpha, beta, eta, xi; infeasibility throws.
SingularNormalReport normalizeSingularJet(const SurfaceJet& F, Backend backend = Backend::Serial);

/// The weight-k model part of a reduced F, with its type data.
TypeData readLeadingType(const SurfaceJet& F);

}  // namespace paracr
