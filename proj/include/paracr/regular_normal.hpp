#pragma once

// Normal forms of regular (type 2) surfaces y = a + bx + f(a,b,x).

#include <array>
#include <map>
#include <string>
#include <vector>

#include "paracr/jet.hpp"
#include "paracr/linalg.hpp"
#include "paracr/point_map.hpp"

namespace paracr {

/// A surface jet is a WeightedPoly in (a, b, x); its grading and order are
/// the jet's grading and truncation.
using SurfaceJet = WeightedPoly;

struct PreliminaryResult {
    SurfaceJet F;
    PointMap map;  ///< exact polynomial map, not filtration preserving
    unsigned m = 1, n = 1;  ///< leading mixed monomial b^m x^n
};

/// Removes pure-x and pure-b terms and scales the leading part, treating F
/// as an exact polynomial (the low-weight substitutions move higher terms
/// down, so the map cannot act on jets).  Uses F's grading: typeK gives k.
/// The leading mixed monomial b^m x^n (smallest m) gets coefficient 1.
PreliminaryResult preliminaryReduce(const SurfaceJet& F);

struct NormalConditions {
    bool leading = false;  ///< weight <= 2 part is a + bx
    std::array<bool, 5> holds{};  ///< (i) .. (v)
    bool all() const;
};

NormalConditions checkNormalConditions(const SurfaceJet& F);

/// Regular form a + bx + f: the leading part check normalizeJet and
/// geometricNormalize require.
void requireRegularPreliminary(const SurfaceJet& F);

struct NormalFormReport {
    SurfaceJet normalized;
    PointMap transform;  ///< applyMap(input, transform) == normalized
    std::map<int, std::vector<Monomial>> eliminatedByWeight;
    NormalConditions conditions;
    int rounds = 0;  ///< geometric pipeline only
    std::vector<std::string> log;
};

/// Weight by weight: P_nu = -T(V) + normal part, then Phi = id + V.
NormalFormReport normalizeJet(const SurfaceJet& F, Backend backend = Backend::Serial);

/// Univariate data along the chain through the origin.
struct ChainData {
    WeightedPoly p, q, psi, pi;  ///< series in t (total degree grading, t = a)
    WeightedPoly f22, f23, f32;  ///< coefficient functions of b^2x^2, b^2x^3, b^3x^2
};

/// Solves p'' = 2 f32 + p'^2 pi', pi'' = 2 f23 - pi'^2 p', q' = 1 + p' pi
/// with p, p', pi, pi', q vanishing at 0.
ChainData solveChain(const SurfaceJet& F);

/// The construction by explicit maps (chain straightening, implicit
/// solves, the scaling ODEs and the chain map), repeated in rounds until
/// the normal form conditions hold through F's order.
NormalFormReport geometricNormalize(const SurfaceJet& F);

/// Coefficient function of b^j x^l as a series in a.
WeightedPoly coefficientFunction(const SurfaceJet& F, unsigned j, unsigned l);

}  // namespace paracr
