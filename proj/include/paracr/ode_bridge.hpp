#pragma once

// Second order ODEs y'' = B(x, y, p) (p = y') and their solution surfaces
// y = F(x, a, b) with y(0) = a, y'(0) = b.
//
// Both sides share one grading: total degree, or the regular weights
// (y, a weight 2; x, p, b weight 1) under which the correspondence with
// normal forms of regular surfaces is graded.

#include <string>
#include <utility>
#include <vector>

#include "paracr/jet.hpp"

namespace paracr {

/// B in (x, y, p) with its grading and truncation.
using OdeJet = WeightedPoly;

/// F = a + bx + sum_{n>=2} c_n(a,b) x^n solving F_xx = B(x, F, F_x), to
/// order min(L, B.order() + 2).
WeightedPoly odeToSurface(const OdeJet& B, int L);

/// The inverse substitution (a, b) -> (x, y, p).
struct EliminationData {
    WeightedPoly aSeries;  ///< a(x, y, p), to F's order
    WeightedPoly bSeries;  ///< b(x, y, p), one order less
    WeightedPoly phi;      ///< integral_0^x b dt - x p
};

/// Solves y = F(x, a, b), p = F_x(x, a, b) for (a, b).  F must be
/// a + bx + f with x^2 dividing f.
EliminationData eliminateParameters(const WeightedPoly& F);

/// Solution of phi = -f(x, y - xp + phi - x phi_x, p + phi_x).  This
/// agrees with EliminationData::phi in its x^2 coefficient
/// (-f_xx(0, y, p) / 2) but not beyond: the implicit equation drops the
/// f_a a_x + f_b b_x terms of the x-derivative of the elimination.
WeightedPoly phiSeries(const WeightedPoly& F);

/// B(x, y, p) = F_xx(x, a(x,y,p), b(x,y,p)), to F's order minus 2.
OdeJet surfaceToOde(const WeightedPoly& F);

struct OdeNormalReport {
    bool normal = true;
    std::vector<std::pair<unsigned, unsigned>> offending;  ///< (i, j) of x^i p^j
};

/// Checks that the coefficients B_ij(y) of x^i p^j vanish for j in {0, 1}
/// and for (i, j) in {(0,2), (0,3), (1,2), (1,3)}.
OdeNormalReport checkOdeNormal(const OdeJet& B);

/// d^4 B / dp^4.
WeightedPoly tresseFirstInvariant(const OdeJet& B);

/// Solutions f1, f2 of y'' + r y' + s y = 0 (f1 = 1 + O(x^2), f2 = x + O(x^2))
/// as series in x to degree L.
std::pair<WeightedPoly, WeightedPoly> linearOdeSolutions(const Rational& r, const Rational& s, int L);

/// a f1(x) + b f2(x) in the given grading, to order L.
WeightedPoly linearOdeSurface(const Rational& r, const Rational& s, int L,
                              const Grading& g = Grading::regular());

/// f' g - f g' for series in x.
WeightedPoly wronskian(const WeightedPoly& f, const WeightedPoly& g);

}  // namespace paracr
