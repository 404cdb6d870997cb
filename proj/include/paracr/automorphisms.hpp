#pragma once

// Isotropic infinitesimal automorphisms of surface jets: tangency of a
// vector field, the fields of the model y = a + b^m x^n, and the
// one-parameter test for normalized surfaces.  All verdicts hold up to the
// order of the jet only.

#include <string>
#include <vector>

#include "paracr/cm_operator.hpp"
#include "paracr/jet.hpp"

namespace paracr {

struct TangencyResidual {
    WeightedPoly residual;
    int order = 0;
    bool vanishes() const { return residual.isZero(); }
};

/// chi(y - F) restricted to y = F, truncated at F's order.
TangencyResidual applyField(const VFieldJet& chi, const WeightedPoly& F);

/// Residual vanishes through weight L (capped at F's order).
bool isInfinitesimalAutomorphism(const VFieldJet& chi, const WeightedPoly& F, int L);

struct ModelFields {
    VFieldJet chi0;  ///< x d/dx + b d/db + k a d/da + k y d/dy
    VFieldJet chi;   ///< n b d/db - m x d/dx
    VFieldJet chiK;  ///< a^2 d/da + (1/m) a b d/db + (1/n) x y d/dx + y^2 d/dy
};

ModelFields modelFields(unsigned m, unsigned n, const Grading& g);

struct PatternCheck {
    bool withA = true;   ///< every term of f is a^i (b^m x^n)^r
    bool strict = true;  ///< same, and no a-dependence
    std::vector<Monomial> offPattern;
};

/// f = F - a - b^m x^n is checked term by term.
PatternCheck monomialPatternCheck(const WeightedPoly& F, unsigned m, unsigned n);

enum class Isotropy { Model, OneParameter, Trivial };
const char* isotropyName(Isotropy v);

struct IsotropyReport {
    Isotropy verdict = Isotropy::Trivial;
    int order = 0;
    unsigned m = 0, n = 0;
    PatternCheck pattern;
    std::vector<std::pair<std::string, VFieldJet>> automorphisms;
};

/// F must already be in normal form, with leading part a + b^m x^n (found
/// as the mixed weight-k term with the least b-degree).
IsotropyReport isotropyReport(const WeightedPoly& F, int L);

}  // namespace paracr
