#pragma once

// Point transformations (x, y, a, b) -> (X(x,y), Y(x,y), A(a,b), B(a,b))
// preserving the fibration of the parameter space, and their action on
// surfaces y = F(a, b, x).

#include <string>

#include "paracr/jet.hpp"

namespace paracr {

/// Components are either exact polynomials or jets of the order at which
/// the map is used.  Each component must be s * v plus terms of higher
/// weight, with s a nonzero constant.
struct PointMap {
    WeightedPoly X, Y;  ///< in (x, y)
    WeightedPoly A, B;  ///< in (a, b)

    static PointMap identity(const Grading& g);
    const Grading& grading() const { return X.grading(); }
    void validate() const;
    PointMap truncated(int order) const;
    bool isIdentity() const;
};

std::string formatMap(const PointMap& m);

/// outer o inner, truncated at `order`.
PointMap compose(const PointMap& outer, const PointMap& inner, int order);

/// Compositional inverse to `order`.
PointMap invert(const PointMap& m, int order);

/// The surface F* with  Y(x, F) = F*(A, B, X(x, F)),  to F's order.  The
/// identity is re-checked on the result.
WeightedPoly applyMap(const WeightedPoly& F, const PointMap& m);

/// Y(x, F) - F*(A, B, X(x, F)), truncated at F's order.
WeightedPoly mapResidual(const WeightedPoly& F, const PointMap& m, const WeightedPoly& Fstar);

}  // namespace paracr
