#pragma once

// Order-by-order solvers for truncated series: fixed points, implicit
// equations, explicit ODE initial value problems, reciprocals, roots and
// univariate reversion.

#include <functional>
#include <vector>

#include "paracr/jet.hpp"

namespace paracr {

/// Evaluates the right-hand side of u = R(u) to the given order.
using SeriesSystem =
    std::function<std::vector<WeightedPoly>(const std::vector<WeightedPoly>& u, int order)>;

/// Solves u = R(u) mod weight order+1, starting from `initial` (correct
/// below `startWeight`).  Each pass fixes `gain` further weights: the
/// caller promises that changing u at weight >= w changes R(u) only at
/// weight >= w + gain.  A pass whose output disagrees with the already fixed
/// part throws SolveStall naming the first offending weight.  The final
/// solution is checked against R once more.
///
/// `offsets` shifts the bookkeeping per component: while the base weight is
/// K, component i is trusted below K + offsets[i] (capped at `order`).  This
/// is how unknowns of different weight, such as x and y, are solved together.
std::vector<WeightedPoly> solveFixedPoint(const SeriesSystem& rhs,
                                          std::vector<WeightedPoly> initial, int order,
                                          int gain = 1, int startWeight = 0,
                                          std::vector<int> offsets = {});

/// Solves v = g(v, params) for v, where g is a polynomial containing v.
/// Returns s with s == g(s) mod weight L+1.
WeightedPoly implicitSolve(const WeightedPoly& g, Var solveFor, int L);

/// Right-hand side of an explicit ODE system u_i^(n_i) = G_i(t, u, u', ...).
/// derivs[i][d] is the d-th derivative of unknown i (d < n_i), as a series
/// in t truncated at `order`.
using OdeRhs = std::function<std::vector<WeightedPoly>(
    const std::vector<std::vector<WeightedPoly>>& derivs, int order)>;

struct OdeSystem {
    Var t = Var::a;                             ///< independent variable
    std::vector<unsigned> orders;               ///< n_i per unknown
    std::vector<std::vector<Rational>> initial; ///< u_i^(d)(0) for d < n_i
    OdeRhs rhs;
};

/// Series solution of an initial value problem, one series per unknown,
/// in total-degree grading, truncated at t-degree L.
std::vector<WeightedPoly> odeSolveSystem(const OdeSystem& sys, int L);

/// Scalar convenience form: y^(n) = G(y, y', ..., y^(n-1)).
WeightedPoly odeSolveSeries(Var t, unsigned n, std::vector<Rational> initial,
                            const std::function<WeightedPoly(const std::vector<WeightedPoly>&, int)>& G,
                            int L);

/// 1/p for p with nonzero constant term, to p's order.
WeightedPoly reciprocal(const WeightedPoly& p);
/// sqrt(p) for p with constant term 1.
WeightedPoly sqrtUnit(const WeightedPoly& p);
/// Compositional inverse of a univariate series q(t) = t + (higher terms).
WeightedPoly reversion(const WeightedPoly& q, Var t);

/// d/dt of a univariate series; keeps the truncation label of the caller's
/// choice rather than lowering it (used inside ODE right-hand sides).
WeightedPoly derivativeKeepingOrder(const WeightedPoly& p, Var t, int order);

}  // namespace paracr
