#include "paracr/ode_bridge.hpp"

#include <algorithm>
#include <set>

#include "paracr/series.hpp"

namespace paracr {

namespace {

WeightedPoly var(Var v, const Grading& g, int L = kExactOrder) { return WeightedPoly::variable(v, g, L); }

// f = F - a - bx, checked to be divisible by x^2.
WeightedPoly perturbation(const WeightedPoly& F)
{
    if (!F.dependsOnlyOn({Var::a, Var::b, Var::x}))
        throw StructuralError("surface must be a polynomial in (x, a, b)");
    const Grading& g = F.grading();
    const WeightedPoly f = F - var(Var::a, g) - var(Var::b, g) * var(Var::x, g);
    for (const auto& t : f.terms())
        if (t.mono.exponent(Var::x) < 2)
            throw DomainError("F - a - bx must be divisible by x^2 (offending term " + toString(t.mono) +
                              "): a and b are not the initial values y(0), y'(0)");
    return f;
}

}  // namespace

WeightedPoly odeToSurface(const OdeJet& B, int L)
{
    if (!B.dependsOnlyOn({Var::x, Var::y, Var::p}))
        throw StructuralError("ODE right-hand side must be a polynomial in (x, y, p)");
    const Grading& g = B.grading();
    const int order = std::min(L, B.isExact() ? L : B.order() + 2 * g.weight(Var::x));
    const WeightedPoly lead = var(Var::a, g) + var(Var::b, g) * var(Var::x, g);
    SeriesSystem rhs = [&](const std::vector<WeightedPoly>& u, int W) {
        const int inner = W - 2 * g.weight(Var::x);
        SeriesAssignment s;
        s.set(Var::y, u[0].truncated(inner)).set(Var::p, partial(u[0], Var::x).truncated(inner));
        WeightedPoly rhsB = inner >= 0 ? substitute(B, s, std::nullopt, inner) : WeightedPoly(g, inner);
        WeightedPoly twice = integrate(integrate(rhsB, Var::x), Var::x);
        return std::vector<WeightedPoly>{(lead.truncated(W) + twice).truncated(W).withOrder(W)};
    };
    return solveFixedPoint(rhs, {lead.truncated(0)}, order, 1, 1)[0];
}

EliminationData eliminateParameters(const WeightedPoly& F)
{
    const WeightedPoly f = perturbation(F).withOrder(kExactOrder);
    const WeightedPoly fx = partial(f, Var::x);
    const Grading& g = F.grading();
    const int L = F.order();
    if (L >= kExactOrder) throw StructuralError("elimination needs a truncated surface");
    const WeightedPoly y = var(Var::y, g), p = var(Var::p, g), x = var(Var::x, g);

    // The truncated F is treated as exact while solving; the b series is
    // then cut one order lower, where f_x stops being known.
    SeriesSystem rhs = [&](const std::vector<WeightedPoly>& u, int W) {
        SeriesAssignment s;
        s.set(Var::a, u[0]).set(Var::b, u[1]);
        WeightedPoly na = y.truncated(W) - mulTruncated(u[1], x, W) - substitute(f, s, std::nullopt, W);
        WeightedPoly nb = p.truncated(W) - substitute(fx, s, std::nullopt, W);
        return std::vector<WeightedPoly>{na.truncated(W), nb.truncated(W)};
    };
    auto sol = solveFixedPoint(rhs, {y.truncated(L), p.truncated(L)}, L, 1, 1);
    EliminationData d;
    d.aSeries = sol[0];
    d.bSeries = sol[1].truncated(L - g.weight(Var::x));
    d.phi = integrate(d.bSeries, Var::x) - mulKnown(x, p);
    return d;
}

WeightedPoly phiSeries(const WeightedPoly& F)
{
    const WeightedPoly f = perturbation(F).withOrder(kExactOrder);
    const Grading& g = F.grading();
    const int L = F.order();
    const WeightedPoly y = var(Var::y, g), p = var(Var::p, g), x = var(Var::x, g);
    SeriesSystem rhs = [&](const std::vector<WeightedPoly>& u, int W) {
        // phi_x enters f only through b, and f carries x^2, so relabelling
        // it to order W does not reach the weights being fixed.
        const WeightedPoly dphi = partial(u[0], Var::x).withOrder(W);
        SeriesAssignment s;
        s.set(Var::a, (y - mulTruncated(x, p, W) + u[0] - mulTruncated(x, dphi, W)).truncated(W))
            .set(Var::b, (p + dphi).truncated(W));
        return std::vector<WeightedPoly>{-substitute(f, s, std::nullopt, W)};
    };
    return solveFixedPoint(rhs, {WeightedPoly(g, L)}, L, 1, 0)[0];
}

OdeJet surfaceToOde(const WeightedPoly& F)
{
    const EliminationData d = eliminateParameters(F);
    const WeightedPoly Fxx = partial(F, Var::x, 2);
    SeriesAssignment s;
    s.set(Var::a, d.aSeries).set(Var::b, d.bSeries);
    return substitute(Fxx, s, std::nullopt, Fxx.order());
}

OdeNormalReport checkOdeNormal(const OdeJet& B)
{
    OdeNormalReport rep;
    std::set<std::pair<unsigned, unsigned>> bad;
    for (const auto& t : B.terms()) {
        const unsigned i = t.mono.exponent(Var::x), j = t.mono.exponent(Var::p);
        if (j <= 1 || (i <= 1 && j <= 3)) bad.insert({i, j});
    }
    rep.offending.assign(bad.begin(), bad.end());
    rep.normal = bad.empty();
    return rep;
}

WeightedPoly tresseFirstInvariant(const OdeJet& B) { return partial(B, Var::p, 4); }

std::pair<WeightedPoly, WeightedPoly> linearOdeSolutions(const Rational& r, const Rational& s, int L)
{
    auto G = [&](const std::vector<WeightedPoly>& d, int) { return -r * d[1] - s * d[0]; };
    WeightedPoly f1 = odeSolveSeries(Var::x, 2, {Rational(1), Rational(0)}, G, L);
    WeightedPoly f2 = odeSolveSeries(Var::x, 2, {Rational(0), Rational(1)}, G, L);
    return {f1, f2};
}

WeightedPoly linearOdeSurface(const Rational& r, const Rational& s, int L, const Grading& g)
{
    auto [f1, f2] = linearOdeSolutions(r, s, L);
    const WeightedPoly F = mulTruncated(var(Var::a, g), f1.regraded(g, L), L) +
                           mulTruncated(var(Var::b, g), f2.regraded(g, L), L);
    return F.truncated(L);
}

WeightedPoly wronskian(const WeightedPoly& f, const WeightedPoly& g)
{
    return partial(f, Var::x) * g - f * partial(g, Var::x);
}

}  // namespace paracr
