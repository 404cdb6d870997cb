#include "paracr/series.hpp"

#include <algorithm>
#include <string>

namespace paracr {

namespace {

int firstDifference(const WeightedPoly& p, const WeightedPoly& q, int order)
{
    WeightedPoly d = p.truncated(order) - q.truncated(order);
    return d.isZero() ? -1 : d.lowestWeight();
}

}  // namespace

std::vector<WeightedPoly> solveFixedPoint(const SeriesSystem& rhs,
                                          std::vector<WeightedPoly> initial, int order,
                                          int gain, int startWeight, std::vector<int> offsets)
{
    if (gain < 1) throw StructuralError("fixed point solve needs a positive gain");
    offsets.resize(initial.size(), 0);
    auto at = [&](std::size_t i, int base) { return std::min(base + offsets[i], order); };

    int known = startWeight - 1;
    std::vector<WeightedPoly> u;
    u.reserve(initial.size());
    for (std::size_t i = 0; i < initial.size(); ++i) u.push_back(initial[i].truncated(at(i, known)));

    while (known < order) {
        const int W = std::min(known + gain, order);
        std::vector<WeightedPoly> in;
        in.reserve(u.size());
        for (std::size_t i = 0; i < u.size(); ++i)
            in.push_back(u[i].truncated(at(i, known)).withOrder(at(i, W)));
        std::vector<WeightedPoly> r = rhs(in, W);
        if (r.size() != u.size()) throw StructuralError("fixed point system changed size");
        for (std::size_t i = 0; i < r.size(); ++i) {
            const int bad = firstDifference(r[i], u[i], at(i, known));
            if (bad >= 0)
                throw SolveStall("order-by-order solve stalls at weight " + std::to_string(bad) +
                                     " (component " + std::to_string(i) + ")",
                                 bad);
            u[i] = r[i].truncated(at(i, W));
        }
        known = W;
    }

    std::vector<WeightedPoly> in;
    for (const auto& s : u) in.push_back(s.withOrder(order));
    std::vector<WeightedPoly> check = rhs(in, order);
    for (std::size_t i = 0; i < u.size(); ++i) {
        const int bad = firstDifference(check[i], u[i], order);
        if (bad >= 0)
            throw SolveStall("solution fails the post-check at weight " + std::to_string(bad), bad);
        u[i] = u[i].withOrder(order);
    }
    return u;
}

WeightedPoly implicitSolve(const WeightedPoly& g, Var solveFor, int L)
{
    const Grading& gr = g.grading();
    SeriesSystem rhs = [&](const std::vector<WeightedPoly>& u, int W) {
        SeriesAssignment s;
        s.set(solveFor, u[0]);
        return std::vector<WeightedPoly>{substitute(g, s, std::nullopt, W)};
    };
    auto sol = solveFixedPoint(rhs, {WeightedPoly(gr, L)}, L);
    if (sol[0].dependsOn(solveFor))
        throw StructuralError(std::string("implicit solution still depends on ") + varName(solveFor));
    return sol[0];
}

std::vector<WeightedPoly> odeSolveSystem(const OdeSystem& sys, int L)
{
    const Grading g = Grading::totalDegree();
    const std::size_t count = sys.orders.size();
    if (sys.initial.size() != count) throw StructuralError("ODE system: initial data mismatch");
    for (std::size_t i = 0; i < count; ++i)
        if (sys.initial[i].size() != sys.orders[i])
            throw StructuralError("ODE system: unknown " + std::to_string(i) + " needs " +
                                  std::to_string(sys.orders[i]) + " initial conditions");

    // Taylor polynomial of the initial data.
    std::vector<WeightedPoly> base;
    for (std::size_t i = 0; i < count; ++i) {
        WeightedPoly b(g, L);
        Rational fact = 1;
        for (unsigned d = 0; d < sys.orders[i]; ++d) {
            if (d > 0) fact *= d;
            b += WeightedPoly::monomial(Monomial::of(sys.t, d), sys.initial[i][d] / fact, g, L);
        }
        base.push_back(b);
    }

    SeriesSystem rhs = [&](const std::vector<WeightedPoly>& u, int W) {
        std::vector<std::vector<WeightedPoly>> derivs(count);
        for (std::size_t i = 0; i < count; ++i) {
            derivs[i].push_back(u[i]);
            for (unsigned d = 1; d < sys.orders[i]; ++d)
                derivs[i].push_back(derivativeKeepingOrder(derivs[i].back(), sys.t, W));
        }
        std::vector<WeightedPoly> G = sys.rhs(derivs, W);
        if (G.size() != count) throw StructuralError("ODE right-hand side has wrong arity");
        std::vector<WeightedPoly> out;
        for (std::size_t i = 0; i < count; ++i) {
            WeightedPoly v = G[i].truncated(W);
            if (!v.dependsOnlyOn({sys.t}))
                throw StructuralError("ODE right-hand side must be a series in the independent variable");
            for (unsigned d = 0; d < sys.orders[i]; ++d) v = integrate(v, sys.t);
            out.push_back(base[i].truncated(W) + v.truncated(W));
        }
        return out;
    };
    // The Taylor polynomial of the initial data is already correct below the
    // smallest derivative order, which also keeps divisions by u' well defined.
    const int start = static_cast<int>(*std::min_element(sys.orders.begin(), sys.orders.end()));
    try {
        return solveFixedPoint(rhs, base, L, 1, start);
    } catch (const SolveStall& e) {
        throw SolveStall(std::string("ODE series solve: ") + e.what(), e.weight());
    }
}

WeightedPoly odeSolveSeries(Var t, unsigned n, std::vector<Rational> initial,
                            const std::function<WeightedPoly(const std::vector<WeightedPoly>&, int)>& G,
                            int L)
{
    OdeSystem sys;
    sys.t = t;
    sys.orders = {n};
    sys.initial = {std::move(initial)};
    sys.rhs = [&](const std::vector<std::vector<WeightedPoly>>& d, int W) {
        return std::vector<WeightedPoly>{G(d[0], W)};
    };
    return odeSolveSystem(sys, L)[0];
}

WeightedPoly reciprocal(const WeightedPoly& p)
{
    if (p.isExact()) throw StructuralError("reciprocal needs a truncation order");
    const Rational c0 = p.constantTerm();
    if (c0 == 0) throw StructuralError("reciprocal of a series without constant term");
    const WeightedPoly rest = p - WeightedPoly::constant(c0, p.grading(), p.order());
    if (rest.isZero()) return WeightedPoly::constant(1 / c0, p.grading(), p.order());
    const Rational inv = 1 / c0;
    SeriesSystem rhs = [&](const std::vector<WeightedPoly>& u, int W) {
        WeightedPoly r = WeightedPoly::constant(inv, p.grading(), W) -
                         inv * mulTruncated(rest, u[0], W);
        return std::vector<WeightedPoly>{r};
    };
    return solveFixedPoint(rhs, {WeightedPoly(p.grading(), p.order())}, p.order(),
                           rest.lowestWeight())[0];
}

WeightedPoly sqrtUnit(const WeightedPoly& p)
{
    if (p.isExact()) throw StructuralError("sqrt needs a truncation order");
    if (p.constantTerm() != 1) throw StructuralError("sqrtUnit expects constant term 1");
    const WeightedPoly one = WeightedPoly::constant(1, p.grading(), p.order());
    const WeightedPoly rest = p - one;
    if (rest.isZero()) return one;
    SeriesSystem rhs = [&](const std::vector<WeightedPoly>& u, int W) {
        WeightedPoly e = u[0].truncated(W) - one.truncated(W);
        // u = 1 + e with 2e + e^2 = rest
        WeightedPoly next = rest.truncated(W) - mulTruncated(e, e, W);
        next *= Rational(1, 2);
        return std::vector<WeightedPoly>{one.truncated(W) + next};
    };
    return solveFixedPoint(rhs, {one}, p.order(), rest.lowestWeight(), rest.lowestWeight())[0];
}

WeightedPoly reversion(const WeightedPoly& q, Var t)
{
    if (!q.dependsOnlyOn({t})) throw StructuralError("reversion expects a univariate series");
    const Grading& g = q.grading();
    const WeightedPoly tt = WeightedPoly::variable(t, g, q.order());
    if (q.coefficient(Monomial::of(t)) != 1 || q.constantTerm() != 0)
        throw StructuralError("reversion expects q = t + higher terms");
    const WeightedPoly r = q - tt;
    if (r.isZero()) return tt;
    const int gain = r.lowestWeight() - g.weight(t);
    SeriesSystem rhs = [&](const std::vector<WeightedPoly>& u, int W) {
        SeriesAssignment s;
        s.set(t, u[0]);
        return std::vector<WeightedPoly>{tt.truncated(W) - substitute(r, s, std::nullopt, W)};
    };
    return solveFixedPoint(rhs, {tt}, q.order(), gain, r.lowestWeight())[0];
}

WeightedPoly derivativeKeepingOrder(const WeightedPoly& p, Var t, int order)
{
    return partial(p, t).truncated(order).withOrder(order);
}

}  // namespace paracr
