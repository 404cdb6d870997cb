#include "paracr/point_map.hpp"

#include <algorithm>

#include "paracr/series.hpp"

namespace paracr {

namespace {

struct Split {
    Rational scale;
    WeightedPoly rest;  ///< component minus scale * v
};

Split splitComponent(const WeightedPoly& c, Var v, const char* name)
{
    Split s{c.coefficient(Monomial::of(v)), {}};
    if (s.scale == 0)
        throw DomainError(std::string("map component ") + name + " has no linear " + varName(v) + " term");
    s.rest = c - WeightedPoly::monomial(Monomial::of(v), s.scale, c.grading());
    if (!s.rest.isZero() && s.rest.lowestWeight() <= c.grading().weight(v))
        throw StructuralError(std::string("map component ") + name +
                              " must be a multiple of " + varName(v) + " plus terms of higher weight");
    return s;
}

int gainOf(const WeightedPoly& rest, Var v, int current)
{
    if (rest.isZero()) return current;
    return std::min(current, rest.lowestWeight() - rest.grading().weight(v));
}

WeightedPoly rescaled(const WeightedPoly& p, const Rational& sa, const Rational& sb, const Rational& sx)
{
    PolyBuilder out(p.grading(), p.order());
    const Rational ia = 1 / sa, ib = 1 / sb, ix = 1 / sx;
    for (const auto& t : p.terms()) {
        Rational c = t.coef;
        for (unsigned i = 0; i < t.mono.exponent(Var::a); ++i) c *= ia;
        for (unsigned i = 0; i < t.mono.exponent(Var::b); ++i) c *= ib;
        for (unsigned i = 0; i < t.mono.exponent(Var::x); ++i) c *= ix;
        out.add(t.mono, c);
    }
    return std::move(out).build();
}

}  // namespace

PointMap PointMap::identity(const Grading& g)
{
    return {WeightedPoly::variable(Var::x, g), WeightedPoly::variable(Var::y, g),
            WeightedPoly::variable(Var::a, g), WeightedPoly::variable(Var::b, g)};
}

void PointMap::validate() const
{
    if (!(X.grading() == Y.grading() && X.grading() == A.grading() && X.grading() == B.grading()))
        throw StructuralError("map components use different gradings");
    if (!X.dependsOnlyOn({Var::x, Var::y}) || !Y.dependsOnlyOn({Var::x, Var::y}))
        throw StructuralError("X and Y must depend on (x, y) only");
    if (!A.dependsOnlyOn({Var::a, Var::b}) || !B.dependsOnlyOn({Var::a, Var::b}))
        throw StructuralError("A and B must depend on (a, b) only");
}

PointMap PointMap::truncated(int order) const
{
    return {X.truncated(order), Y.truncated(order), A.truncated(order), B.truncated(order)};
}

bool PointMap::isIdentity() const
{
    const PointMap id = identity(grading());
    return X == id.X && Y == id.Y && A == id.A && B == id.B;
}

std::string formatMap(const PointMap& m)
{
    return "X = " + formatPoly(m.X) + "\nY = " + formatPoly(m.Y) + "\nA = " + formatPoly(m.A) +
           "\nB = " + formatPoly(m.B);
}

PointMap compose(const PointMap& outer, const PointMap& inner, int order)
{
    outer.validate();
    inner.validate();
    SeriesAssignment xy, ab;
    xy.set(Var::x, inner.X.truncated(order)).set(Var::y, inner.Y.truncated(order));
    ab.set(Var::a, inner.A.truncated(order)).set(Var::b, inner.B.truncated(order));
    return {substitute(outer.X, xy, std::nullopt, order), substitute(outer.Y, xy, std::nullopt, order),
            substitute(outer.A, ab, std::nullopt, order), substitute(outer.B, ab, std::nullopt, order)};
}

namespace {

// Inverts (u, v) -> (U, V) with U = s_u u + r_u, V = s_v v + r_v.
std::pair<WeightedPoly, WeightedPoly> invertPair(const WeightedPoly& U, const WeightedPoly& V, Var u, Var v,
                                                 int order)
{
    const Split su = splitComponent(U, u, "first");
    const Split sv = splitComponent(V, v, "second");
    const Grading& g = U.grading();
    const int gain = gainOf(sv.rest, v, gainOf(su.rest, u, order + 1));
    const WeightedPoly iu = WeightedPoly::monomial(Monomial::of(u), 1 / su.scale, g);
    const WeightedPoly iv = WeightedPoly::monomial(Monomial::of(v), 1 / sv.scale, g);
    if (gain > order) return {iu.truncated(order), iv.truncated(order)};

    const int wu = g.weight(u), wv = g.weight(v);
    const std::vector<int> offsets{wu, wv};
    SeriesSystem rhs = [&](const std::vector<WeightedPoly>& w, int W) {
        const int ou = std::min(W + wu, order), ov = std::min(W + wv, order);
        const int top = std::max(ou, ov);
        // Relabelling the lighter unknown is sound: an error in it at weight
        // beyond its own level only reaches r at weight > top.
        SeriesAssignment s;
        s.set(u, w[0].withOrder(top)).set(v, w[1].withOrder(top));
        WeightedPoly nu = (iu - substitute(su.rest, s, std::nullopt, ou) * (1 / su.scale)).truncated(ou);
        WeightedPoly nv = (iv - substitute(sv.rest, s, std::nullopt, ov) * (1 / sv.scale)).truncated(ov);
        return std::vector<WeightedPoly>{nu, nv};
    };
    auto sol = solveFixedPoint(rhs, {iu, iv}, order, gain, gain, offsets);
    return {sol[0], sol[1]};
}

}  // namespace

PointMap invert(const PointMap& m, int order)
{
    m.validate();
    auto [X, Y] = invertPair(m.X, m.Y, Var::x, Var::y, order);
    auto [A, B] = invertPair(m.A, m.B, Var::a, Var::b, order);
    return {X, Y, A, B};
}

WeightedPoly mapResidual(const WeightedPoly& F, const PointMap& m, const WeightedPoly& Fstar)
{
    const int L = F.order();
    SeriesAssignment onS;
    onS.set(Var::y, F);
    const WeightedPoly Fy = substitute(m.Y, onS, std::nullopt, L);
    const WeightedPoly Xf = substitute(m.X, onS, std::nullopt, L);
    SeriesAssignment back;
    back.set(Var::a, m.A.truncated(L)).set(Var::b, m.B.truncated(L)).set(Var::x, Xf);
    return (Fy - substitute(Fstar, back, std::nullopt, L)).truncated(L);
}

WeightedPoly applyMap(const WeightedPoly& F, const PointMap& m)
{
    m.validate();
    if (!(F.grading() == m.grading())) throw StructuralError("surface and map use different gradings");
    const Grading& g = F.grading();
    const int L = F.order();
    if (L >= kExactOrder) throw StructuralError("applyMap needs a truncated surface");

    const Split sx = splitComponent(m.X, Var::x, "X");
    const Split sy = splitComponent(m.Y, Var::y, "Y");
    const Split sa = splitComponent(m.A, Var::a, "A");
    const Split sb = splitComponent(m.B, Var::b, "B");
    (void)sy;

    SeriesAssignment onS;
    onS.set(Var::y, F);
    const WeightedPoly Fy = substitute(m.Y, onS, std::nullopt, L);
    const WeightedPoly Xf = substitute(m.X, onS, std::nullopt, L);

    // Write A = s_a (a + da) etc.; then G(a,b,x) = F*(s_a a, s_b b, s_x x)
    // solves G = Fy - (G(a + da, b + db, x + dx) - G).
    const WeightedPoly da = (sa.rest * (1 / sa.scale)).truncated(L);
    const WeightedPoly db = (sb.rest * (1 / sb.scale)).truncated(L);
    const WeightedPoly dx = ((Xf - WeightedPoly::monomial(Monomial::of(Var::x), sx.scale, g)) * (1 / sx.scale))
                                .truncated(L);
    int gain = L + 1;
    gain = gainOf(da, Var::a, gain);
    gain = gainOf(db, Var::b, gain);
    gain = gainOf(dx, Var::x, gain);

    WeightedPoly G = Fy;
    if (gain <= L && !Fy.isZero()) {
        SeriesSystem rhs = [&](const std::vector<WeightedPoly>& u, int W) {
            SeriesAssignment shift;
            shift.set(Var::a, WeightedPoly::variable(Var::a, g) + da.truncated(W))
                .set(Var::b, WeightedPoly::variable(Var::b, g) + db.truncated(W))
                .set(Var::x, WeightedPoly::variable(Var::x, g) + dx.truncated(W));
            const WeightedPoly moved = substitute(u[0], shift, std::nullopt, W);
            return std::vector<WeightedPoly>{Fy.truncated(W) - (moved - u[0])};
        };
        G = solveFixedPoint(rhs, {Fy}, L, gain, Fy.lowestWeight() + gain)[0];
    }
    WeightedPoly Fstar = rescaled(G, sa.scale, sb.scale, sx.scale).withOrder(L);

    if (!mapResidual(F, m, Fstar).isZero())
        throw std::logic_error("applyMap: transformed surface fails the residual check");
    return Fstar;
}

}  // namespace paracr
