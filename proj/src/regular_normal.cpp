#include "paracr/regular_normal.hpp"

#include <memory>
#include <mutex>
#include <optional>

#include "paracr/cm_operator.hpp"
#include "paracr/series.hpp"

namespace paracr {

namespace {

WeightedPoly var(Var v, const Grading& g) { return WeightedPoly::variable(v, g); }

int floorDiv(int n, int d) { return n >= 0 ? n / d : -((-n + d - 1) / d); }

bool onlyIn(Monomial m, std::initializer_list<Var> vars)
{
    for (Var v : kAllVars) {
        if (m.exponent(v) == 0) continue;
        bool listed = false;
        for (Var w : vars) listed = listed || w == v;
        if (!listed) return false;
    }
    return true;
}

WeightedPoly exactPoly(const WeightedPoly& p, int L) { return p.truncated(L).withOrder(kExactOrder); }

}  // namespace

// ------------------------------------------------------------ preliminary

PreliminaryResult preliminaryReduce(const SurfaceJet& F0)
{
    if (!F0.dependsOnlyOn({Var::a, Var::b, Var::x}))
        throw StructuralError("surface must be a polynomial in (a, b, x)");
    const Grading g = F0.grading();
    const int k = g.typeK;
    const int L = F0.order();
    const WeightedPoly a = var(Var::a, g), b = var(Var::b, g);

    WeightedPoly F = F0.withOrder(kExactOrder);
    PointMap M = PointMap::identity(g);
    for (int it = 0;; ++it) {
        if (it > k + 4) throw DomainError("preliminary reduction did not settle");
        const Rational c = F.coefficient(Monomial::of(Var::a));
        if (c == 0) throw DomainError("F_a(0) = 0: the surface is not solvable for a");
        WeightedPoly pureB(g, kExactOrder), pureX(g, kExactOrder);
        for (const auto& t : F.terms()) {
            if (g.weight(t.mono) > k) continue;
            const WeightedPoly term = WeightedPoly::monomial(t.mono, t.coef, g);
            if (!t.mono.isOne() && onlyIn(t.mono, {Var::b})) pureB += term;
            if (onlyIn(t.mono, {Var::x})) pureX += term;
        }
        if (pureB.isZero() && pureX.isZero() && c == 1) break;
        // y* = y - pureX(x),  a* = c a + pureB(b)
        SeriesAssignment s;
        s.set(Var::a, (a - pureB) * (1 / c));
        F = substitute(F - pureX, s);
        SeriesAssignment onB;
        onB.set(Var::b, M.B);
        M.Y = M.Y - pureX;
        M.A = c * M.A + substitute(pureB, onB);
    }

    PreliminaryResult out;
    Rational gamma = 0;
    for (const auto& t : F.terms()) {
        const unsigned j = t.mono.exponent(Var::b), l = t.mono.exponent(Var::x);
        if (t.mono.exponent(Var::a) != 0 || j == 0 || l == 0) continue;
        const int w = g.weight(t.mono);
        if (w < k)
            throw DomainError("mixed term " + toString(t.mono) + " below weight " + std::to_string(k) +
                              ": the surface has lower type than the grading assumes");
        if (w == k && (gamma == 0 || j < out.m)) {
            gamma = t.coef;
            out.m = j;
            out.n = l;
        }
    }
    if (gamma == 0) {
        if (k == 2)
            throw DomainError("F_bx(0) = 0: the surface is not regular (use normalize-singular)");
        throw DomainError("no mixed term of weight " + std::to_string(k) + ": type is not " + std::to_string(k));
    }
    if (out.m == 1) {
        SeriesAssignment s;
        s.set(Var::b, b * (1 / gamma));
        F = substitute(F, s);
        M.B = gamma * M.B;
    } else {
        SeriesAssignment s;
        s.set(Var::a, gamma * a);
        F = substitute(F, s) * (1 / gamma);
        M.Y = M.Y * (1 / gamma);
        M.A = M.A * (1 / gamma);
    }

    // Exact check of Y(x, F0) = F(A, B, X).
    SeriesAssignment onS, back;
    onS.set(Var::y, F0.withOrder(kExactOrder));
    back.set(Var::a, M.A).set(Var::b, M.B).set(Var::x, M.X);
    if (!(substitute(M.Y, onS) == substitute(F, back)))
        throw std::logic_error("preliminary reduction fails its exact check");

    out.F = F.truncated(L);
    out.map = M;
    return out;
}

// ------------------------------------------------------------ conditions

bool NormalConditions::all() const
{
    if (!leading) return false;
    for (bool h : holds)
        if (!h) return false;
    return true;
}

NormalConditions checkNormalConditions(const SurfaceJet& F)
{
    const Grading g = Grading::regular();
    NormalConditions c;
    c.holds.fill(true);
    const WeightedPoly lead = var(Var::a, g) + var(Var::b, g) * var(Var::x, g);
    c.leading = F.grading() == g && F.truncated(2) == lead.truncated(std::min(2, F.order()));
    for (const auto& t : F.terms()) {
        if (g.weight(t.mono) <= 2) continue;
        const unsigned j = t.mono.exponent(Var::b), l = t.mono.exponent(Var::x);
        if (j < 1 || l < 1) c.holds[0] = false;
        if (j < 2 || l < 2) c.holds[1] = false;
        if (j == 2 && l == 2) c.holds[2] = false;
        if ((j == 3 && l == 2) || (j == 2 && l == 3)) c.holds[3] = false;
        if (j == 3 && l == 3) c.holds[4] = false;
    }
    return c;
}

void requireRegularPreliminary(const SurfaceJet& F)
{
    if (!(F.grading() == Grading::regular())) throw StructuralError("expected the regular grading");
    if (!F.dependsOnlyOn({Var::a, Var::b, Var::x}))
        throw StructuralError("surface must be a polynomial in (a, b, x)");
    if (F.order() < 2 || F.order() >= kExactOrder) throw StructuralError("surface jet needs an order >= 2");
    if (!checkNormalConditions(F).leading)
        throw DomainError("weight <= 2 part is not a + b x; run the preliminary reduction first");
}

// ------------------------------------------------------------ normalizeJet

namespace {

std::shared_ptr<const HomologicalSolver> regularSolver(int nu, Backend backend)
{
    static std::mutex mu;
    static std::map<std::pair<int, Backend>, std::shared_ptr<const HomologicalSolver>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{nu, backend}];
    if (!slot)
        slot = std::make_shared<const HomologicalSolver>(ModelOperator::regular(), nu,
                                                         normalComplementMonomials(nu), backend);
    return slot;
}

}  // namespace

NormalFormReport normalizeJet(const SurfaceJet& F0, Backend backend)
{
    requireRegularPreliminary(F0);
    const Grading g = F0.grading();
    const int L = F0.order();
    NormalFormReport rep;
    rep.transform = PointMap::identity(g);
    SurfaceJet F = F0;
    for (int nu = 3; nu <= L; ++nu) {
        const WeightedPoly P = F.component(nu);
        if (P.isZero()) continue;
        const Decomposition d = regularSolver(nu, backend)->solve(P);
        for (const auto& t : P.terms())
            if (d.normalPart.coefficient(t.mono) == 0) rep.eliminatedByWeight[nu].push_back(t.mono);
        if (d.field == VFieldJet::zero(g)) continue;
        const PointMap phi{var(Var::x, g) + d.field.xi, var(Var::y, g) + d.field.eta,
                           var(Var::a, g) + d.field.alpha, var(Var::b, g) + d.field.beta};
        F = applyMap(F, phi);
        rep.transform = compose(phi, rep.transform, L);
        if (!(F.component(nu) == d.normalPart))
            throw std::logic_error("weight " + std::to_string(nu) + " did not reach its normal part");
    }
    rep.normalized = F;
    rep.conditions = checkNormalConditions(F);
    return rep;
}

// ------------------------------------------------------------ geometric

WeightedPoly coefficientFunction(const SurfaceJet& F, unsigned j, unsigned l)
{
    return F.coefficientOf(Var::b, j).coefficientOf(Var::x, l);
}

namespace {

// Series in a (regular grading) <-> series in t = a with total degree.
WeightedPoly toT(const WeightedPoly& p)
{
    const int deg = floorDiv(p.order(), 2);
    if (deg < 0) return WeightedPoly(Grading::totalDegree(), -1);
    return p.regraded(Grading::totalDegree(), deg);
}

WeightedPoly fromT(const WeightedPoly& s, Var v)
{
    WeightedPoly r = s.regraded(Grading::regular(), 2 * s.order() + 1);
    return v == Var::a ? r : r.renamed(Var::a, v);
}

// p relabelled to order W, keeping only what it knows.
WeightedPoly padTo(const WeightedPoly& p, int W)
{
    return p.truncated(std::min(W, p.order())).withOrder(W);
}

std::optional<PointMap> step1(const SurfaceJet& F)
{
    // Straighten the trivial chain x = b = 0, y = q(a).
    const Grading& g = F.grading();
    const int L = F.order();
    const WeightedPoly q = F.atZero(Var::b).atZero(Var::x);
    if (q == var(Var::a, g)) return std::nullopt;
    const WeightedPoly qinv = reversion(q, Var::a);
    PointMap m = PointMap::identity(g);
    m.Y = exactPoly(qinv.renamed(Var::a, Var::y), L);
    return m;
}

WeightedPoly aOfXY(const SurfaceJet& F)
{
    // a(x, y) solving y = a + f(a, 0, x)
    const Grading& g = F.grading();
    const WeightedPoly a = var(Var::a, g);
    const WeightedPoly fa0x = F.atZero(Var::b) - a;
    return implicitSolve(var(Var::y, g) - fa0x, Var::a, F.order());
}

std::optional<PointMap> step2(const SurfaceJet& F)
{
    const Grading& g = F.grading();
    const int L = F.order();
    const WeightedPoly a = var(Var::a, g);
    const WeightedPoly fab0 = F.atZero(Var::x) - a;
    const WeightedPoly fa0x = F.atZero(Var::b) - a;
    if (fab0.isZero() && fa0x.isZero()) return std::nullopt;
    SeriesAssignment s;
    s.set(Var::a, aOfXY(F));
    PointMap m = PointMap::identity(g);
    m.A = exactPoly(a + fab0, L);
    m.Y = exactPoly(var(Var::y, g) - substitute(fa0x, s, std::nullopt, L), L);
    return m;
}

std::optional<PointMap> step3(const SurfaceJet& F)
{
    const Grading& g = F.grading();
    const WeightedPoly D = coefficientFunction(F, 1, 1);  // 1 + f_bx(a, 0, 0)
    if (D == WeightedPoly::constant(1, g)) return std::nullopt;
    PointMap m = PointMap::identity(g);
    m.B = exactPoly(var(Var::b, g) * D.withOrder(kExactOrder), F.order());
    return m;
}

std::optional<PointMap> step4(const SurfaceJet& F)
{
    const Grading& g = F.grading();
    const WeightedPoly fx0 = F.coefficientOf(Var::x, 1) - var(Var::b, g);  // f_x(a, b, 0)
    if (fx0.isZero()) return std::nullopt;
    PointMap m = PointMap::identity(g);
    m.B = exactPoly(var(Var::b, g) + fx0.withOrder(kExactOrder), F.order());
    return m;
}

std::optional<PointMap> step5(const SurfaceJet& F)
{
    const Grading& g = F.grading();
    const WeightedPoly fb = F.coefficientOf(Var::b, 1) - var(Var::x, g);  // f_b(a, 0, x)
    if (fb.isZero()) return std::nullopt;
    SeriesAssignment s;
    s.set(Var::a, aOfXY(F).truncated(fb.order()));
    PointMap m = PointMap::identity(g);
    m.X = exactPoly(var(Var::x, g) + substitute(fb, s, std::nullopt, fb.order()), F.order());
    return m;
}

std::optional<PointMap> step6(const SurfaceJet& F, const ChainData& chain)
{
    // X = x / C(y), B = b C(a) with C'/C = -f22 + target, target = -(3/2) p' pi'.
    const Grading& g = F.grading();
    const int L = F.order();
    const Var t = Var::a;
    const int Lc = floorDiv(L - 4, 2) + 1;
    if (Lc < 1) return std::nullopt;
    const WeightedPoly target = Rational(-3, 2) * partial(chain.p, t) * partial(chain.pi, t);
    const WeightedPoly rate = padTo(target, Lc) - padTo(chain.f22, Lc);
    if (rate.truncated(Lc - 1).isZero()) return std::nullopt;
    const WeightedPoly C = odeSolveSeries(
        t, 1, {Rational(1)},
        [&](const std::vector<WeightedPoly>& d, int W) { return d[0] * padTo(rate, W); }, Lc);
    const WeightedPoly Cr = fromT(C, Var::a);
    const WeightedPoly Cinv = reciprocal(Cr);
    PointMap m = PointMap::identity(g);
    m.X = exactPoly(var(Var::x, g) * Cinv.renamed(Var::a, Var::y).withOrder(kExactOrder), L);
    m.B = exactPoly(var(Var::b, g) * Cr.withOrder(kExactOrder), L);
    return m;
}

std::optional<PointMap> step7(const SurfaceJet& F)
{
    // Inverse x = sqrt(h'(Y)) X, y = h(Y), a = h(A), b = sqrt(h'(A)) B with
    // h''' = (3/2) h''^2 / h' - 12 f33(a).
    const Grading& g = F.grading();
    const int L = F.order();
    const Var t = Var::a;
    const WeightedPoly f33 = toT(coefficientFunction(F, 3, 3));
    if (f33.isZero()) return std::nullopt;
    const int Lh = f33.order() + 3;
    const WeightedPoly h = odeSolveSeries(
        t, 3, {Rational(0), Rational(1), Rational(0)},
        [&](const std::vector<WeightedPoly>& d, int W) {
            return Rational(3, 2) * d[2] * d[2] * reciprocal(d[1]) - 12 * padTo(f33, W);
        },
        Lh);
    const WeightedPoly hinv = reversion(h, t);
    const WeightedPoly w = reciprocal(sqrtUnit(partial(h, t)));
    SeriesAssignment s;
    s.set(t, hinv.truncated(w.order()));
    const WeightedPoly wh = substitute(w, s, std::nullopt, w.order());
    const WeightedPoly Hr = fromT(hinv, Var::a), Wr = fromT(wh, Var::a);
    PointMap m;
    m.Y = exactPoly(Hr.renamed(Var::a, Var::y), L);
    m.A = exactPoly(Hr, L);
    m.X = exactPoly(var(Var::x, g) * Wr.renamed(Var::a, Var::y).withOrder(kExactOrder), L);
    m.B = exactPoly(var(Var::b, g) * Wr.withOrder(kExactOrder), L);
    return m;
}

std::optional<PointMap> step8(const SurfaceJet& F, const ChainData& chain)
{
    const Grading& g = F.grading();
    const int L = F.order();
    const Var t = Var::a;
    if (chain.p.truncated(L).isZero() && chain.pi.truncated(L).isZero()) return std::nullopt;
    const WeightedPoly x = var(Var::x, g).withOrder(L), b = var(Var::b, g).withOrder(L);
    const WeightedPoly one = WeightedPoly::constant(1, g, L);
    auto inY = [&](const WeightedPoly& s) { return fromT(s, Var::y).withOrder(kExactOrder); };
    auto inA = [&](const WeightedPoly& s) { return fromT(s, Var::a).withOrder(kExactOrder); };
    const WeightedPoly dp = partial(chain.p, t), dpi = partial(chain.pi, t);

    const WeightedPoly R = reciprocal(one - x * inY(dpi));  // 1 / (1 - x pi'(y))
    const WeightedPoly S = reciprocal(one + b * inA(dp));   // 1 / (1 + b p'(a))
    PointMap m;
    m.X = exactPoly(inY(chain.p) + x * R, L);
    m.Y = exactPoly(inY(chain.q) + x * inY(chain.pi) * R, L);
    m.A = exactPoly(inA(chain.psi) - b * inA(chain.p) * S, L);
    m.B = exactPoly(inA(chain.pi) + b * S, L);
    return m;
}

}  // namespace

ChainData solveChain(const SurfaceJet& F)
{
    const int L = F.order();
    const Var t = Var::a;
    ChainData c;
    c.f22 = toT(coefficientFunction(F, 2, 2));
    c.f23 = toT(coefficientFunction(F, 2, 3));
    c.f32 = toT(coefficientFunction(F, 3, 2));
    const int Ls = std::max(1, floorDiv(L - 5, 2) + 2);
    OdeSystem sys;
    sys.t = t;
    sys.orders = {2, 2, 1};
    sys.initial = {{0, 0}, {0, 0}, {0}};
    sys.rhs = [&](const std::vector<std::vector<WeightedPoly>>& d, int W) {
        const WeightedPoly& dp = d[0][1];
        const WeightedPoly& pi = d[1][0];
        const WeightedPoly& dpi = d[1][1];
        return std::vector<WeightedPoly>{
            2 * padTo(c.f32, W) + dp * dp * dpi,
            2 * padTo(c.f23, W) - dpi * dpi * dp,
            WeightedPoly::constant(1, Grading::totalDegree(), W) + dp * pi,
        };
    };
    auto sol = odeSolveSystem(sys, Ls);
    c.p = sol[0];
    c.pi = sol[1];
    c.q = sol[2];
    c.psi = c.q - c.pi * c.p;
    return c;
}

NormalFormReport geometricNormalize(const SurfaceJet& F0)
{
    requireRegularPreliminary(F0);
    const Grading g = F0.grading();
    const int L = F0.order();
    NormalFormReport rep;
    rep.transform = PointMap::identity(g);
    SurfaceJet F = F0;

    auto run = [&](int step, const std::function<std::optional<PointMap>()>& make) {
        std::optional<PointMap> m;
        try {
            m = make();
        } catch (const SolveStall& e) {
            throw SolveStall("step " + std::to_string(step) + ": " + e.what(), e.weight());
        }
        if (!m) return;
        F = applyMap(F, *m);
        rep.transform = compose(*m, rep.transform, L);
        rep.log.push_back("round " + std::to_string(rep.rounds) + " step " + std::to_string(step));
    };

    const int maxRounds = L + 2;
    while (!checkNormalConditions(F).all()) {
        if (rep.rounds == maxRounds)
            throw DomainError("geometric normalization did not converge in " + std::to_string(maxRounds) +
                              " rounds");
        ++rep.rounds;
        run(1, [&] { return step1(F); });
        run(2, [&] { return step2(F); });
        run(3, [&] { return step3(F); });
        run(4, [&] { return step4(F); });
        run(5, [&] { return step5(F); });
        ChainData chain;
        try {
            chain = solveChain(F);
        } catch (const SolveStall& e) {
            throw SolveStall(std::string("chain equations: ") + e.what(), e.weight());
        }
        run(6, [&] { return step6(F, chain); });
        run(7, [&] { return step7(F); });
        run(8, [&] { return step8(F, chain); });
        if (!checkNormalConditions(F).holds[4]) run(7, [&] { return step7(F); });
    }
    rep.normalized = F;
    rep.conditions = checkNormalConditions(F);
    return rep;
}

}  // namespace paracr
