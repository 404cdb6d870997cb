#include "paracr/singular_normal.hpp"

#include <memory>
#include <mutex>

#include "paracr/cm_operator.hpp"

namespace paracr {

TypeVerdict finiteType(const WeightedPoly& F, int Lmax)
{
    if (!F.dependsOnlyOn({Var::a, Var::b, Var::x}))
        throw StructuralError("surface must be a polynomial in (a, b, x)");
    if (F.coefficient(Monomial::of(Var::a)) == 0) throw DomainError("F_a(0) = 0: not solvable for a");
    TypeVerdict v;
    // b, x have weight 1 in every grading we use, so the b^m x^n coefficient
    // is known once m + n <= order.
    v.scannedTo = std::min(Lmax, F.isExact() ? Lmax : F.order());
    int k = 0;
    for (const auto& t : F.terms()) {
        if (t.mono.exponent(Var::a) != 0) continue;
        const int m = static_cast<int>(t.mono.exponent(Var::b)), n = static_cast<int>(t.mono.exponent(Var::x));
        if (m == 0 || n == 0 || m + n > v.scannedTo) continue;
        if (k == 0 || m + n < k) k = m + n;
    }
    if (k == 0) return v;
    const Grading g = k == 2 ? Grading::regular() : Grading::singular(k);
    const int L = F.isExact() ? k : F.order();
    const PreliminaryResult r = preliminaryReduce(F.withOrder(kExactOrder).regraded(g, L));
    v.type = readLeadingType(r.F);
    return v;
}

TypeData readLeadingType(const SurfaceJet& F)
{
    const Grading& g = F.grading();
    TypeData t;
    t.k = g.typeK;
    for (const auto& term : F.terms()) {
        if (g.weight(term.mono) != t.k || term.mono.exponent(Var::a) != 0) continue;
        const unsigned j = term.mono.exponent(Var::b), l = term.mono.exponent(Var::x);
        if (j == 0 || l == 0) continue;
        if (t.m == 0 || j < t.m) {
            t.m = j;
            t.n = l;
        }
    }
    if (t.m == 0) throw DomainError("no mixed term of weight " + std::to_string(t.k));
    for (unsigned j = t.m + 1; static_cast<int>(j) < t.k; ++j) {
        std::array<unsigned, kVarCount> e{};
        e[index(Var::b)] = j;
        e[index(Var::x)] = static_cast<unsigned>(t.k) - j;
        t.gammas.push_back(F.coefficient(Monomial::fromExponents(e)));
    }
    return t;
}

SingularPreliminary prelimReduceSingular(const WeightedPoly& F)
{
    const TypeVerdict v = finiteType(F, F.isExact() ? 64 : F.order());
    if (!v.type) throw DomainError("no mixed term b^m x^n up to order " + std::to_string(v.scannedTo) +
                                   ": type undetermined");
    if (v.type->regular()) throw DomainError("the surface is regular (k = 2); use the regular normal form");
    const int k = v.type->k;
    const Grading g = Grading::singular(k);
    const int L = F.isExact() ? k : F.order();
    PreliminaryResult r = preliminaryReduce(F.withOrder(kExactOrder).regraded(g, L));
    SingularPreliminary out;
    out.F = r.F;
    out.map = r.map;
    out.type = readLeadingType(r.F);
    return out;
}

bool isForbidden(Monomial mono, int k, unsigned m, unsigned n)
{
    (void)k;
    const unsigned j = mono.exponent(Var::b), l = mono.exponent(Var::x);
    if (j == 0 || l == 0) return true;                       // a^i x^j, a^i b^j
    if (j == m && l + 1 >= n) return true;                   // a^i b^m x^{n-1+j}
    if (l == n && j + 1 >= m) return true;                   // a^i b^{m-1+j} x^n
    if (j == 2 * m && l == 2 * n) return true;               // a^i b^2m x^2n
    if (j == 3 * m && l == 3 * n) return true;               // a^i b^3m x^3n
    if (m == 1 && j == 1 && l == 2 * n) return true;
    if (n == 1 && j == 2 * m && l == 1) return true;
    return false;
}

std::vector<Monomial> forbiddenMonomials(int k, unsigned m, unsigned n, int nu)
{
    std::vector<Monomial> out;
    for (Monomial mo : monomialsOfWeight(Grading::singular(k), nu, {Var::a, Var::b, Var::x}))
        if (isForbidden(mo, k, m, n)) out.push_back(mo);
    return out;
}

SingularCheck checkSingularNormal(const SurfaceJet& F, const TypeData& t)
{
    SingularCheck c;
    const Grading g = Grading::singular(t.k);
    if (!(F.grading() == g)) throw StructuralError("expected the weight-" + std::to_string(t.k) + " grading");
    WeightedPoly lead = WeightedPoly::variable(Var::a, g);
    {
        std::array<unsigned, kVarCount> e{};
        e[index(Var::b)] = t.m;
        e[index(Var::x)] = t.n;
        lead += WeightedPoly::monomial(Monomial::fromExponents(e), 1, g);
        for (std::size_t i = 0; i < t.gammas.size(); ++i) {
            e[index(Var::b)] = t.m + 1 + static_cast<unsigned>(i);
            e[index(Var::x)] = static_cast<unsigned>(t.k) - e[index(Var::b)];
            lead += WeightedPoly::monomial(Monomial::fromExponents(e), t.gammas[i], g);
        }
    }
    c.leading = F.truncated(t.k) == lead.truncated(std::min(t.k, F.order()));
    for (const auto& term : F.terms()) {
        const int w = g.weight(term.mono);
        if (w <= t.k) continue;
        if (isForbidden(term.mono, t.k, t.m, t.n)) c.offending[w].push_back(term.mono);
    }
    c.normal = c.leading && c.offending.empty();
    return c;
}

namespace {

std::shared_ptr<const HomologicalSolver> singularSolver(const WeightedPoly& model, const TypeData& t, int nu,
                                                        Backend backend)
{
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const HomologicalSolver>> cache;
    const std::string key = formatPoly(model) + "|" + std::to_string(t.k) + "|" + std::to_string(nu) + "|" +
                            std::to_string(static_cast<int>(backend));
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[key];
    if (!slot) {
        const ModelOperator op(model, {FieldSlot::alpha, FieldSlot::beta, FieldSlot::eta, FieldSlot::xi});
        std::vector<Monomial> retained;
        for (Monomial mo : op.codomain(nu).monomials)
            if (!isForbidden(mo, t.k, t.m, t.n)) retained.push_back(mo);
        slot = std::make_shared<const HomologicalSolver>(op, nu, std::move(retained), backend);
    }
    return slot;
}

}  // namespace

SingularNormalReport normalizeSingularJet(const SurfaceJet& F0, Backend backend)
{
    const Grading g = F0.grading();
    if (g.typeK <= 2 || !(g == Grading::singular(g.typeK)))
        throw StructuralError("normalizeSingularJet expects a singular grading (k > 2)");
    if (F0.order() >= kExactOrder) throw StructuralError("surface jet needs a truncation order");
    SingularNormalReport rep;
    rep.type = readLeadingType(F0);
    const int k = rep.type.k;
    if (!checkSingularNormal(F0.truncated(k), rep.type).leading)
        throw DomainError("weight <= k part is not a + b^m x^n + ...; run the preliminary reduction first");

    const WeightedPoly model = F0.truncated(k).withOrder(kExactOrder);
    const int L = F0.order();
    rep.transform = PointMap::identity(g);
    SurfaceJet F = F0;
    for (int nu = k + 1; nu <= L; ++nu) {
        const WeightedPoly P = F.component(nu);
        if (P.isZero()) continue;
        Decomposition d;
        try {
            d = singularSolver(model, rep.type, nu, backend)->solve(P);
        } catch (const std::logic_error& e) {
            throw std::logic_error(std::string("singular normal form is infeasible: ") + e.what());
        }
        for (const auto& t : P.terms())
            if (d.normalPart.coefficient(t.mono) == 0) rep.eliminatedByWeight[nu].push_back(t.mono);
        if (d.field == VFieldJet::zero(g)) continue;
        const PointMap phi{WeightedPoly::variable(Var::x, g) + d.field.xi,
                           WeightedPoly::variable(Var::y, g) + d.field.eta,
                           WeightedPoly::variable(Var::a, g) + d.field.alpha,
                           WeightedPoly::variable(Var::b, g) + d.field.beta};
        F = applyMap(F, phi);
        rep.transform = compose(phi, rep.transform, L);
        if (!(F.component(nu) == d.normalPart))
            throw std::logic_error("weight " + std::to_string(nu) + " did not reach its normal part");
        for (const auto& t : F.component(nu).terms())
            if (isForbidden(t.mono, k, rep.type.m, rep.type.n))
                throw std::logic_error("forbidden monomial " + toString(t.mono) + " survived at weight " +
                                       std::to_string(nu));
    }
    rep.normalized = F;
    rep.check = checkSingularNormal(F, rep.type);
    return rep;
}

}  // namespace paracr
