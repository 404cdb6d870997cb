#include "paracr/automorphisms.hpp"

#include "paracr/singular_normal.hpp"

namespace paracr {

TangencyResidual applyField(const VFieldJet& chi, const WeightedPoly& F)
{
    return {tangencyResidual(chi, F), F.order()};
}

bool isInfinitesimalAutomorphism(const VFieldJet& chi, const WeightedPoly& F, int L)
{
    return applyField(chi, F).residual.truncated(std::min(L, F.order())).isZero();
}

ModelFields modelFields(unsigned m, unsigned n, const Grading& g)
{
    const Rational k = m + n;
    const auto a = WeightedPoly::variable(Var::a, g), b = WeightedPoly::variable(Var::b, g),
               x = WeightedPoly::variable(Var::x, g), y = WeightedPoly::variable(Var::y, g);
    ModelFields f;
    f.chi0 = VFieldJet{k * y, k * a, b, x};
    f.chi = VFieldJet::zero(g);
    f.chi.beta = Rational(n) * b;
    f.chi.xi = Rational(-static_cast<int>(m)) * x;
    f.chiK = VFieldJet{y * y, a * a, Rational(1, m) * (a * b), Rational(1, n) * (x * y)};
    return f;
}

PatternCheck monomialPatternCheck(const WeightedPoly& F, unsigned m, unsigned n)
{
    PatternCheck c;
    const Grading& g = F.grading();
    std::array<unsigned, kVarCount> e{};
    e[index(Var::b)] = m;
    e[index(Var::x)] = n;
    const WeightedPoly f = F - WeightedPoly::variable(Var::a, g) - WeightedPoly::monomial(Monomial::fromExponents(e), 1, g);
    for (const auto& t : f.terms()) {
        const unsigned j = t.mono.exponent(Var::b), l = t.mono.exponent(Var::x);
        const bool onRay = j % m == 0 && l % n == 0 && j / m == l / n && j > 0;
        if (!onRay) {
            c.withA = c.strict = false;
            c.offPattern.push_back(t.mono);
        } else if (t.mono.exponent(Var::a) != 0) {
            c.strict = false;
        }
    }
    return c;
}

const char* isotropyName(Isotropy v)
{
    switch (v) {
    case Isotropy::Model: return "MODEL";
    case Isotropy::OneParameter: return "ONE_PARAMETER";
    case Isotropy::Trivial: return "TRIVIAL";
    }
    return "?";
}

IsotropyReport isotropyReport(const WeightedPoly& F, int L)
{
    const TypeData t = readLeadingType(F);
    IsotropyReport rep;
    rep.order = std::min(L, F.order());
    rep.m = t.m;
    rep.n = t.n;
    const WeightedPoly Fl = F.truncated(rep.order);
    rep.pattern = monomialPatternCheck(Fl, t.m, t.n);
    const ModelFields mf = modelFields(t.m, t.n, F.grading());

    std::array<unsigned, kVarCount> e{};
    e[index(Var::b)] = t.m;
    e[index(Var::x)] = t.n;
    const WeightedPoly model =
        WeightedPoly::variable(Var::a, F.grading()) + WeightedPoly::monomial(Monomial::fromExponents(e), 1, F.grading());
    if (Fl == model.truncated(rep.order)) {
        rep.verdict = Isotropy::Model;
        rep.automorphisms = {{"chi0", mf.chi0}, {"chi", mf.chi}, {"chi_k", mf.chiK}};
    } else if (rep.pattern.withA && isInfinitesimalAutomorphism(mf.chi, Fl, rep.order)) {
        rep.verdict = Isotropy::OneParameter;
        rep.automorphisms = {{"chi", mf.chi}};
    }
    return rep;
}

}  // namespace paracr
