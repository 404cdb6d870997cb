#include "doctest.h"
#include "paracr/automorphisms.hpp"
#include "poly_helpers.hpp"
#include "random_jets.hpp"

using namespace paracr;
using testsupport::mono;

namespace {

WeightedPoly model(unsigned m, unsigned n, int L)
{
    const Grading g = Grading::singular(static_cast<int>(m + n));
    return WeightedPoly::variable(Var::a, g, L) + mono({{Var::b, m}, {Var::x, n}}, 1, L, g);
}

WeightedPoly bx(unsigned m, unsigned n, unsigned r, Rational c, int L)
{
    return mono({{Var::b, m * r}, {Var::x, n * r}}, c, L, Grading::singular(static_cast<int>(m + n)));
}

}  // namespace

TEST_CASE("model fields annihilate the model")
{
    for (unsigned m = 1; m <= 7; ++m)
        for (unsigned n = 1; m + n <= 8; ++n) {
            CAPTURE(m);
            CAPTURE(n);
            const int k = static_cast<int>(m + n);
            const WeightedPoly F = model(m, n, 3 * k).withOrder(kExactOrder);
            const ModelFields f = modelFields(m, n, F.grading());
            CHECK(applyField(f.chi0, F).vanishes());
            CHECK(applyField(f.chi, F).vanishes());
            CHECK(applyField(f.chiK, F).vanishes());
        }
}

TEST_CASE("isInfinitesimalAutomorphism examples")
{
    const int L = 10;
    const Grading g = Grading::singular(3);
    VFieldJet chi = VFieldJet::zero(g);
    chi.beta = WeightedPoly::variable(Var::b, g);
    chi.xi = -2 * WeightedPoly::variable(Var::x, g);
    CHECK(isInfinitesimalAutomorphism(chi, model(2, 1, L) + bx(2, 1, 3, 1, L), L));
    const auto bad = model(2, 1, L) + mono({{Var::b, 3}, {Var::x, 2}}, 1, L, g);
    CHECK_FALSE(isInfinitesimalAutomorphism(chi, bad, L));
    CHECK(applyField(chi, bad).residual.coefficient(Monomial::fromExponents({0, 3, 2, 0, 0})) == 1);
    CHECK(isInfinitesimalAutomorphism(VFieldJet::zero(g), bad, L));
}

TEST_CASE("tangency is linear in the field")
{
    testsupport::Rng rng(99);
    const Grading g = Grading::singular(4);
    const WeightedPoly F = model(1, 3, 10) + testsupport::randomPoly(rng, g, 10, 5, 10);
    auto rf = [&](Var v, int w) { return testsupport::randomPoly(rng, g, kExactOrder, 1, w, {v, v == Var::x ? Var::y : Var::b}); };
    for (int trial = 0; trial < 5; ++trial) {
        VFieldJet c1{rf(Var::x, 4), rf(Var::a, 4), rf(Var::a, 3), rf(Var::x, 3)};
        VFieldJet c2{rf(Var::x, 4), rf(Var::a, 4), rf(Var::a, 3), rf(Var::x, 3)};
        const Rational s = rng.rational(), t = rng.rational();
        VFieldJet comb = s * c1;
        comb += t * c2;
        CHECK(applyField(comb, F).residual ==
              s * applyField(c1, F).residual + t * applyField(c2, F).residual);
    }
}

TEST_CASE("monomial pattern check")
{
    const int L = 12;
    auto p1 = monomialPatternCheck(model(2, 1, L) + bx(2, 1, 2, 1, L) + bx(2, 1, 3, 5, L), 2, 1);
    CHECK(p1.withA);
    CHECK(p1.strict);
    auto p2 = monomialPatternCheck(model(2, 1, L) + mono({{Var::b, 3}, {Var::x, 2}}, 1, L, Grading::singular(3)), 2, 1);
    CHECK_FALSE(p2.withA);
    CHECK(p2.offPattern.size() == 1);
    CHECK(monomialPatternCheck(model(2, 1, L), 2, 1).strict);
    auto p3 = monomialPatternCheck(model(2, 1, L) + mono({{Var::a, 1}, {Var::b, 4}, {Var::x, 2}}, 1, L, Grading::singular(3)), 2, 1);
    CHECK(p3.withA);
    CHECK_FALSE(p3.strict);
}

TEST_CASE("isotropy report")
{
    auto r1 = isotropyReport(model(2, 3, 15), 15);
    CHECK(r1.verdict == Isotropy::Model);
    REQUIRE(r1.automorphisms.size() == 3);
    CHECK(r1.automorphisms[1].second.beta == 3 * WeightedPoly::variable(Var::b, Grading::singular(5)));
    CHECK(r1.automorphisms[1].second.xi == -2 * WeightedPoly::variable(Var::x, Grading::singular(5)));

    auto r2 = isotropyReport(model(2, 1, 9) + bx(2, 1, 2, 1, 9), 9);
    CHECK(r2.verdict == Isotropy::OneParameter);

    auto r3 = isotropyReport(model(2, 1, 9) + mono({{Var::b, 3}, {Var::x, 2}}, 1, 9, Grading::singular(3)), 9);
    CHECK(r3.verdict == Isotropy::Trivial);
}

TEST_CASE("off-pattern monomials break the one-parameter symmetry")
{
    testsupport::Rng rng(17);
    for (unsigned m = 1; m <= 3; ++m)
        for (unsigned n = 1; n <= 3; ++n) {
            if (m + n < 3) continue;
            const int k = static_cast<int>(m + n), L = 3 * k;
            const Grading g = Grading::singular(k);
            WeightedPoly F = model(m, n, L);
            for (unsigned r = 2; r <= 3; ++r) F += bx(m, n, r, rng.rational(), L);
            const ModelFields f = modelFields(m, n, g);
            CHECK(isInfinitesimalAutomorphism(f.chi, F, L));
            for (Monomial mo : monomialsOfWeight(g, k + 1, {Var::b, Var::x})) {
                const unsigned j = mo.exponent(Var::b), l = mo.exponent(Var::x);
                if (j * n == l * m) continue;
                CHECK_FALSE(isInfinitesimalAutomorphism(f.chi, F + WeightedPoly::monomial(mo, 1, g, L), L));
            }
        }
}
