#include "doctest.h"
#include "paracr/regular_normal.hpp"
#include "poly_helpers.hpp"
#include "random_jets.hpp"

using namespace paracr;
using testsupport::mono;
using testsupport::var;

namespace {

WeightedPoly flat(int L) { return var(Var::a, L) + var(Var::b, L) * var(Var::x, L); }

}  // namespace

TEST_CASE("preliminary reduction examples")
{
    const int L = 4;
    auto r0 = preliminaryReduce(flat(L));
    CHECK(r0.F == flat(L));
    CHECK(r0.map.isIdentity());

    auto r1 = preliminaryReduce(2 * var(Var::a, L) + 3 * var(Var::b, L) + var(Var::x, L) +
                                var(Var::b, L) * var(Var::x, L));
    CHECK(r1.F == flat(L));
    CHECK(r1.map.Y == var(Var::y) - var(Var::x));
    CHECK(r1.map.A == 2 * var(Var::a) + 3 * var(Var::b));

    auto r2 = preliminaryReduce(var(Var::a, L) + 2 * var(Var::b, L) * var(Var::x, L));
    CHECK(r2.F == flat(L));
    CHECK(r2.map.B == 2 * var(Var::b));

    CHECK_THROWS_AS(preliminaryReduce(var(Var::b, L) * var(Var::x, L)), DomainError);
    CHECK_THROWS_AS(preliminaryReduce(var(Var::a, L) + mono({{Var::b, 2}, {Var::x, 2}}, 1, L)), DomainError);
}

TEST_CASE("preliminary reduction of a singular leading part")
{
    const Grading g = Grading::singular(3);
    const int L = 6;
    // a + 2 b x^2 + b^2 x -> a + b x^2 + (1/4) b^2 x
    auto F = WeightedPoly::variable(Var::a, g, L) + mono({{Var::b, 1}, {Var::x, 2}}, 2, L, g) +
             mono({{Var::b, 2}, {Var::x, 1}}, 1, L, g);
    auto r = preliminaryReduce(F);
    CHECK(r.m == 1);
    CHECK(r.n == 2);
    CHECK(r.F == WeightedPoly::variable(Var::a, g, L) + mono({{Var::b, 1}, {Var::x, 2}}, 1, L, g) +
                     mono({{Var::b, 2}, {Var::x, 1}}, Rational(1, 4), L, g));
}

TEST_CASE("normal form conditions")
{
    const int L = 8;
    CHECK(checkNormalConditions(flat(L)).all());
    CHECK(checkNormalConditions(flat(L) + mono({{Var::b, 2}, {Var::x, 4}}, 1, L)).all());
    auto c = checkNormalConditions(flat(L) + mono({{Var::a, 1}, {Var::b, 3}, {Var::x, 3}}, 1, L));
    CHECK(c.holds[0]);
    CHECK(c.holds[1]);
    CHECK(c.holds[2]);
    CHECK(c.holds[3]);
    CHECK_FALSE(c.holds[4]);
    auto c2 = checkNormalConditions(flat(L) + mono({{Var::x, 3}}, 1, L));
    CHECK_FALSE(c2.holds[0]);
    CHECK_FALSE(c2.holds[1]);
}

TEST_CASE("normalizeJet examples")
{
    auto r0 = normalizeJet(flat(8));
    CHECK(r0.normalized == flat(8));
    CHECK(r0.transform.isIdentity());

    auto r1 = normalizeJet(flat(3) + mono({{Var::x, 3}}, 1, 3));
    CHECK(r1.normalized == flat(3));
    CHECK(r1.transform.Y == var(Var::y, 3) - mono({{Var::x, 3}}, 1, 3));
    CHECK(r1.eliminatedByWeight.at(3).size() == 1);

    auto r2 = normalizeJet(flat(4) + mono({{Var::b, 2}, {Var::x, 2}}, 1, 4));
    CHECK(r2.normalized == flat(4));
    CHECK(applyMap(flat(4) + mono({{Var::b, 2}, {Var::x, 2}}, 1, 4), r2.transform) == flat(4));
}

TEST_CASE("normalizeJet soundness on random jets")
{
    testsupport::Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const int L = 8;
        const WeightedPoly F = testsupport::randomRegularJet(rng, L);
        const auto rep = normalizeJet(F);
        CHECK(rep.conditions.all());
        CHECK(applyMap(F, rep.transform) == rep.normalized);
        const WeightedPoly f = rep.normalized - flat(L);
        if (!f.isZero()) CHECK(f.lowestWeight() >= 6);
        // Already normal: nothing moves beyond the isotropy weights.
        const auto again = normalizeJet(rep.normalized);
        CHECK(again.normalized == rep.normalized);
    }
}

TEST_CASE("geometric pipeline")
{
    CHECK(geometricNormalize(flat(8)).normalized == flat(8));
    CHECK(geometricNormalize(flat(8)).transform.isIdentity());

    const WeightedPoly only22 = flat(8) + mono({{Var::a, 1}, {Var::b, 2}, {Var::x, 2}}, 3, 8);
    auto r = geometricNormalize(only22);
    CHECK(r.conditions.all());
    CHECK(applyMap(only22, r.transform) == r.normalized);

    testsupport::Rng rng(22);
    for (int trial = 0; trial < 8; ++trial) {
        const WeightedPoly F = testsupport::randomRegularJet(rng, 8);
        const auto rep = geometricNormalize(F);
        CHECK(rep.conditions.all());
        CHECK(applyMap(F, rep.transform) == rep.normalized);
    }
}
