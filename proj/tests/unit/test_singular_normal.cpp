#include "doctest.h"
#include "paracr/singular_normal.hpp"
#include "poly_helpers.hpp"
#include "random_jets.hpp"

using namespace paracr;
using testsupport::mono;
using testsupport::var;

namespace {

WeightedPoly sv(Var v, int k, int L) { return WeightedPoly::variable(v, Grading::singular(k), L); }

WeightedPoly sm(std::initializer_list<std::pair<Var, unsigned>> e, Rational q, int k, int L)
{
    return mono(e, q, L, Grading::singular(k));
}

}  // namespace

TEST_CASE("finite type")
{
    const int L = 8;
    auto t0 = finiteType(var(Var::a, L) + var(Var::b, L) * var(Var::x, L), 10);
    REQUIRE(t0.type);
    CHECK(t0.type->regular());

    auto t1 = finiteType(var(Var::a, L) + mono({{Var::b, 2}, {Var::x, 3}}, 1, L), 10);
    REQUIRE(t1.type);
    CHECK(t1.type->k == 5);
    CHECK(t1.type->m == 2);
    CHECK(t1.type->n == 3);

    auto t2 = finiteType(var(Var::a, L) + mono({{Var::b, 3}}, 1, L) + mono({{Var::x, 4}}, 1, L) +
                             mono({{Var::b, 1}, {Var::x, 2}}, 1, L),
                         10);
    REQUIRE(t2.type);
    CHECK(t2.type->k == 3);
    CHECK(t2.type->m == 1);
    CHECK(t2.type->n == 2);

    // Only pure terms up to the order scanned.
    auto t3 = finiteType(var(Var::a, L) + mono({{Var::b, 3}}, 1, L), 10);
    CHECK_FALSE(t3.type);
    CHECK(t3.scannedTo == 8);

    // m is the smallest b-exponent at weight k, not the first one seen.
    auto t4 = finiteType(var(Var::a, L) + mono({{Var::b, 3}, {Var::x, 1}}, 1, L) +
                             mono({{Var::b, 1}, {Var::x, 3}}, 5, L),
                         10);
    REQUIRE(t4.type);
    CHECK(t4.type->k == 4);
    CHECK(t4.type->m == 1);
    CHECK(t4.type->gammas == std::vector<Rational>{0, Rational(1, 125)});

    CHECK_THROWS_AS(finiteType(var(Var::b, L) * var(Var::x, L), 10), DomainError);
}

TEST_CASE("singular preliminary reduction")
{
    const int L = 8;
    auto r1 = prelimReduceSingular(2 * var(Var::a, L) + mono({{Var::b, 2}}, 1, L) +
                                   mono({{Var::b, 2}, {Var::x, 2}}, 1, L));
    CHECK(r1.type.k == 4);
    CHECK(r1.type.m == 2);
    CHECK(r1.type.n == 2);
    CHECK(r1.F.truncated(4) == (sv(Var::a, 4, L) + sm({{Var::b, 2}, {Var::x, 2}}, 1, 4, L)).truncated(4));

    auto r2 = prelimReduceSingular(var(Var::a, L) + mono({{Var::b, 2}, {Var::x, 1}}, 1, L) +
                                   mono({{Var::b, 3}}, 3, L) + mono({{Var::x, 3}}, 1, L));
    CHECK(r2.type.k == 3);
    CHECK(r2.type.m == 2);
    CHECK(r2.type.n == 1);
    CHECK(r2.F == sv(Var::a, 3, L) + sm({{Var::b, 2}, {Var::x, 1}}, 1, 3, L));

    auto r3 = prelimReduceSingular(var(Var::a, L) + mono({{Var::b, 1}, {Var::x, 2}}, 2, L) +
                                   mono({{Var::b, 2}, {Var::x, 1}}, 1, L));
    CHECK(r3.type.m == 1);
    CHECK(r3.type.gammas == std::vector<Rational>{Rational(1, 4)});

    // Finite type data survives the reduction.
    auto again = finiteType(r1.F, 20);
    REQUIRE(again.type);
    CHECK(again.type->k == 4);
    CHECK(again.type->m == 2);

    CHECK_THROWS_AS(prelimReduceSingular(var(Var::a, L) + var(Var::b, L) * var(Var::x, L)), DomainError);
    CHECK_THROWS_AS(prelimReduceSingular(var(Var::a, L) + mono({{Var::b, 5}}, 1, L)), DomainError);
}

TEST_CASE("forbidden monomials")
{
    // k = 4, m = n = 2 at weight 5
    auto f5 = forbiddenMonomials(4, 2, 2, 5);
    auto has = [](const std::vector<Monomial>& v, std::initializer_list<std::pair<Var, unsigned>> e) {
        std::array<unsigned, kVarCount> ex{};
        for (auto [v2, p] : e) ex[index(v2)] = p;
        return std::find(v.begin(), v.end(), Monomial::fromExponents(ex)) != v.end();
    };
    CHECK(has(f5, {{Var::x, 5}}));
    CHECK(has(f5, {{Var::a, 1}, {Var::x, 1}}));
    CHECK(has(f5, {{Var::b, 2}, {Var::x, 3}}));
    CHECK(has(f5, {{Var::b, 3}, {Var::x, 2}}));
    CHECK_FALSE(has(f5, {{Var::b, 4}, {Var::x, 1}}));
    CHECK_FALSE(has(f5, {{Var::b, 1}, {Var::x, 4}}));

    // weight 7: a b^2 x is a^i b^m x^{n-1+j} with i = 1, j = 0
    auto f7 = forbiddenMonomials(4, 2, 2, 7);
    CHECK(has(f7, {{Var::a, 1}, {Var::b, 2}, {Var::x, 1}}));

    auto f8 = forbiddenMonomials(4, 2, 2, 8);
    CHECK(has(f8, {{Var::b, 4}, {Var::x, 4}}));
    CHECK(has(forbiddenMonomials(4, 2, 2, 12), {{Var::b, 6}, {Var::x, 6}}));
    // m = 1 and n = 1 extras
    CHECK(has(forbiddenMonomials(3, 1, 2, 5), {{Var::b, 1}, {Var::x, 4}}));
    CHECK(has(forbiddenMonomials(3, 2, 1, 5), {{Var::b, 4}, {Var::x, 1}}));
}

TEST_CASE("checkSingularNormal examples")
{
    const int k = 4, L = 10;
    TypeData t{k, 2, 2, {0}};
    const WeightedPoly model = sv(Var::a, k, L) + sm({{Var::b, 2}, {Var::x, 2}}, 1, k, L);
    CHECK(checkSingularNormal(model, t).normal);
    auto c1 = checkSingularNormal(model + sm({{Var::a, 1}, {Var::x, 1}}, 1, k, L), t);
    CHECK_FALSE(c1.normal);
    CHECK(c1.offending.count(5));
    CHECK_FALSE(checkSingularNormal(model + sm({{Var::b, 4}, {Var::x, 4}}, 1, k, L), t).normal);
    CHECK(checkSingularNormal(model + sm({{Var::b, 4}, {Var::x, 1}}, 1, k, L), t).normal);
    CHECK_FALSE(checkSingularNormal(sv(Var::a, k, L) + sm({{Var::b, 3}, {Var::x, 1}}, 1, k, L), t).leading);
}

TEST_CASE("normalizeSingularJet examples")
{
    const int k = 4, L = 10;
    const WeightedPoly model = sv(Var::a, k, L) + sm({{Var::b, 2}, {Var::x, 2}}, 1, k, L);
    auto r0 = normalizeSingularJet(model);
    CHECK(r0.normalized == model);
    CHECK(r0.transform.isIdentity());

    auto F1 = model + sm({{Var::x, 5}}, 1, k, L);
    auto r1 = normalizeSingularJet(F1);
    CHECK(r1.normalized == model);
    CHECK(r1.eliminatedByWeight.at(5).size() == 1);
    CHECK(r1.transform.Y == sv(Var::y, k, L) - sm({{Var::x, 5}}, 1, k, L));
    CHECK(applyMap(F1, r1.transform) == r1.normalized);

    // a b^2 x is forbidden at weight 7 and goes away.
    auto F2 = model + sm({{Var::a, 1}, {Var::b, 2}, {Var::x, 1}}, 1, k, L);
    auto r2 = normalizeSingularJet(F2);
    CHECK(r2.check.normal);
    CHECK(r2.normalized.coefficient(Monomial::fromExponents({1, 2, 1, 0, 0})) == 0);

    // A retained monomial stays put.
    auto F3 = model + sm({{Var::b, 4}, {Var::x, 1}}, 3, k, L);
    CHECK(normalizeSingularJet(F3).normalized == F3);

    CHECK_THROWS_AS(normalizeSingularJet(var(Var::a, 6) + var(Var::b, 6) * var(Var::x, 6)), StructuralError);
}

TEST_CASE("singular normal form on random jets")
{
    testsupport::Rng rng(4242);
    for (int k = 3; k <= 5; ++k) {
        for (int trial = 0; trial < 6; ++trial) {
            const unsigned m = static_cast<unsigned>(rng.uniform(1, k - 1));
            const int L = k + 6;
            WeightedPoly F = testsupport::randomSingularJet(rng, m, static_cast<unsigned>(k) - m, L);
            for (unsigned j = m + 1; static_cast<int>(j) < k; ++j)
                if (rng.coin(0.5)) F += sm({{Var::b, j}, {Var::x, static_cast<unsigned>(k) - j}}, rng.rational(), k, L);
            CAPTURE(formatPoly(F));
            auto r = normalizeSingularJet(F);
            CHECK(r.check.normal);
            CHECK(applyMap(F, r.transform) == r.normalized);
            const WeightedPoly model = F.truncated(k).withOrder(L);
            CHECK(normalizeSingularJet(model).normalized == model);
            CHECK(normalizeSingularJet(r.normalized).transform.isIdentity());
        }
    }
}
