#include <map>

#include "doctest.h"
#include "paracr/linalg.hpp"
#include "paracr/point_map.hpp"
#include "poly_helpers.hpp"
#include "random_jets.hpp"

using namespace paracr;
using testsupport::mono;
using testsupport::var;

namespace {

// Random near-identity map with exact polynomial components.
PointMap randomMap(testsupport::Rng& rng, int L)
{
    const Grading g = Grading::regular();
    PointMap m;
    m.X = rng.rational() * var(Var::x) + testsupport::randomPoly(rng, g, kExactOrder, 2, L, {Var::x, Var::y}, 0.3);
    m.Y = rng.rational() * var(Var::y) + testsupport::randomPoly(rng, g, kExactOrder, 3, L, {Var::x, Var::y}, 0.3);
    m.A = rng.rational() * var(Var::a) + testsupport::randomPoly(rng, g, kExactOrder, 3, L, {Var::a, Var::b}, 0.3);
    m.B = rng.rational() * var(Var::b) + testsupport::randomPoly(rng, g, kExactOrder, 2, L, {Var::a, Var::b}, 0.3);
    return m;
}

// Undetermined coefficients: F* = sum c_m m over all monomials of weight
// <= L, with Y(x,F) - F*(A,B,X(x,F)) = 0 solved as a linear system.
WeightedPoly applyMapByLinearSolve(const WeightedPoly& F, const PointMap& m)
{
    const Grading& g = F.grading();
    const int L = F.order();
    SeriesAssignment onS;
    onS.set(Var::y, F);
    const WeightedPoly Fy = substitute(m.Y, onS, std::nullopt, L);
    const WeightedPoly Xf = substitute(m.X, onS, std::nullopt, L);
    SeriesAssignment back;
    back.set(Var::a, m.A.truncated(L)).set(Var::b, m.B.truncated(L)).set(Var::x, Xf);

    std::vector<Monomial> cols, rows;
    for (int w = 0; w <= L; ++w)
        for (Monomial mo : monomialsOfWeight(g, w, {Var::a, Var::b, Var::x})) cols.push_back(mo);
    rows = cols;
    std::map<Monomial, std::size_t> rowOf;
    for (std::size_t i = 0; i < rows.size(); ++i) rowOf[rows[i]] = i;
    RationalMatrix M(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        const WeightedPoly img = substitute(WeightedPoly::monomial(cols[j], 1, g, L), back, std::nullopt, L);
        for (const auto& t : img.terms()) M(rowOf.at(t.mono), j) = t.coef;
    }
    std::vector<Rational> rhs(rows.size());
    for (const auto& t : Fy.terms()) rhs[rowOf.at(t.mono)] = t.coef;
    auto sol = solve(M, rhs);
    REQUIRE(sol);
    WeightedPoly out(g, L);
    for (std::size_t j = 0; j < cols.size(); ++j) out += WeightedPoly::monomial(cols[j], (*sol)[j], g, L);
    return out;
}

}  // namespace

TEST_CASE("applyMap examples")
{
    const int L = 3;
    const WeightedPoly F = var(Var::a, L) + var(Var::b, L) * var(Var::x, L) + mono({{Var::x, 3}}, 1, L);
    CHECK(applyMap(F, PointMap::identity(Grading::regular())) == F);
    PointMap m = PointMap::identity(Grading::regular());
    m.Y = var(Var::y) - mono({{Var::x, 3}});
    CHECK(applyMap(F, m) == var(Var::a, L) + var(Var::b, L) * var(Var::x, L));
}

TEST_CASE("applyMap matches the undetermined-coefficient oracle")
{
    testsupport::Rng rng(11);
    for (int trial = 0; trial < 15; ++trial) {
        const int L = 5;
        const WeightedPoly F = testsupport::randomRegularJet(rng, L, 0.5);
        const PointMap m = randomMap(rng, L);
        const WeightedPoly Fs = applyMap(F, m);
        CHECK(Fs == applyMapByLinearSolve(F, m));
        CHECK(mapResidual(F, m, Fs).isZero());
    }
}

TEST_CASE("applyMap is functorial")
{
    testsupport::Rng rng(12);
    for (int trial = 0; trial < 15; ++trial) {
        const int L = 7;
        const WeightedPoly F = testsupport::randomRegularJet(rng, L, 0.4);
        const PointMap m1 = randomMap(rng, L), m2 = randomMap(rng, L);
        CHECK(applyMap(applyMap(F, m1), m2) == applyMap(F, compose(m2, m1, L)));
    }
}

TEST_CASE("invert composes to the identity")
{
    testsupport::Rng rng(13);
    for (int trial = 0; trial < 15; ++trial) {
        const int L = 8;
        const PointMap m = randomMap(rng, L);
        const PointMap inv = invert(m, L);
        const PointMap id = PointMap::identity(Grading::regular()).truncated(L);
        const PointMap left = compose(m, inv, L), right = compose(inv, m, L);
        CHECK(left.X == id.X);
        CHECK(left.Y == id.Y);
        CHECK(left.A == id.A);
        CHECK(left.B == id.B);
        CHECK(right.X == id.X);
        CHECK(right.Y == id.Y);
        CHECK(right.A == id.A);
        CHECK(right.B == id.B);
    }
}

TEST_CASE("applyMap rejects maps that lower weights")
{
    PointMap m = PointMap::identity(Grading::regular());
    m.Y = var(Var::y) + var(Var::x);
    const WeightedPoly F = var(Var::a, 4) + var(Var::b, 4) * var(Var::x, 4);
    CHECK_THROWS_AS(applyMap(F, m), StructuralError);
}
