#pragma once

// Random inputs for property tests.  Coefficients are small rationals so
// that exact arithmetic stays cheap.

#include <random>
#include <vector>

#include "paracr/jet.hpp"

namespace testsupport {

using paracr::Grading;
using paracr::Monomial;
using paracr::Rational;
using paracr::Var;
using paracr::WeightedPoly;

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
    bool coin(double p) { return std::bernoulli_distribution(p)(gen); }

    Rational rational(int maxNum = 5, int maxDen = 4)
    {
        int num = 0;
        while (num == 0) num = uniform(-maxNum, maxNum);
        Rational q(num, uniform(1, maxDen));
        q.canonicalize();
        return q;
    }
};

inline WeightedPoly randomPoly(Rng& rng, const Grading& g, int order, int minWeight, int maxWeight,
                               std::vector<Var> vars = {Var::a, Var::b, Var::x},
                               double density = 0.4)
{
    WeightedPoly p(g, order);
    for (int w = minWeight; w <= maxWeight; ++w)
        for (Monomial m : paracr::monomialsOfWeight(g, w, vars))
            if (rng.coin(density)) p += WeightedPoly::monomial(m, rng.rational(), g, order);
    return p;
}

/// a + b x + (random terms of weight 3..L) in the regular grading.
inline WeightedPoly randomRegularJet(Rng& rng, int L, double density = 0.35)
{
    const Grading g = Grading::regular();
    return WeightedPoly::variable(Var::a, g, L) +
           WeightedPoly::variable(Var::b, g, L) * WeightedPoly::variable(Var::x, g, L) +
           randomPoly(rng, g, L, 3, L, {Var::a, Var::b, Var::x}, density);
}

/// a + b^m x^n + (random terms of weight k+1..L), singular grading k = m+n.
inline WeightedPoly randomSingularJet(Rng& rng, unsigned m, unsigned n, int L, double density = 0.3)
{
    const int k = static_cast<int>(m + n);
    const Grading g = Grading::singular(k);
    std::array<unsigned, paracr::kVarCount> e{};
    e[paracr::index(Var::b)] = m;
    e[paracr::index(Var::x)] = n;
    return WeightedPoly::variable(Var::a, g, L) +
           WeightedPoly::monomial(Monomial::fromExponents(e), 1, g, L) +
           randomPoly(rng, g, L, k + 1, L, {Var::a, Var::b, Var::x}, density);
}

}  // namespace testsupport
