#pragma once

#include <initializer_list>
#include <utility>

#include "paracr/jet.hpp"

namespace testsupport {

inline paracr::WeightedPoly mono(std::initializer_list<std::pair<paracr::Var, unsigned>> e,
                                 paracr::Rational q = 1, int L = paracr::kExactOrder,
                                 paracr::Grading g = paracr::Grading::regular())
{
    std::array<unsigned, paracr::kVarCount> ex{};
    for (auto [var, k] : e) ex[paracr::index(var)] = k;
    return paracr::WeightedPoly::monomial(paracr::Monomial::fromExponents(ex), q, g, L);
}

inline paracr::Monomial monoKey(std::initializer_list<std::pair<paracr::Var, unsigned>> e)
{
    std::array<unsigned, paracr::kVarCount> ex{};
    for (auto [var, k] : e) ex[paracr::index(var)] = k;
    return paracr::Monomial::fromExponents(ex);
}

inline paracr::WeightedPoly var(paracr::Var v, int L = paracr::kExactOrder,
                                paracr::Grading g = paracr::Grading::regular())
{
    return paracr::WeightedPoly::variable(v, g, L);
}

}  // namespace testsupport
