#pragma once

// OpenMP kernels.  Each has a serial reference with identical results; the
// tests compare them and paracr_bench times them.

#include <string>
#include <vector>

#include "paracr/jet.hpp"
#include "paracr/linalg.hpp"
#include "paracr/regular_normal.hpp"

namespace paracr {

/// p * q with the terms of p split across threads.
WeightedPoly mulParallel(const WeightedPoly& p, const WeightedPoly& q);

struct BatchItem {
    bool ok = false;
    NormalFormReport report;
    std::string error;
};

/// normalizeJet on each jet; failures are recorded per item.
std::vector<BatchItem> normalizeBatch(const std::vector<SurfaceJet>& jets, Backend backend);

int maxThreads();

}  // namespace paracr
