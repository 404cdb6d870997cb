#include "paracr/parallel.hpp"

#include <omp.h>

namespace paracr {

int maxThreads() { return omp_get_max_threads(); }

WeightedPoly mulParallel(const WeightedPoly& p, const WeightedPoly& q)
{
    const auto terms = p.terms();
    const long chunks = std::min<long>(static_cast<long>(terms.size()), 4L * omp_get_max_threads());
    if (chunks <= 1) return p * q;
    std::vector<WeightedPoly> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic, 1)
    for (long c = 0; c < chunks; ++c) {
        const std::size_t lo = terms.size() * static_cast<std::size_t>(c) / static_cast<std::size_t>(chunks);
        const std::size_t hi = terms.size() * static_cast<std::size_t>(c + 1) / static_cast<std::size_t>(chunks);
        std::vector<WeightedPoly::Term> part(terms.begin() + static_cast<long>(lo), terms.begin() + static_cast<long>(hi));
        partial[static_cast<std::size_t>(c)] = WeightedPoly::fromTerms(std::move(part), p.grading(), p.order()) * q;
    }
    // Pairwise reduction keeps the additions balanced.
    for (std::size_t step = 1; step < partial.size(); step *= 2) {
        const long pairs = static_cast<long>(partial.size());
#pragma omp parallel for schedule(dynamic, 1)
        for (long i = 0; i < pairs; i += static_cast<long>(2 * step))
            if (static_cast<std::size_t>(i) + step < partial.size())
                partial[static_cast<std::size_t>(i)] += partial[static_cast<std::size_t>(i) + step];
    }
    return partial[0];
}

std::vector<BatchItem> normalizeBatch(const std::vector<SurfaceJet>& jets, Backend backend)
{
    std::vector<BatchItem> out(jets.size());
    auto one = [&](std::size_t i) {
        try {
            out[i].report = normalizeJet(jets[i]);
            out[i].ok = true;
        } catch (const std::exception& e) {
            out[i].error = e.what();
        }
    };
    const long n = static_cast<long>(jets.size());
    if (backend == Backend::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (long i = 0; i < n; ++i) one(static_cast<std::size_t>(i));
    } else {
        for (long i = 0; i < n; ++i) one(static_cast<std::size_t>(i));
    }
    return out;
}

}  // namespace paracr
