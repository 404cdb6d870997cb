// Serial against OpenMP: exact elimination, polynomial products, batch
// normalization.  Results are checked for equality before timing is shown.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "paracr/cm_operator.hpp"
#include "paracr/parallel.hpp"
#include "paracr/point_map.hpp"
#include "../tests/support/random_jets.hpp"

using namespace paracr;

namespace {

double seconds(const std::function<void()>& f, int reps)
{
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void row(const char* name, double serial, double parallel, bool same)
{
    std::printf("%-34s serial %9.4f s  parallel %9.4f s  speedup %5.2f  %s\n", name, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0, same ? "same" : "DIFFERENT");
}

}  // namespace

int main(int argc, char** argv)
{
    const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
    std::printf("threads: %d, repetitions: %d\n", maxThreads(), reps);

    const ModelOperator op = ModelOperator::regular();
    for (int ell : {16, 24}) {
        const RationalMatrix M = op.matrix(ell);
        Echelon es, ep;
        const double s = seconds([&] { es = rref(M, Backend::Serial); }, reps);
        const double p = seconds([&] { ep = rref(M, Backend::Parallel); }, reps);
        char name[64];
        std::snprintf(name, sizeof name, "rref, operator l = %d (%zux%zu)", ell, M.rows(), M.cols());
        row(name, s, p, es.pivots == ep.pivots);
    }

    testsupport::Rng rng(11);
    const Grading g = Grading::regular();
    for (int L : {14, 18}) {
        const auto a = testsupport::randomPoly(rng, g, L, 0, L, {Var::a, Var::b, Var::x, Var::y}, 0.6);
        const auto b = testsupport::randomPoly(rng, g, L, 0, L, {Var::a, Var::b, Var::x, Var::y}, 0.6);
        WeightedPoly rs, rp;
        const double s = seconds([&] { rs = a * b; }, reps);
        const double p = seconds([&] { rp = mulParallel(a, b); }, reps);
        char name[64];
        std::snprintf(name, sizeof name, "product, order %d (%zu x %zu terms)", L, a.size(), b.size());
        row(name, s, p, rs == rp);
    }

    std::vector<SurfaceJet> jets;
    for (int i = 0; i < 64; ++i) jets.push_back(testsupport::randomRegularJet(rng, 9));
    normalizeBatch({jets.front()}, Backend::Serial);  // warm the solver cache
    std::vector<BatchItem> bs, bp;
    const double s = seconds([&] { bs = normalizeBatch(jets, Backend::Serial); }, 1);
    const double p = seconds([&] { bp = normalizeBatch(jets, Backend::Parallel); }, 1);
    bool same = bs.size() == bp.size();
    for (std::size_t i = 0; same && i < bs.size(); ++i)
        same = bs[i].ok == bp[i].ok && bs[i].report.normalized == bp[i].report.normalized;
    row("normalizeJet batch, 64 jets, L = 9", s, p, same);
    return same ? 0 : 1;
}
