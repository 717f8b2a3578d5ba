/// @file bench.cpp
/// @brief Benchmark of the OpenMP kernels against their serial references:
///        matrix fill, the reverse-triangle triple scan, the pair-comparison
///        relations and the chain-distance DP.

#include <chrono>
#include <cstdio>

#include "dkit/causal_sets.hpp"
#include "dkit/causality_checks.hpp"
#include "dkit/distance_core.hpp"
#include "dkit/geometry_models.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <typename F>
double time_ms(F&& f) {
    const auto t0 = Clock::now();
    f();
    return ms_since(t0);
}

void row(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s %10.1f ms %10.1f ms %8.2fx\n", name, serial_ms, parallel_ms,
                parallel_ms > 0.0 ? serial_ms / parallel_ms : 0.0);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP: %d threads\n", omp_get_max_threads());
#else
    std::printf("OpenMP: disabled\n");
#endif

    using namespace dkit;
    const models::SpacetimeModel mink =
        models::SpacetimeModel::minkowski({-3.0, 3.0, -3.0, 3.0});
    models::SampleSpec spec;
    spec.n = 196;
    spec.mode = models::SampleMode::GridWithProbes;
    spec.probe_multiplier = 2;
    spec.region = models::Box{-1.0, 1.0, -1.0, 1.0};
    const models::SampleSpace s = models::sample(mink, spec);
    std::printf("sample: %zu events\n\n", s.size());
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    row("fill_matrix",
        time_ms([&] { models::serial::fill_matrix(mink, s.labels, s.points); }),
        time_ms([&] { models::fill_matrix(mink, s.labels, s.points); }));

    row("check_reverse_triangle",
        time_ms([&] { core::serial::check_reverse_triangle(s.matrix); }),
        time_ms([&] { core::check_reverse_triangle(s.matrix); }));

    row("pair_comparisons",
        time_ms([&] { checks::serial::pair_comparisons(s.matrix); }),
        time_ms([&] { checks::pair_comparisons(s.matrix); }));

    const causets::CausalSet cs = causets::sprinkle(
        mink, causets::Region::diamond_region({-1.0, 0.0}, {1.0, 0.0}), 150.0, 7);
    std::printf("causal set: %zu nodes\n", cs.size());
    row("chain_distance_matrix",
        time_ms([&] { causets::serial::chain_distance_matrix(cs); }),
        time_ms([&] { causets::chain_distance_matrix(cs); }));

    return 0;
}
