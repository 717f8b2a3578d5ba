/// @file grid_oracle.hpp
/// @brief Independent brute-force distance oracle: a regular grid inside the
///        model domain (minus removed sets) becomes a causal DAG whose
///        longest-path values lower-bound the exact distance and converge to
///        it as the resolution grows.

#pragma once

#include <vector>

#include "dkit/geometry_models.hpp"

namespace dkit::models {

struct OraclePairResult {
    Point p, q;                 // requested pair
    Point p_snap, q_snap;       // inward-snapped grid endpoints
    ExtReal exact;              // exact_d(p, q)
    double oracle = 0.0;        // longest causal-DAG path p_snap -> q_snap
    bool path_found = false;
    bool snap_found = false;    // false when no admissible grid endpoint exists
};

struct OracleReport {
    int resolution = 0;
    std::vector<OraclePairResult> pairs;
    double max_gap = 0.0;       // max over pairs of exact - oracle (finite pairs)
    double min_gap = 0.0;       // most negative gap observed (should be >= -tol)
    std::size_t infinite_pairs = 0;  // exact = +inf: lower bound trivially valid

    bool lower_bound_ok(double tol = core::kDefaultTol) const { return min_gap >= -tol; }
};

/// Longest-path DP over a topological (time) order of the grid causal DAG.
/// Edges join every grid pair u -> v with v - u future causal whose segment
/// avoids removed sets; endpoints snap inward (p up, q down) so every DAG path
/// extends to a genuine causal path p -> q and the value is a true lower bound.
OracleReport verify_against_grid_oracle(const SpacetimeModel& model,
                                        const std::vector<std::pair<Point, Point>>& pairs,
                                        int resolution);

/// Convenience overload: all chronological core pairs of a sample (capped).
OracleReport verify_against_grid_oracle(const SpacetimeModel& model,
                                        const SampleSpace& sample, int resolution,
                                        std::size_t max_pairs = 24);

namespace serial {
/// Serial reference for the per-pair longest-path DP.
double longest_path_value(const SpacetimeModel& model, Point p_snap, Point q_snap,
                          const std::vector<Point>& nodes, bool* found);
}  // namespace serial

}  // namespace dkit::models
