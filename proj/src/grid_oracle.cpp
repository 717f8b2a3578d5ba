/// @file grid_oracle.cpp

#include "dkit/grid_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dkit::models {

namespace {

using finsler::Vec;

inline Vec as_vec(Point p) { return {p.t, p.x}; }

// Straight segment u -> v stays inside the model domain (misses removed sets).
bool segment_admissible(const SpacetimeModel& model, Point u, Point v) {
    switch (model.kind()) {
        case ModelKind::SlitMinkowski: {
            if (u.t < 0.0 && v.t > 0.0) {
                const double xc = u.x + (0.0 - u.t) * (v.x - u.x) / (v.t - u.t);
                return xc > 0.0;
            }
            return true;
        }
        case ModelKind::PuncturedMinkowski: {
            const double cross = u.t * v.x - u.x * v.t;
            const double scale = std::max({std::fabs(u.t), std::fabs(u.x),
                                           std::fabs(v.t), std::fabs(v.x), 1.0});
            if (std::fabs(cross) > 1e-14 * scale * scale) return true;
            return !(u.t * v.t + u.x * v.x < 0.0);
        }
        default:
            return true;
    }
}

inline bool edge_causal(const SpacetimeModel& model, Point u, Point v) {
    const Point d = v - u;
    if (d.t <= 0.0) return false;
    return model.norm().closed_cone_test(as_vec(d)) && segment_admissible(model, u, v);
}

inline double edge_weight(const SpacetimeModel& model, Point u, Point v) {
    return model.norm().evaluate(as_vec(v - u));
}

}  // namespace

namespace serial {

double longest_path_value(const SpacetimeModel& model, Point p_snap, Point q_snap,
                          const std::vector<Point>& nodes, bool* found) {
    // Nodes are pre-sorted by (t, x); p_snap/q_snap are members of `nodes`.
    const double neg = -std::numeric_limits<double>::infinity();
    std::vector<double> dist(nodes.size(), neg);
    std::size_t src = nodes.size(), dst = nodes.size();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].t == p_snap.t && nodes[i].x == p_snap.x) src = i;
        if (nodes[i].t == q_snap.t && nodes[i].x == q_snap.x) dst = i;
    }
    if (src >= nodes.size() || dst >= nodes.size()) {
        if (found) *found = false;
        return 0.0;
    }
    dist[src] = 0.0;
    for (std::size_t v = src + 1; v <= dst; ++v) {
        double best = neg;
        for (std::size_t u = src; u < v; ++u) {
            if (dist[u] == neg) continue;
            if (!edge_causal(model, nodes[u], nodes[v])) continue;
            best = std::max(best, dist[u] + edge_weight(model, nodes[u], nodes[v]));
        }
        dist[v] = best;
    }
    if (found) *found = dist[dst] != neg;
    return dist[dst] == neg ? 0.0 : dist[dst];
}

}  // namespace serial

OracleReport verify_against_grid_oracle(const SpacetimeModel& model,
                                        const std::vector<std::pair<Point, Point>>& pairs,
                                        int resolution) {
    if (resolution < 4) throw InputError("grid oracle: resolution must be >= 4");
    OracleReport report;
    report.resolution = resolution;
    report.pairs.resize(pairs.size());

    const Box& box = model.domain();
    const double ht = box.t_span() / resolution;
    const double hx = box.x_span() / resolution;
    const double fudge = 3.0 * std::max(ht, hx);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (long long k = 0; k < static_cast<long long>(pairs.size()); ++k) {
        const Point p = pairs[k].first;
        const Point q = pairs[k].second;
        OraclePairResult res;
        res.p = p;
        res.q = q;
        res.exact = model.exact_d(p, q);

        // Grid nodes inside the slope-1 causal hull of (p, q), inflated by a
        // few cells so inward-snapped endpoints stay included.
        std::vector<Point> nodes;
        const long long i_lo = std::max(1LL, static_cast<long long>(
                                                 std::floor((p.t - fudge - box.t_lo) / ht)));
        const long long i_hi =
            std::min(static_cast<long long>(resolution) - 1,
                     static_cast<long long>(std::ceil((q.t + fudge - box.t_lo) / ht)));
        for (long long i = i_lo; i <= i_hi; ++i) {
            const double t = box.t_lo + static_cast<double>(i) * ht;
            for (long long j = 1; j < resolution; ++j) {
                const double x = box.x_lo + static_cast<double>(j) * hx;
                const Point g{t, x};
                if (!model.in_domain(g)) continue;
                if (std::fabs(g.x - p.x) > (g.t - p.t) + fudge) continue;
                if (std::fabs(q.x - g.x) > (q.t - g.t) + fudge) continue;
                nodes.push_back(g);
            }
        }
        std::sort(nodes.begin(), nodes.end(), [](Point a, Point b) {
            return a.t != b.t ? a.t < b.t : a.x < b.x;
        });

        // Inward snap: p_snap in the causal future of p, q_snap in the causal
        // past of q, both joined to the original endpoints by admissible
        // segments. Any DAG path then extends to a causal path p -> q.
        double best_p = std::numeric_limits<double>::infinity();
        double best_q = best_p;
        bool have_p = false, have_q = false;
        for (const Point& g : nodes) {
            if (edge_causal(model, p, g)) {
                const double c = (g.t - p.t) * (g.t - p.t) + (g.x - p.x) * (g.x - p.x);
                if (c < best_p) {
                    best_p = c;
                    res.p_snap = g;
                    have_p = true;
                }
            }
            if (edge_causal(model, g, q)) {
                const double c = (q.t - g.t) * (q.t - g.t) + (q.x - g.x) * (q.x - g.x);
                if (c < best_q) {
                    best_q = c;
                    res.q_snap = g;
                    have_q = true;
                }
            }
        }
        res.snap_found = have_p && have_q;
        if (res.snap_found) {
            bool found = false;
            res.oracle =
                serial::longest_path_value(model, res.p_snap, res.q_snap, nodes, &found);
            res.path_found = found;
        }
        report.pairs[k] = res;
    }

    bool first = true;
    for (const OraclePairResult& r : report.pairs) {
        if (r.exact.is_infinite()) {
            ++report.infinite_pairs;
            continue;
        }
        if (!r.snap_found) continue;
        const double gap = r.exact.finite_value() - r.oracle;
        if (first) {
            report.max_gap = report.min_gap = gap;
            first = false;
        } else {
            report.max_gap = std::max(report.max_gap, gap);
            report.min_gap = std::min(report.min_gap, gap);
        }
    }
    return report;
}

OracleReport verify_against_grid_oracle(const SpacetimeModel& model,
                                        const SampleSpace& sample, int resolution,
                                        std::size_t max_pairs) {
    std::vector<std::pair<Point, Point>> pairs;
    for (std::size_t i = 0; i < sample.core_count && pairs.size() < max_pairs; ++i) {
        for (std::size_t j = 0; j < sample.core_count && pairs.size() < max_pairs; ++j) {
            if (i != j && core::ext_positive(sample.matrix.at(i, j))) {
                pairs.emplace_back(sample.points[i], sample.points[j]);
            }
        }
    }
    return verify_against_grid_oracle(model, pairs, resolution);
}

}  // namespace dkit::models
