/// @file causal_sets.cpp

#include "dkit/causal_sets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dkit::causets {

using core::ConstructionError;
using core::ExtReal;
using models::SplitMix64;

double Region::area() const {
    if (kind == Kind::Box) return box.t_span() * box.x_span();
    // Open coordinate diamond between bottom and top: a square in lightcone
    // coordinates u = t+x, w = t-x of side (u_top-u_bot) etc., area = uw/2.
    const double du = (top.t + top.x) - (bottom.t + bottom.x);
    const double dw = (top.t - top.x) - (bottom.t - bottom.x);
    return 0.5 * du * dw;
}

namespace {

Point uniform_in_region(const Region& region, SplitMix64& rng) {
    if (region.kind == Region::Kind::Box) {
        return {rng.next_in(region.box.t_lo, region.box.t_hi),
                rng.next_in(region.box.x_lo, region.box.x_hi)};
    }
    const double u_lo = region.bottom.t + region.bottom.x;
    const double u_hi = region.top.t + region.top.x;
    const double w_lo = region.bottom.t - region.bottom.x;
    const double w_hi = region.top.t - region.top.x;
    const double u = rng.next_in(u_lo, u_hi);
    const double w = rng.next_in(w_lo, w_hi);
    return {0.5 * (u + w), 0.5 * (u - w)};
}

// Row bitsets for the O(n^3 / 64) transitivity and reduction passes.
struct BitRows {
    std::size_t n = 0, words = 0;
    std::vector<std::uint64_t> bits;

    explicit BitRows(std::size_t n_) : n(n_), words((n_ + 63) / 64), bits(n_ * words, 0) {}
    void set(std::size_t i, std::size_t j) { bits[i * words + j / 64] |= 1ULL << (j % 64); }
    bool get(std::size_t i, std::size_t j) const {
        return (bits[i * words + j / 64] >> (j % 64)) & 1ULL;
    }
    const std::uint64_t* row(std::size_t i) const { return &bits[i * words]; }
};

}  // namespace

CausalSet sprinkle(const SpacetimeModel& model, const Region& region, double density,
                   std::uint64_t seed) {
    if (density <= 0.0) throw ConstructionError("sprinkle: density must be positive");
    SplitMix64 rng(seed);
    const double mean = density * region.area();
    const std::size_t target = rng.next_poisson(mean);

    CausalSet cs;
    for (std::size_t i = 0; i < target; ++i) {
        const Point p = uniform_in_region(region, rng);
        if (!model.in_domain(p)) continue;
        char buf[16];
        std::snprintf(buf, sizeof(buf), "n%04zu", cs.points.size());
        cs.labels.emplace_back(buf);
        cs.points.push_back(p);
    }

    const std::size_t n = cs.points.size();
    cs.order = Relation(cs.labels);
    BitRows rows(n), cols(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (model.exact_causal(cs.points[i], cs.points[j])) {
                cs.order.set(i, j, true);
                rows.set(i, j);
                cols.set(j, i);
            }
        }
    }

    // Strict partial order: irreflexive by construction; acyclicity reduces to
    // antisymmetry because the host causal relation is transitive.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (cs.order.at(i, j) && cs.order.at(j, i)) {
                throw ConstructionError("sprinkle: order not acyclic");
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!cs.order.at(i, j)) continue;
            for (std::size_t w = 0; w < rows.words; ++w) {
                if (rows.row(j)[w] & ~rows.row(i)[w]) {
                    throw ConstructionError("sprinkle: order not transitive");
                }
            }
        }
    }

    // Transitive reduction: (i,j) is a link iff no k sits strictly between.
    cs.links = Relation(cs.labels);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!cs.order.at(i, j)) continue;
            bool between = false;
            for (std::size_t w = 0; w < rows.words && !between; ++w) {
                if (rows.row(i)[w] & cols.row(j)[w]) between = true;
            }
            cs.links.set(i, j, !between);
        }
    }
    return cs;
}

namespace {

std::vector<std::size_t> topological_order(const Relation& order) {
    const std::size_t n = order.size();
    std::vector<std::size_t> indeg(n, 0), out;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (order.at(i, j)) ++indeg[j];
        }
    }
    std::vector<std::size_t> queue;
    for (std::size_t i = 0; i < n; ++i) {
        if (indeg[i] == 0) queue.push_back(i);
    }
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.erase(queue.begin());
        out.push_back(v);
        for (std::size_t j = 0; j < n; ++j) {
            if (order.at(v, j) && --indeg[j] == 0) queue.push_back(j);
        }
    }
    if (out.size() != n) throw ConstructionError("topological sort: order has a cycle");
    return out;
}

void chain_row(const CausalSet& cs, const std::vector<std::size_t>& topo,
               std::size_t source, DistanceMatrix& m) {
    const std::size_t n = cs.size();
    std::vector<int> best(n, -1);
    best[source] = 0;
    for (std::size_t v : topo) {
        if (best[v] < 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (cs.order.at(v, j) && best[v] + 1 > best[j]) best[j] = best[v] + 1;
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        m.set(source, j, ExtReal(best[j] > 0 ? static_cast<double>(best[j]) : 0.0));
    }
}

}  // namespace

namespace serial {

DistanceMatrix chain_distance_matrix(const CausalSet& cs) {
    DistanceMatrix m(cs.labels);
    const std::vector<std::size_t> topo = topological_order(cs.order);
    for (std::size_t i = 0; i < cs.size(); ++i) chain_row(cs, topo, i, m);
    return m;
}

}  // namespace serial

DistanceMatrix chain_distance_matrix(const CausalSet& cs) {
    DistanceMatrix m(cs.labels);
    const std::vector<std::size_t> topo = topological_order(cs.order);
    const long long n = static_cast<long long>(cs.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
    for (long long i = 0; i < n; ++i) {
        chain_row(cs, topo, static_cast<std::size_t>(i), m);
    }
    return m;
}

void save_edge_list(const CausalSet& cs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw core::InputError("cannot write edge list: " + path);
    for (auto [u, v] : cs.links.strict_edges()) {
        out << cs.labels[u] << " " << cs.labels[v] << "\n";
    }
}

void save_coordinates(const CausalSet& cs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw core::InputError("cannot write coordinates: " + path);
    out << "label,t,x\n";
    char buf[96];
    for (std::size_t i = 0; i < cs.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g", cs.labels[i].c_str(),
                      cs.points[i].t, cs.points[i].x);
        out << buf << "\n";
    }
}

// ---------------------------------------------------------------------------
// Scaling probe

namespace {

// Longest corner-to-corner chain (edge count) without materializing the order
// relation; points are all inside the diamond, so both corners relate to all.
int diamond_longest_chain(std::vector<Point>& pts) {
    std::sort(pts.begin(), pts.end(),
              [](Point a, Point b) { return a.t != b.t ? a.t < b.t : a.x < b.x; });
    const std::size_t n = pts.size();
    std::vector<int> len(n, 1);  // chain length in edges from the bottom corner
    int best = 1;                // direct bottom -> top edge
    for (std::size_t i = 0; i < n; ++i) {
        int m = 1;
        for (std::size_t j = 0; j < i; ++j) {
            const double dt = pts[i].t - pts[j].t;
            const double dx = std::fabs(pts[i].x - pts[j].x);
            if (dt >= dx && len[j] + 1 > m) m = len[j] + 1;
        }
        len[i] = m;
        if (m + 1 > best) best = m + 1;
    }
    return best;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

ScalingReport chain_scaling_probe(const std::vector<double>& density_list, int trials,
                                  std::uint64_t seed) {
    for (std::size_t i = 1; i < density_list.size(); ++i) {
        if (density_list[i] <= density_list[i - 1]) {
            throw core::InputError("chain_scaling_probe: densities must increase");
        }
    }
    const double s = 1.0 / std::sqrt(2.0);  // unit-area diamond half-height
    const Region diamond = Region::diamond_region({-s, 0.0}, {s, 0.0});

    ScalingReport report;
    for (std::size_t di = 0; di < density_list.size(); ++di) {
        const double density = density_list[di];
        std::vector<double> chains(trials), counts(trials);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
        for (int trial = 0; trial < trials; ++trial) {
            SplitMix64 rng(seed + 1000003ULL * di + static_cast<std::uint64_t>(trial));
            const std::size_t n = rng.next_poisson(density * diamond.area());
            std::vector<Point> pts;
            pts.reserve(n);
            for (std::size_t k = 0; k < n; ++k) pts.push_back(uniform_in_region(diamond, rng));
            counts[trial] = static_cast<double>(pts.size());
            chains[trial] = pts.size() < 2 ? (pts.empty() ? 1.0 : 2.0)
                                           : static_cast<double>(diamond_longest_chain(pts));
        }
        ScalingEntry e;
        e.density = density;
        e.median_chain = median(chains);
        e.median_n = median(counts);
        e.insufficient_sample = e.median_n <= 1.0;
        e.ratio = e.median_n > 0.0 ? e.median_chain / std::sqrt(e.median_n) : 0.0;
        report.entries.push_back(e);
    }

    report.medians_strictly_increasing = true;
    for (std::size_t i = 1; i < report.entries.size(); ++i) {
        if (!(report.entries[i].median_chain > report.entries[i - 1].median_chain)) {
            report.medians_strictly_increasing = false;
        }
    }
    report.ratios_in_bracket = true;
    for (const ScalingEntry& e : report.entries) {
        if (e.median_n >= 2000.0 && (e.ratio < 1.5 || e.ratio > 2.2)) {
            report.ratios_in_bracket = false;
        }
    }
    return report;
}

}  // namespace dkit::causets
