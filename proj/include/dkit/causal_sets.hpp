/// @file causal_sets.hpp
/// @brief Poisson sprinkling into catalog models and the longest-chain
///        distance matrix: discrete Lorentzian metric spaces whose natural
///        topology is the discrete one.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dkit/distance_matrix.hpp"
#include "dkit/geometry_models.hpp"

namespace dkit::causets {

using core::DistanceMatrix;
using core::Relation;
using models::Point;
using models::SpacetimeModel;

/// Sprinkling region: a coordinate box or the open coordinate diamond between
/// two corner events.
struct Region {
    enum class Kind { Box, Diamond } kind = Kind::Box;
    models::Box box{};
    Point bottom{}, top{};  // diamond corners

    static Region box_region(models::Box b) { return {Kind::Box, b, {}, {}}; }
    static Region diamond_region(Point bottom, Point top) {
        return {Kind::Diamond, {}, bottom, top};
    }
    double area() const;
};

/// Locally finite strict partial order sprinkled into a host model. The order
/// is induced by the host's exact causal relation; links are its transitive
/// reduction. Both are validated at construction.
struct CausalSet {
    std::vector<std::string> labels;
    std::vector<Point> points;
    Relation order;  // irreflexive, transitive, acyclic
    Relation links;  // covering relation

    std::size_t size() const noexcept { return points.size(); }
};

/// Poisson(density * area) points i.i.d. uniform in the region, ordered by the
/// host model. Deterministic per seed; an empty draw is a valid empty set.
CausalSet sprinkle(const SpacetimeModel& model, const Region& region, double density,
                   std::uint64_t seed);

/// Entry (p,q) = edge count of the longest chain p -> q, 0 if q is not above
/// p. Makes d(p,p) = 0 and the reverse triangle inequality exact on chains.
DistanceMatrix chain_distance_matrix(const CausalSet& cs);

namespace serial {
DistanceMatrix chain_distance_matrix(const CausalSet& cs);
}

/// Edge-list export (`u v` per link) plus a coordinates CSV.
void save_edge_list(const CausalSet& cs, const std::string& path);
void save_coordinates(const CausalSet& cs, const std::string& path);

// ---------------------------------------------------------------------------
// Scaling probe: longest chain across the unit diamond vs sprinkling density.

struct ScalingEntry {
    double density = 0.0;
    double median_chain = 0.0;
    double median_n = 0.0;
    double ratio = 0.0;  // median_chain / sqrt(median_n)
    bool insufficient_sample = false;
};

struct ScalingReport {
    std::vector<ScalingEntry> entries;
    bool medians_strictly_increasing = false;
    bool ratios_in_bracket = false;  // L/sqrt(N) in [1.5, 2.2] where N >= 2000
};

/// Sprinkles the unit-area diamond of 2D Minkowski at each density and
/// reports the median corner-to-corner longest chain over `trials` runs.
ScalingReport chain_scaling_probe(const std::vector<double>& density_list, int trials,
                                  std::uint64_t seed);

}  // namespace dkit::causets
