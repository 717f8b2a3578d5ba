/// @file test_causal_sets.cpp
/// @brief Sprinkling, chain distances and the scaling probe.

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "dkit/causal_sets.hpp"
#include "dkit/causality_checks.hpp"
#include "dkit/distance_core.hpp"

using namespace dkit;
using causets::CausalSet;
using causets::Region;
using core::ExtReal;
using models::SpacetimeModel;

namespace {
const models::Box kBox{-4, 4, -4, 4};
}

TEST_CASE("sprinkle: determinism, acyclicity, link matrix is the reduction") {
    const SpacetimeModel mink = SpacetimeModel::minkowski(kBox);
    const Region diamond = Region::diamond_region({-1.0, 0.0}, {1.0, 0.0});
    const CausalSet cs = causets::sprinkle(mink, diamond, 60.0, 7);
    CHECK(cs.size() > 20);
    CHECK(cs.order.is_irreflexive());
    CHECK(cs.order.is_transitive());
    CHECK(cs.order.is_antisymmetric());

    // Same call twice: identical causal set.
    const CausalSet cs2 = causets::sprinkle(mink, diamond, 60.0, 7);
    CHECK(cs.order == cs2.order);
    for (std::size_t i = 0; i < cs.size(); ++i) {
        CHECK(cs.points[i].t == cs2.points[i].t);
        CHECK(cs.points[i].x == cs2.points[i].x);
    }

    // Links: covering relation, exactly order minus two-step composites.
    for (std::size_t i = 0; i < cs.size(); ++i) {
        for (std::size_t j = 0; j < cs.size(); ++j) {
            bool between = false;
            for (std::size_t k = 0; k < cs.size() && !between; ++k) {
                between = cs.order.at(i, k) && cs.order.at(k, j);
            }
            CHECK(cs.links.at(i, j) == (cs.order.at(i, j) && !between));
        }
    }
}

TEST_CASE("sprinkle into a CTC cylinder region is rejected") {
    const SpacetimeModel cyl = SpacetimeModel::ctc_cylinder(1.0, kBox);
    const Region region = Region::box_region({0.0, 1.0, -1.0, 1.0});
    CHECK_THROWS_WITH_AS(causets::sprinkle(cyl, region, 40.0, 5),
                         "sprinkle: order not acyclic", core::ConstructionError);
}

TEST_CASE("empty draw is a value, not an error") {
    const SpacetimeModel mink = SpacetimeModel::minkowski(kBox);
    const CausalSet cs =
        causets::sprinkle(mink, Region::diamond_region({-0.05, 0}, {0.05, 0}), 0.001, 3);
    CHECK(cs.size() == 0);
}

TEST_CASE("chain distances on hand poset shapes") {
    SUBCASE("3-chain") {
        CausalSet cs;
        cs.labels = {"a", "b", "c"};
        cs.points = {{0, 0}, {1, 0}, {2, 0}};
        cs.order = core::Relation(cs.labels);
        cs.order.set(0, 1, true);
        cs.order.set(1, 2, true);
        cs.order.set(0, 2, true);
        const auto d = causets::chain_distance_matrix(cs);
        CHECK(d.at(0, 1).finite_value() == 1.0);
        CHECK(d.at(1, 2).finite_value() == 1.0);
        CHECK(d.at(0, 2).finite_value() == 2.0);
        CHECK(d.at(2, 0).finite_value() == 0.0);
        CHECK(d.at(0, 0).finite_value() == 0.0);
    }
    SUBCASE("antichain") {
        CausalSet cs;
        cs.labels = {"a", "b"};
        cs.points = {{0, 0}, {0, 1}};
        cs.order = core::Relation(cs.labels);
        const auto d = causets::chain_distance_matrix(cs);
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) CHECK(d.at(i, j).finite_value() == 0.0);
        }
    }
    SUBCASE("N poset: a<c, b<c, b<d") {
        CausalSet cs;
        cs.labels = {"a", "b", "c", "d"};
        cs.points = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
        cs.order = core::Relation(cs.labels);
        cs.order.set(0, 2, true);
        cs.order.set(1, 2, true);
        cs.order.set(1, 3, true);
        const auto d = causets::chain_distance_matrix(cs);
        CHECK(d.at(0, 2).finite_value() == 1.0);
        CHECK(d.at(1, 2).finite_value() == 1.0);
        CHECK(d.at(1, 3).finite_value() == 1.0);
        CHECK(d.at(0, 3).finite_value() == 0.0);
        CHECK(d.at(0, 1).finite_value() == 0.0);
        std::size_t nonzero = 0;
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                if (d.at(i, j).finite_value() > 0) ++nonzero;
            }
        }
        CHECK(nonzero == 3);
    }
}

TEST_CASE("sprinkled chain matrices: reverse triangle and {d>0} = order") {
    const SpacetimeModel mink = SpacetimeModel::minkowski(kBox);
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const CausalSet cs = causets::sprinkle(
            mink, Region::diamond_region({-1.0, 0.0}, {1.0, 0.0}), 80.0, seed);
        const auto d = causets::chain_distance_matrix(cs);
        CHECK(core::check_reverse_triangle(d).pass());
        CHECK(core::chronology(d) == cs.order);
        // Parallel DP vs serial reference.
        const auto ds = causets::serial::chain_distance_matrix(cs);
        for (std::size_t i = 0; i < cs.size(); ++i) {
            for (std::size_t j = 0; j < cs.size(); ++j) {
                CHECK(d.at(i, j) == ds.at(i, j));
            }
        }
    }
}

TEST_CASE("edge list and coordinate export") {
    const SpacetimeModel mink = SpacetimeModel::minkowski(kBox);
    const CausalSet cs = causets::sprinkle(
        mink, Region::diamond_region({-0.8, 0.0}, {0.8, 0.0}), 30.0, 11);
    const auto dir = std::filesystem::temp_directory_path();
    const std::string edges = (dir / "dkit_edges.txt").string();
    const std::string coords = (dir / "dkit_coords.csv").string();
    causets::save_edge_list(cs, edges);
    causets::save_coordinates(cs, coords);
    std::ifstream ef(edges);
    std::size_t lines = 0;
    std::string line;
    while (std::getline(ef, line)) ++lines;
    CHECK(lines == cs.links.pair_count());
    std::ifstream cf(coords);
    std::getline(cf, line);
    CHECK(line == "label,t,x");
    std::filesystem::remove(edges);
    std::filesystem::remove(coords);
}

TEST_CASE("scaling probe: insufficient density is flagged") {
    const causets::ScalingReport rep = causets::chain_scaling_probe({0.001, 0.01}, 5, 2);
    CHECK(rep.entries[0].insufficient_sample);
}

TEST_CASE("scaling probe: medians increase and L/sqrt(N) brackets (moderate sizes)") {
    const causets::ScalingReport rep = causets::chain_scaling_probe({500.0, 2000.0}, 8, 42);
    REQUIRE(rep.entries.size() == 2);
    CHECK(rep.entries[0].median_chain < rep.entries[1].median_chain);
    CHECK(rep.entries[1].ratio > 1.5);
    CHECK(rep.entries[1].ratio < 2.2);
}
