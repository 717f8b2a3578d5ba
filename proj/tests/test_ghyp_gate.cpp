/// @file test_ghyp_gate.cpp
/// @brief Verdict pipelines on the catalog: Minkowski consistent, the
///        counterexample triad refuted with the documented condition.

#include <doctest.h>

#include "dkit/distance_core.hpp"
#include "dkit/ghyp_gate.hpp"

using namespace dkit;
using gates::GateVerdict;
using gates::Verdict;
using models::SampleSpec;
using models::SpacetimeModel;

namespace {

models::SampleSpace catalog_sample(const SpacetimeModel& m, std::size_t n = 49) {
    SampleSpec spec;
    spec.n = n;
    spec.mode = models::SampleMode::GridWithProbes;
    spec.region = models::Box{-1, 1, -1, 1};
    return models::sample(m, spec);
}

}  // namespace

TEST_CASE("minkowski: both gates consistent, reconstructed J contains exact J") {
    const SpacetimeModel mink = SpacetimeModel::minkowski({-3.5, 3.5, -3.5, 3.5});
    const models::SampleSpace s = catalog_sample(mink);

    const GateVerdict main_gate = gates::thm_main_gate(s);
    CHECK(main_gate.verdict == Verdict::ConsistentWithGH);

    const GateVerdict dia = gates::diamond_gate(s);
    CHECK(dia.verdict == Verdict::ConsistentWithGH);

    core::Relation exact_j(s.labels);
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            exact_j.set(i, j, mink.exact_causal(s.points[i], s.points[j]));
        }
    }
    CHECK(main_gate.reconstructed_J.contains(exact_j));
}

TEST_CASE("cylinder: refuted on finiteness") {
    const SpacetimeModel cyl = SpacetimeModel::ctc_cylinder(1.0, {-2, 2, -2, 2});
    SampleSpec spec;
    spec.n = 30;
    spec.mode = models::SampleMode::Poisson;
    spec.seed = 5;
    spec.region = models::Box{0.0, 1.0, -1.0, 1.0};
    const models::SampleSpace s = models::sample(cyl, spec);
    const GateVerdict gv = gates::thm_main_gate(s);
    CHECK(gv.verdict == Verdict::Refuted);
    CHECK(gv.refuted_condition == "finiteness");
    CHECK(gv.conditions.at("future_or_past_d_distinction").status ==
          gates::ConditionStatus::Fail);
}

TEST_CASE("slit: refuted on diamond precompactness, continuity surrogate also fails") {
    const SpacetimeModel slit = SpacetimeModel::slit_minkowski({-3.5, 3.5, -3.5, 3.5});
    const models::SampleSpace s = catalog_sample(slit, 100);
    const GateVerdict gv = gates::thm_main_gate(s);
    CHECK(gv.verdict == Verdict::Refuted);
    CHECK(gv.refuted_condition == "diamond_precompactness");
    CHECK(gv.conditions.at("continuity_surrogate").status == gates::ConditionStatus::Fail);
    CHECK(gv.conditions.at("finiteness").status == gates::ConditionStatus::Pass);
}

TEST_CASE("punctured: diamond gate fails precompactness with a witness through the origin") {
    const SpacetimeModel punct = SpacetimeModel::punctured_minkowski({-3.5, 3.5, -3.5, 3.5});
    const models::SampleSpace s = catalog_sample(punct, 100);
    const GateVerdict dia = gates::diamond_gate(s);
    CHECK(dia.verdict == Verdict::Refuted);
    CHECK(dia.refuted_condition == "diamond_precompactness");
    CHECK(dia.conditions.at("alexandrov_hausdorff").status == gates::ConditionStatus::Pass);
    REQUIRE(dia.conditions.at("diamond_precompactness").witness.has_value());
    // The witness diamond straddles the removed origin.
    const checks::Witness w = *dia.conditions.at("diamond_precompactness").witness;
    const std::size_t ip = s.matrix.index_of(w.p), iq = s.matrix.index_of(w.q);
    CHECK(s.points[ip].t < 0.0);
    CHECK(s.points[iq].t > 0.0);

    const GateVerdict main_gate = gates::thm_main_gate(s);
    CHECK(main_gate.verdict == Verdict::Refuted);
    CHECK(main_gate.refuted_condition == "diamond_precompactness");
    CHECK(main_gate.conditions.at("continuity_surrogate").status ==
          gates::ConditionStatus::Pass);
}

TEST_CASE("matrix-only gates: surrogate conditions are not applicable, never fabricated") {
    core::DistanceMatrix chain({"a", "b", "c"});
    chain.set(0, 1, core::ExtReal(1.0));
    chain.set(1, 2, core::ExtReal(1.0));
    chain.set(0, 2, core::ExtReal(2.0));

    const GateVerdict main_gate = gates::thm_main_gate(chain);
    CHECK(main_gate.conditions.at("diamond_precompactness").status ==
          gates::ConditionStatus::NotApplicable);
    CHECK(main_gate.conditions.at("continuity_surrogate").status ==
          gates::ConditionStatus::NotApplicable);
    CHECK(main_gate.verdict == Verdict::ConsistentWithGH);

    const GateVerdict dia = gates::diamond_gate(chain);
    CHECK(dia.verdict == Verdict::Inconclusive);
    CHECK(dia.inconclusive_reason == "no precompactness oracle");
}

TEST_CASE("verdict aggregation is monotone in failing conditions") {
    // A matrix that fails finiteness and weak distinction cannot be upgraded
    // by any passing condition.
    core::DistanceMatrix bad({"a", "b"});
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) bad.set(i, j, core::ExtReal::infinity());
    }
    const GateVerdict gv = gates::thm_main_gate(bad);
    CHECK(gv.verdict == Verdict::Refuted);
    CHECK(gv.refuted_condition == "finiteness");
}

TEST_CASE("lms axiom check") {
    SUBCASE("fixture F1: weak distinction passes, boundary points flagged") {
        const core::DistanceMatrix f1 =
            core::DistanceMatrix::load_csv(std::string(DKIT_FIXTURE_DIR "/f1.csv"));
        const gates::AxiomReport rep = gates::lms_axiom_check(f1);
        CHECK(rep.finiteness.status == gates::ConditionStatus::Pass);
        CHECK(rep.reverse_triangle.status == gates::ConditionStatus::Pass);
        CHECK(rep.weak_d_distinction.status == gates::ConditionStatus::Pass);
        // c has no sampled future, e has no sampled past.
        CHECK(rep.boundary_points == std::vector<std::string>{"c", "e"});
        CHECK(!rep.core_axioms_pass() == false);
    }
    SUBCASE("cylinder matrix: finiteness and weak distinction fail") {
        core::DistanceMatrix cyl({"a", "b"});
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) cyl.set(i, j, core::ExtReal::infinity());
        }
        const gates::AxiomReport rep = gates::lms_axiom_check(cyl);
        CHECK(rep.finiteness.status == gates::ConditionStatus::Fail);
        CHECK(rep.weak_d_distinction.status == gates::ConditionStatus::Fail);
        CHECK(!rep.core_axioms_pass());
    }
}
