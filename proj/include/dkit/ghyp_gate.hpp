/// @file ghyp_gate.hpp
/// @brief Global-hyperbolicity verdict pipelines: the main-theorem checklist
///        (finiteness, continuity/compactness surrogates, future-or-past
///        d-distinction), the diamond-topology characterization, and the
///        Lorentzian-metric-space axiom check. Finite samples can refute but
///        never prove, so verdicts are three-valued and say which conditions
///        were only surrogate-checked.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dkit/causality_checks.hpp"
#include "dkit/distance_matrix.hpp"
#include "dkit/geometry_models.hpp"
#include "dkit/topology_lab.hpp"

namespace dkit::gates {

using checks::Witness;
using core::DistanceMatrix;
using core::Relation;
using models::SampleSpace;

enum class ConditionStatus { Pass, Fail, NotApplicable };

struct Condition {
    ConditionStatus status = ConditionStatus::NotApplicable;
    std::optional<Witness> witness;
    std::string note;  // surrogate annotation or not-applicable reason
};

enum class Verdict { ConsistentWithGH, Refuted, Inconclusive };

/// Condition keys, in the order used to name the refuting condition.
inline const std::vector<std::string>& condition_order() {
    static const std::vector<std::string> order = {
        "finiteness",
        "diamond_precompactness",
        "continuity_surrogate",
        "weak_d_distinction",
        "future_or_past_d_distinction",
        "d_reflectivity",
        "alexandrov_hausdorff",
    };
    return order;
}

struct GateVerdict {
    std::map<std::string, Condition> conditions;
    Verdict verdict = Verdict::Inconclusive;
    std::string refuted_condition;   // set when verdict == Refuted
    std::string inconclusive_reason; // set when verdict == Inconclusive
    Relation reconstructed_J;

    bool consistent() const { return verdict == Verdict::ConsistentWithGH; }
};

std::string verdict_name(Verdict v);

/// Main-theorem checklist on a model-backed sample: (i) finiteness, (ii)
/// semicontinuity probes + diamond precompactness oracle, (iii) future-or-past
/// d-distinction. reconstructed_J is the relation D.
GateVerdict thm_main_gate(const SampleSpace& sample, double tol = core::kDefaultTol);

/// Matrix-only variant: condition (ii) has no surrogate on a bare matrix
/// (finite spaces make compactness vacuous) and is marked not_applicable.
GateVerdict thm_main_gate(const DistanceMatrix& d, double tol = core::kDefaultTol);

/// Diamond characterization: Alexandrov topology Hausdorff on the finite
/// sample plus precompactness of every sampled chronological diamond.
GateVerdict diamond_gate(const SampleSpace& sample, double tol = core::kDefaultTol);

/// Matrix-only inputs have no precompactness oracle: INCONCLUSIVE.
GateVerdict diamond_gate(const DistanceMatrix& d, double tol = core::kDefaultTol);

// ---------------------------------------------------------------------------
// Lorentzian-metric-space axioms

struct AxiomReport {
    Condition finiteness;
    Condition reverse_triangle;
    Condition weak_d_distinction;
    Condition no_chronological_boundary;  // every point inside some diamond
    Condition continuity_compactness;     // trivially satisfied on finite sets
    bool d_reflective = false;            // the d-reflective strengthening
    std::vector<std::string> boundary_points;
    bool core_axioms_pass() const;
};

AxiomReport lms_axiom_check(const DistanceMatrix& d, double tol = core::kDefaultTol);

}  // namespace dkit::gates
