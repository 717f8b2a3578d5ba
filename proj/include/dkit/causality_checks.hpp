/// @file causality_checks.hpp
/// @brief Every d-level causality predicate: distinction variants,
///        reflectivity variants, strong reflectivity, causal continuity, the
///        reconstructed relation D and the one-sided row/column relations,
///        plus the inclusion-vs-comparison equivalence check against ground
///        truth.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dkit/distance_matrix.hpp"
#include "dkit/geometry_models.hpp"

namespace dkit::checks {

using core::DistanceMatrix;
using core::Relation;

struct Witness {
    std::string p, q;
    std::string third;  // discriminating point, when applicable
};

struct PredicateVerdict {
    bool evaluated = false;
    bool pass = false;
    std::optional<Witness> witness;
};

/// Verdicts obey a fixed logical lattice: d_distinction => future_or_past =>
/// weak; d_reflectivity <=> future && past; strong variants imply the plain
/// ones; causal_continuity <=> weak_d_distinction && d_reflectivity.
struct CausalityReport {
    PredicateVerdict future_d_distinction;
    PredicateVerdict past_d_distinction;
    PredicateVerdict d_distinction;
    PredicateVerdict weak_d_distinction;
    PredicateVerdict future_or_past_d_distinction;

    PredicateVerdict future_d_reflectivity;
    PredicateVerdict past_d_reflectivity;
    PredicateVerdict d_reflectivity;
    PredicateVerdict strong_future_reflectivity;
    PredicateVerdict strong_past_reflectivity;
    PredicateVerdict causal_continuity;

    bool strong_used_ground_truth = false;
    double tol = core::kDefaultTol;

    /// The lattice above, as a machine check; violating reports are bugs.
    bool lattice_consistent() const;
};

/// Row/column comparison relations underlying everything here:
///   row_dominance(p,q)  <=>  d_p >= d_q entrywise  (i.e. d_q <= d_p)
///   col_dominance(p,q)  <=>  d^p <= d^q entrywise
struct PairComparisons {
    Relation row_dominance;
    Relation col_dominance;
};

PairComparisons pair_comparisons(const DistanceMatrix& d, double tol = core::kDefaultTol);
namespace serial {
PairComparisons pair_comparisons(const DistanceMatrix& d, double tol = core::kDefaultTol);
}

/// The predicate quantifiers range over `subjects` (all labels when null)
/// while the test points r always range over the whole sample. On a
/// model-backed sample the subjects are the core events: probe events have no
/// sampled future/past of their own and would fail every predicate for the
/// trivial finite-sample reason, not a causal one.

/// Distinction fields only.
CausalityReport distinction_report(const DistanceMatrix& d, double tol = core::kDefaultTol,
                                   const std::vector<std::size_t>* subjects = nullptr);

/// Reflectivity fields (plus causal_continuity, which also needs weak
/// distinction and is filled by causality_report). Strong variants use
/// I = {d > 0} unless a ground-truth chronology is supplied.
CausalityReport reflectivity_report(const DistanceMatrix& d,
                                    const Relation* ground_truth_chron = nullptr,
                                    double tol = core::kDefaultTol,
                                    const std::vector<std::size_t>* subjects = nullptr);

/// Full report: distinction + reflectivity + causal continuity.
CausalityReport causality_report(const DistanceMatrix& d,
                                 const Relation* ground_truth_chron = nullptr,
                                 double tol = core::kDefaultTol,
                                 const std::vector<std::size_t>* subjects = nullptr);

/// Sample-aware variant: subjects are the core events.
CausalityReport causality_report(const models::SampleSpace& sample,
                                 double tol = core::kDefaultTol);

/// D = {(p,q): d_p >= d_q and d^p <= d^q}, the d-level causal order.
Relation relation_D(const DistanceMatrix& d, double tol = core::kDefaultTol);

struct Eq1Relations {
    Relation r_future;  // {(p,q): d_p >= d_q}
    Relation r_past;    // {(p,q): d^p <= d^q}
    bool equal = false;
    std::optional<Witness> mismatch;
};

/// The two one-sided reconstructions of the causal relation; they coincide
/// on the subject pairs exactly when d-reflectivity holds there.
Eq1Relations eq1_relations(const DistanceMatrix& d, double tol = core::kDefaultTol,
                           const std::vector<std::size_t>* subjects = nullptr);

struct InclusionCheck {
    std::size_t pairs_checked = 0;
    std::size_t exact_direction_failures = 0;     // d-comparison => inclusion
    std::size_t surrogate_direction_failures = 0; // inclusion => d-comparison
    std::vector<Witness> surrogate_witnesses;     // labeled sampling artifacts
    bool exact_direction_ok() const { return exact_direction_failures == 0; }
};

/// I^+(q) n S subset I^+(p) n S versus d_q <= d_p, both implications, using
/// the sample's ground-truth chronology.
InclusionCheck inclusion_equivalence_check(const models::SampleSpace& sample,
                                           double tol = core::kDefaultTol);

}  // namespace dkit::checks
