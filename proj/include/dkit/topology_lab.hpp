/// @file topology_lab.hpp
/// @brief Finite-sample topology engines: Alexandrov topology from diamonds,
///        the initial topology of the one-point distance functions,
///        Hausdorffness, finer-than comparison, and semicontinuity probes
///        along convergent coordinate sequences.
///
/// A finite topology is held through its minimal basis: U(x) = intersection of
/// all subbasis sets containing x. Every query (openness, Hausdorff,
/// comparison) is exact on that representation; the full open-set family is
/// materialized only under a hard cap, since on a discrete topology it grows
/// as 2^n.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dkit/causality_checks.hpp"
#include "dkit/distance_matrix.hpp"
#include "dkit/geometry_models.hpp"

namespace dkit::topology {

using core::DistanceMatrix;
using models::Point;
using models::SampleSpace;
using models::SpacetimeModel;

/// Subset of the ground set as a bit mask.
class GroundSet {
  public:
    GroundSet() = default;
    explicit GroundSet(std::size_t n) : n_(n), bits_((n + 63) / 64, 0) {}

    std::size_t ground_size() const noexcept { return n_; }
    void add(std::size_t i) { bits_[i / 64] |= 1ULL << (i % 64); }
    bool contains(std::size_t i) const { return (bits_[i / 64] >> (i % 64)) & 1ULL; }
    std::size_t count() const;
    bool empty() const;
    bool subset_of(const GroundSet& o) const;
    GroundSet intersect(const GroundSet& o) const;
    GroundSet unite(const GroundSet& o) const;
    std::vector<std::size_t> members() const;

    friend bool operator==(const GroundSet& a, const GroundSet& b) {
        return a.n_ == b.n_ && a.bits_ == b.bits_;
    }
    friend bool operator<(const GroundSet& a, const GroundSet& b) {
        return a.bits_ < b.bits_;
    }

  private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> bits_;
};

class FiniteTopology {
  public:
    FiniteTopology() = default;
    FiniteTopology(std::vector<std::string> ground, std::vector<GroundSet> subbasis);

    const std::vector<std::string>& ground() const noexcept { return ground_; }
    const std::vector<GroundSet>& subbasis() const noexcept { return subbasis_; }

    /// Minimal open neighborhood of point i.
    const GroundSet& minimal_open(std::size_t i) const { return minimal_[i]; }

    bool is_open(const GroundSet& s) const;
    bool is_discrete() const;

    /// Opens materialized as sorted label lists, or nullopt if the family
    /// exceeds `cap` sets (2^n blowup is real; the cap is enforced).
    std::optional<std::vector<GroundSet>> opens(std::size_t cap = 1u << 16) const;

    /// Generation is idempotent: regenerating from the materialized opens (as
    /// a subbasis) returns the same topology.
    bool same_topology_as(const FiniteTopology& other) const;

  private:
    std::vector<std::string> ground_;
    std::vector<GroundSet> subbasis_;
    std::vector<GroundSet> minimal_;  // per ground point
};

/// Subbasis = all nonempty diamonds I(p,q) over corners from the matrix. When
/// `ground_subset` is given, membership is restricted to those labels (the
/// usual way to evaluate the topology on core events with probes serving as
/// corners only) while corners still range over all labels.
FiniteTopology alexandrov_topology(const DistanceMatrix& d,
                                   const std::vector<std::size_t>* ground_subset = nullptr,
                                   double tol = core::kDefaultTol);

/// Subbasis = preimages of rays (a, +inf] and [0, a) under every row and
/// column function, with thresholds midway between consecutive attained
/// values.
FiniteTopology initial_topology(const DistanceMatrix& d,
                                const std::vector<std::size_t>* ground_subset = nullptr,
                                double tol = core::kDefaultTol);

struct HausdorffVerdict {
    bool hausdorff = false;
    std::optional<std::pair<std::string, std::string>> witness;
    // On a finite space, Hausdorff is equivalent to the topology being
    // discrete; verdicts state that reduction explicitly.
    std::string note = "finite space: Hausdorff iff discrete";
};

HausdorffVerdict is_hausdorff(const FiniteTopology& t);

/// T1 finer than T2, i.e. T2.opens subset of T1.opens. Grounds must match.
bool finer_than(const FiniteTopology& t1, const FiniteTopology& t2);

// ---------------------------------------------------------------------------
// Semicontinuity probes

enum class Side { Lower, Upper };

/// Default verdict tolerance for the probes: the finite radii schedule leaves
/// an O(r_min^2) truncation residue in the empirical liminf/limsup, far above
/// tol_d but far below any genuine semicontinuity defect of the catalog.
inline constexpr double kProbeTol = 1e-6;

struct ProbeSchedule {
    Point approach{1.0, 0.0};      // unit-ish approach direction
    std::vector<double> radii;     // defaults to 2^-k, k = 1..12

    static ProbeSchedule standard(Point approach);
};

struct ProbeRow {
    int k = 0;
    double radius = 0.0;
    core::ExtReal value_dp;   // d(p_ref, q_k)
    core::ExtReal value_dcol; // d(q_k, p_ref)
};

struct ProbeReport {
    bool applicable = true;       // enough in-domain sequence points
    std::vector<ProbeRow> rows;
    core::ExtReal target_dp, target_dcol;
    core::ExtReal liminf_dp, limsup_dp, liminf_dcol, limsup_dcol;
    bool pass_dp = false, pass_dcol = false;
    double gap_dp = 0.0, gap_dcol = 0.0;  // semicontinuity defect, 0 when passing
    Side side = Side::Upper;

    bool pass() const { return !applicable || (pass_dp && pass_dcol); }

    /// CSV dump: k, radius, value, running liminf/limsup (suffix statistics).
    void save_csv(const std::string& path) const;
};

/// Evaluates d(p_ref, .) and d(., p_ref) along q_k = target + r_k * approach.
/// Lower verdict: liminf >= value at target - tol; upper: limsup <= value +
/// tol. Sequence points outside the domain are skipped.
ProbeReport semicontinuity_probe(const SpacetimeModel& model, Point p_ref, Point target,
                                 Side side, const ProbeSchedule& schedule,
                                 double tol = kProbeTol);

/// Exhaustive probe battery over a sample: every core event as target, every
/// core event as reference, four axis approach directions, both sides.
struct BatteryFailure {
    std::string p_ref, target;
    Point approach;
    Side side;
    double gap = 0.0;
};

struct SemicontinuityBattery {
    std::size_t probes_run = 0;
    std::vector<BatteryFailure> failures;  // capped
    std::size_t failure_count = 0;
    bool upper_failure = false;
    bool lower_failure = false;
    bool pass() const { return failure_count == 0; }
};

SemicontinuityBattery semicontinuity_battery(const SampleSpace& sample,
                                             std::size_t max_targets = 1000,
                                             double probe_tol = kProbeTol);

/// Cross-check of the reflectivity/continuity implication on a sample:
/// if every probe passes, d-reflectivity must pass; if d-reflectivity fails,
/// at least one upper probe must fail.
struct ConsistencyReport {
    bool probes_pass = false;
    bool upper_probe_failure = false;
    bool d_reflectivity_pass = false;
    bool consistent = false;
    SemicontinuityBattery battery;
    checks::CausalityReport causality;
};

ConsistencyReport reflectivity_continuity_consistency(const SampleSpace& sample,
                                                      double tol = core::kDefaultTol);

}  // namespace dkit::topology
