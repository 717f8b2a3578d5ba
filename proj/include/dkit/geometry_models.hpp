/// @file geometry_models.hpp
/// @brief Analytic catalog of 2D model spacetimes with exact distance,
///        chronology, causality and diamond-precompactness oracles, plus the
///        deterministic samplers that turn a model into a labeled
///        DistanceMatrix. These models are the ground truth every d-level
///        reconstruction is judged against.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dkit/distance_matrix.hpp"
#include "dkit/finsler_norm.hpp"

namespace dkit::models {

using core::ConstructionError;
using core::DistanceMatrix;
using core::ExtReal;
using core::InputError;

struct Point {
    double t = 0.0;
    double x = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.t + b.t, a.x + b.x}; }
inline Point operator-(Point a, Point b) { return {a.t - b.t, a.x - b.x}; }
inline Point operator*(double s, Point a) { return {s * a.t, s * a.x}; }

/// Closed coordinate box [t_lo, t_hi] x [x_lo, x_hi]; the model domain is its
/// interior.
struct Box {
    double t_lo = -1.0, t_hi = 1.0;
    double x_lo = -1.0, x_hi = 1.0;

    bool strictly_inside(Point p) const {
        return p.t > t_lo && p.t < t_hi && p.x > x_lo && p.x < x_hi;
    }
    double t_span() const { return t_hi - t_lo; }
    double x_span() const { return x_hi - x_lo; }
};

enum class ModelKind {
    Minkowski,
    CtcCylinder,         // time periodic, all distances +inf
    SlitMinkowski,       // {t = 0, x <= 0} removed; obstruction tip at origin
    PuncturedMinkowski,  // origin removed
    FlatFinsler,         // d(p,q) = F(q - p), x-independent norm
};

/// Catalog entry. Every kind supplies exact_d, exact_chron, exact_causal and
/// diamond_precompact oracles consistent with each other (exact_chron is
/// always {exact_d > 0}).
class SpacetimeModel {
  public:
    SpacetimeModel() = default;  // Minkowski on the default box

    static SpacetimeModel minkowski(Box domain);
    static SpacetimeModel ctc_cylinder(double period, Box domain);
    static SpacetimeModel slit_minkowski(Box domain);
    static SpacetimeModel punctured_minkowski(Box domain);
    static SpacetimeModel flat_finsler(finsler::FinslerNorm norm, Box domain);

    ModelKind kind() const noexcept { return kind_; }
    const Box& domain() const noexcept { return domain_; }
    double period() const noexcept { return period_; }
    const finsler::FinslerNorm& norm() const noexcept { return norm_; }
    std::string kind_name() const;

    bool in_domain(Point p) const;

    /// Supremum of Lorentzian lengths of future causal curves p -> q;
    /// zero when q is not in the chronological future of p.
    ExtReal exact_d(Point p, Point q) const;

    /// Ground-truth chronological and causal relations.
    bool exact_chron(Point p, Point q) const;
    bool exact_causal(Point p, Point q) const;

    /// True iff the coordinate closure of the chronological diamond I(p,q)
    /// lies inside the model domain (misses removed sets and the boundary).
    /// Precondition: p << q in the model.
    bool diamond_precompact(Point p, Point q) const;

    /// Widest future cone slope used by the grid oracle as a search bound.
    double max_cone_slope() const;

  private:
    void require_in_domain(Point p) const;

    ModelKind kind_ = ModelKind::Minkowski;
    Box domain_{};
    double period_ = 1.0;  // cylinder only
    finsler::FinslerNorm norm_{};
};

/// Parsed from scenario JSON model descriptors, e.g.
/// {"kind":"slit_minkowski","box":[[-2,2],[-2,2]]}.
SpacetimeModel model_from_descriptor(const std::string& kind, Box box, double period,
                                     double randers_b);

// ---------------------------------------------------------------------------
// Sampling

enum class SampleMode { Poisson, Grid, GridWithProbes };

struct SampleSpec {
    std::size_t n = 100;  // grid: total points (rounded to a square); poisson: mean
    SampleMode mode = SampleMode::GridWithProbes;
    std::uint64_t seed = 0;
    std::optional<Box> region;    // defaults to the domain shrunk by half
    int probe_multiplier = 1;     // 1x / 2x / 4x nested probe families
};

/// A model-backed sample: core events first, then probe events; matrix filled
/// from exact_d. Every core event is guaranteed a sampled chronological past
/// and future neighbor (its probes).
struct SampleSpace {
    SpacetimeModel model;
    std::vector<std::string> labels;
    std::vector<Point> points;
    std::size_t core_count = 0;  // events [0, core_count) are core, rest probes
    DistanceMatrix matrix;

    std::size_t size() const noexcept { return points.size(); }
    bool is_probe(std::size_t i) const noexcept { return i >= core_count; }
};

SampleSpace sample(const SpacetimeModel& model, const SampleSpec& spec);

/// Coordinates CSV: label,t,x,role (core|probe). The matrix itself round
/// trips through DistanceMatrix::save_csv.
void save_sample_coordinates(const SampleSpace& sample, const std::string& path);

/// Matrix fill from the model oracle (OpenMP kernel + serial reference).
DistanceMatrix fill_matrix(const SpacetimeModel& model,
                           const std::vector<std::string>& labels,
                           const std::vector<Point>& points);
namespace serial {
DistanceMatrix fill_matrix(const SpacetimeModel& model,
                           const std::vector<std::string>& labels,
                           const std::vector<Point>& points);
}

/// Deterministic uniform/poisson primitives shared by samplers and sprinkling.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64();
    double next_unit();                    // [0, 1)
    double next_in(double lo, double hi);  // [lo, hi)
    std::size_t next_poisson(double mean);

  private:
    std::uint64_t state_;
};

}  // namespace dkit::models
