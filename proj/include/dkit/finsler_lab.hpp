/// @file finsler_lab.hpp
/// @brief Geodesic spray integration, exponential-map regularity probes,
///        Busemann-Mayer recovery of F and F^2 from a distance field,
///        the quadraticity (Riemannian) test and the distance-preserving =>
///        isometry verification. The catalog is flat, so every limit formula
///        has a closed-form oracle.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dkit/causality_checks.hpp"
#include "dkit/finsler_norm.hpp"
#include "dkit/geometry_models.hpp"

namespace dkit::finsler {

using models::Point;

class IntegrationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Sprays and the exponential map

/// Spray coefficients G(x, y), positively homogeneous of degree 2 in y.
/// Catalog: the flat spray G == 0 and a polynomial perturbation eps * Q(y).
class Spray {
  public:
    static Spray flat() { return Spray(0.0); }
    static Spray perturbed(double eps) { return Spray(eps); }

    double eps() const noexcept { return eps_; }
    bool is_flat() const noexcept { return eps_ == 0.0; }

    /// G(x, y); the catalog perturbation is x-independent, quadratic in y.
    Vec coefficients(Point x, Vec y) const noexcept {
        (void)x;
        return {eps_ * (y.t * y.x), eps_ * (y.t * y.t - y.x * y.x)};
    }

  private:
    explicit Spray(double eps) : eps_(eps) {}
    double eps_;
};

struct GeodesicState {
    Point position;
    Vec velocity;
    double parameter = 0.0;
};

/// Fixed-step RK4 integration of xdot = y, ydot = -2 G(x, y).
GeodesicState spray_flow(const Spray& spray, Point p, Vec v, double t_end, int steps);

/// exp_p(v): the time-1 endpoint.
Point exp_map(const Spray& spray, Point p, Vec v, int steps = 256);

/// exp_p^{-1}(q) by Newton shooting with finite-difference Jacobians.
Vec exp_inverse(const Spray& spray, Point p, Point q, int steps = 256);

struct JacobianReport {
    double identity_deviation_at_zero = 0.0;  // FD Jacobian at v = 0 vs identity
    double max_deviation_in_ball = 0.0;       // over sampled |v| <= radius
    double lipschitz_estimate = 0.0;          // of the Jacobian over the ball
    double radius = 0.0;
    int directions = 0;
};

/// Finite-difference Jacobian probe of v -> exp_p(v) near the zero section.
/// Pass criteria are boundedness and the v -> 0 identity, not a specific
/// constant.
JacobianReport exp_zero_section_probe(const Spray& spray, Point p, double radius,
                                      int n_dirs);

struct ConvergenceReport {
    std::vector<int> steps;
    std::vector<double> errors;  // endpoint error vs a fine-step reference
    double order = 0.0;          // fitted convergence order
};

/// Self-convergence study of the integrator against a 4096-step reference.
ConvergenceReport spray_self_convergence(const Spray& spray, Point p, Vec v);

// ---------------------------------------------------------------------------
// Busemann-Mayer recovery

/// Distance field d_p(.) = d(p, .), evaluable along test curves.
using DField = std::function<core::ExtReal(Point)>;

struct RichardsonSchedule {
    double t0 = 0.1;
    int levels = 11;  // t_k = t0 * 2^-k, k = 0..levels-1

    std::vector<double> points() const;
};

struct FEstimate {
    double value = 0.0;
    double empirical_order = 0.0;          // convergence order of the raw sequence
    std::vector<double> raw;               // d_p(gamma(t))/t per schedule point
    std::vector<double> extrapolated;      // Richardson diagonal per level
    std::vector<double> t_points;
};

/// F(p,v) = lim_{t->0+} d_p(gamma(t))/t along gamma(t) = p + t v + t^2 a,
/// Richardson-extrapolated over the schedule.
FEstimate busemann_mayer_first(const DField& dfield, Point p, Vec v, Vec curvature,
                               const RichardsonSchedule& schedule = {});

struct F2Estimate {
    double value = 0.0;  // estimate of F^2(p, v)
    std::vector<double> raw;
    std::vector<double> extrapolated;
    std::vector<double> t_points;
};

/// F^2(p,v) = (1/2) lim_{t->0+} (1/t) d/dt d_p^2(gamma(t)); central
/// differences for the t-derivative, then Richardson. Requires v strictly
/// inside the cone (the formula needs the smooth region).
F2Estimate busemann_mayer_second(const DField& dfield, const FinslerNorm& norm, Point p,
                                 Vec v, Vec curvature,
                                 const RichardsonSchedule& schedule = {});

struct QuadraticityReport {
    double deficit = 0.0;  // relative residual of the best quadratic fit
    std::vector<Vec> directions;
    std::vector<double> recovered_f2;
    double fitted[3] = {0.0, 0.0, 0.0};  // A t^2 + B t x + C x^2
};

/// Recovers F^2 on sampled cone directions via the second formula and fits a
/// quadratic form; a nonzero deficit certifies a non-Riemannian norm.
QuadraticityReport quadraticity_test(const FinslerNorm& norm, Point p, int n_dirs = 8);

// ---------------------------------------------------------------------------
// Distance preservation => isometry

struct IsometryReport {
    double stage1_max_deviation = 0.0;
    bool stage1_pass = false;
    std::optional<checks::Witness> stage1_witness;

    bool stage2_chronology = false;
    bool stage2_relation_d = false;
    bool stage2_alexandrov = false;
    bool stage2_evaluated = false;

    bool stage3_evaluated = false;
    double stage3_max_deviation = 0.0;
    bool stage3_pass = false;

    bool pass() const {
        return stage1_pass && (!stage2_evaluated || (stage2_chronology &&
                                                     stage2_relation_d &&
                                                     stage2_alexandrov)) &&
               (!stage3_evaluated || stage3_pass);
    }
};

/// A bijection between sample label sets, as an index permutation: event i of
/// the source corresponds to event perm[i] of the image.
struct SampleBijection {
    std::vector<std::size_t> perm;
    /// Pushforward on tangent vectors, set for linear maps (stage 3).
    std::optional<std::function<Vec(Vec)>> linear_pushforward;
};

/// Stage 1: max |d'(f p, f q) - d(p, q)|. Stage 2 (if stage 1 passes):
/// f must push chronology, relation D and the finite Alexandrov topology to
/// their images exactly. Stage 3 (linear f on flat models): F(v) vs
/// F'(f_* v) on random cone directions via the first recovery formula.
IsometryReport isometry_check(const SampleBijection& f, const core::DistanceMatrix& d,
                              const core::DistanceMatrix& d_image,
                              const FinslerNorm* norm = nullptr,
                              const FinslerNorm* norm_image = nullptr,
                              double stage1_tol = 1e-12,
                              std::uint64_t seed = 20240915);

}  // namespace dkit::finsler
