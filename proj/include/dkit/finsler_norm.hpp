/// @file finsler_norm.hpp
/// @brief Minkowski-norm Lorentz-Finsler structures on a 2D tangent space:
///        F > 0 strictly inside the future cone, extended by zero outside,
///        with Lagrangian L = -F^2/2. The catalog is x-independent, so the
///        flat model distance d(p,q) = F(q-p) is an exact oracle for every
///        recovery formula.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace dkit::finsler {

struct Vec {
    double t = 0.0;
    double x = 0.0;
};

inline Vec operator+(Vec a, Vec b) { return {a.t + b.t, a.x + b.x}; }
inline Vec operator-(Vec a, Vec b) { return {a.t - b.t, a.x - b.x}; }
inline Vec operator*(double s, Vec a) { return {s * a.t, s * a.x}; }

/// Relative tolerance of the cone classifiers: vectors whose quadratic form
/// is within this fraction of |y|^2 of the light cone count as null. Closed-
/// form coordinate arithmetic never produces genuine values this close, so
/// the classifiers stay exact while rounding residue is absorbed.
inline constexpr double kConeEps = 1e-14;

/// Positively homogeneous norm on the future cone. Kinds:
///   - minkowski: F(y) = sqrt(y_t^2 - y_x^2) on {y_t > |y_x|}
///   - randers(b): F(y) = sqrt(y_t^2 - y_x^2) - b*y_x on the subcone where
///     that expression is positive; |b| <= 0.3 keeps the working directions
///     inside the smooth region.
class FinslerNorm {
  public:
    FinslerNorm() = default;

    static FinslerNorm minkowski() { return FinslerNorm{0.0}; }
    static FinslerNorm randers(double drift) {
        if (drift < -0.3 || drift > 0.3) {
            throw std::invalid_argument("randers drift must satisfy |b| <= 0.3");
        }
        return FinslerNorm{drift};
    }

    double drift() const noexcept { return b_; }
    bool is_quadratic() const noexcept { return b_ == 0.0; }
    std::string name() const {
        return b_ == 0.0 ? "minkowski" : "randers(b=" + std::to_string(b_) + ")";
    }

    /// Strictly inside the future cone (where F > 0).
    bool cone_test(Vec y) const noexcept {
        const double q = y.t * y.t - y.x * y.x;
        if (y.t <= 0.0 || q <= kConeEps * (y.t * y.t + y.x * y.x)) return false;
        return std::sqrt(q) - b_ * y.x > kConeEps * y.t;
    }

    /// F extended by zero outside the cone.
    double evaluate(Vec y) const noexcept {
        return cone_test(y) ? std::sqrt(y.t * y.t - y.x * y.x) - b_ * y.x : 0.0;
    }

    /// L = -F^2/2 (zero outside the cone, matching the extension of F).
    double lagrangian(Vec y) const noexcept {
        const double f = evaluate(y);
        return -0.5 * f * f;
    }

    /// Closed future causal cone of the flat model: y_t >= |y_x| and the
    /// Randers expression nonnegative. The zero vector is excluded.
    bool closed_cone_test(Vec y) const noexcept {
        const double q = y.t * y.t - y.x * y.x;
        if (y.t <= 0.0 || q < -kConeEps * (y.t * y.t + y.x * y.x)) return false;
        const double root = q > 0.0 ? std::sqrt(q) : 0.0;
        return root - b_ * y.x >= -kConeEps * y.t;
    }

  private:
    explicit FinslerNorm(double b) : b_(b) {}

    double b_ = 0.0;
};

}  // namespace dkit::finsler
