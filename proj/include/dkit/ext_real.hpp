/// @file ext_real.hpp
/// @brief Extended nonnegative reals [0, +inf], the codomain of a Lorentzian
///        distance. Addition saturates at +inf; comparisons take an absolute
///        tolerance for finite-finite pairs.

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dkit::core {

/// Default absolute tolerance for finite-finite comparisons. Model distances
/// are closed-form, so only rounding noise has to be absorbed.
inline constexpr double kDefaultTol = 1e-9;

/// A nonnegative real or +inf. Infinity is the IEEE symbolic state, never a
/// large finite float; the only arithmetic offered is saturating addition, so
/// no operation can produce NaN or a negative value.
class ExtReal {
  public:
    constexpr ExtReal() noexcept : v_(0.0) {}

    /// Finite values must be >= 0; infinity() is the canonical +inf.
    explicit ExtReal(double value) : v_(value) {
        if (std::isnan(value) || value < 0.0) {
            throw std::invalid_argument("ExtReal: value must be >= 0 or +inf");
        }
    }

    static constexpr ExtReal infinity() noexcept {
        ExtReal r;
        r.v_ = std::numeric_limits<double>::infinity();
        return r;
    }

    static constexpr ExtReal zero() noexcept { return ExtReal{}; }

    bool is_infinite() const noexcept { return std::isinf(v_); }
    bool is_finite() const noexcept { return !std::isinf(v_); }

    /// Finite payload; calling this on +inf is a logic error.
    double finite_value() const {
        if (is_infinite()) throw std::logic_error("ExtReal: finite_value() of +inf");
        return v_;
    }

    /// Raw payload (+inf allowed), for kernels that treat IEEE inf natively.
    constexpr double raw() const noexcept { return v_; }

    /// Saturating addition: inf + x = inf.
    friend constexpr ExtReal operator+(ExtReal a, ExtReal b) noexcept {
        ExtReal r;
        r.v_ = a.v_ + b.v_;
        return r;
    }

    friend constexpr bool operator==(ExtReal a, ExtReal b) noexcept {
        return a.v_ == b.v_;
    }

  private:
    double v_;
};

/// Positivity under tolerance: d > tol, with +inf always positive.
inline bool ext_positive(ExtReal a, double tol = kDefaultTol) noexcept {
    return a.raw() > tol;  // +inf > tol holds natively
}

/// a == b within tol; +inf equals only +inf.
inline bool ext_approx_eq(ExtReal a, ExtReal b, double tol = kDefaultTol) noexcept {
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
    return std::fabs(a.raw() - b.raw()) <= tol;
}

/// a <= b within tol; +inf <= +inf, finite <= +inf, never +inf <= finite.
inline bool ext_leq(ExtReal a, ExtReal b, double tol = kDefaultTol) noexcept {
    if (a.is_infinite()) return b.is_infinite();
    if (b.is_infinite()) return true;
    return a.raw() <= b.raw() + tol;
}

/// Strictly greater beyond tolerance.
inline bool ext_greater(ExtReal a, ExtReal b, double tol = kDefaultTol) noexcept {
    return !ext_leq(a, b, tol);
}

/// Serialized form used by the CSV matrix format: decimal or literal "inf".
std::string ext_to_string(ExtReal a);
ExtReal ext_from_string(const std::string& s);

}  // namespace dkit::core
