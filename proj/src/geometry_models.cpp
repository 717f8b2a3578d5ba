/// @file geometry_models.cpp

#include "dkit/geometry_models.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dkit::models {

namespace {

using finsler::Vec;

inline Vec as_vec(Point p) { return {p.t, p.x}; }

// Lorentz-cone classifiers with the same relative-epsilon semantics as the
// norm's cone tests (rounding at the null boundary must not flip verdicts).
inline bool timelike_mink(Point v) {
    const double q = v.t * v.t - v.x * v.x;
    return v.t > 0.0 && q > finsler::kConeEps * (v.t * v.t + v.x * v.x);
}
inline bool causal_mink(Point v) {
    if (v.t <= 0.0) return false;
    const double q = v.t * v.t - v.x * v.x;
    return q >= -finsler::kConeEps * (v.t * v.t + v.x * v.x);
}
inline double mink_len(Point v) {
    if (!timelike_mink(v)) return 0.0;
    return std::sqrt(v.t * v.t - v.x * v.x);
}

inline bool same_point(Point a, Point b) { return a.t == b.t && a.x == b.x; }

// Crossing abscissa of the segment p->q with the line {t = 0}; only meaningful
// when p.t < 0 < q.t.
inline double crossing_x(Point p, Point q) {
    return p.x + (0.0 - p.t) * (q.x - p.x) / (q.t - p.t);
}

// Origin strictly inside the open segment p->q (collinear and on opposite
// sides). Zero-area tolerance is relative to the coordinate scale.
inline bool origin_inside_segment(Point p, Point q) {
    const double cross = p.t * q.x - p.x * q.t;
    const double scale = std::max({std::fabs(p.t), std::fabs(p.x), std::fabs(q.t),
                                   std::fabs(q.x), 1.0});
    if (std::fabs(cross) > 1e-14 * scale * scale) return false;
    return p.t * q.t + p.x * q.x < 0.0;
}

}  // namespace

SpacetimeModel SpacetimeModel::minkowski(Box domain) {
    SpacetimeModel m;
    m.kind_ = ModelKind::Minkowski;
    m.domain_ = domain;
    m.norm_ = finsler::FinslerNorm::minkowski();
    return m;
}

SpacetimeModel SpacetimeModel::ctc_cylinder(double period, Box domain) {
    if (period <= 0.0) throw ConstructionError("cylinder period must be positive");
    SpacetimeModel m;
    m.kind_ = ModelKind::CtcCylinder;
    m.domain_ = domain;
    m.domain_.t_lo = 0.0;
    m.domain_.t_hi = period;
    m.period_ = period;
    m.norm_ = finsler::FinslerNorm::minkowski();
    return m;
}

SpacetimeModel SpacetimeModel::slit_minkowski(Box domain) {
    SpacetimeModel m;
    m.kind_ = ModelKind::SlitMinkowski;
    m.domain_ = domain;
    m.norm_ = finsler::FinslerNorm::minkowski();
    return m;
}

SpacetimeModel SpacetimeModel::punctured_minkowski(Box domain) {
    SpacetimeModel m;
    m.kind_ = ModelKind::PuncturedMinkowski;
    m.domain_ = domain;
    m.norm_ = finsler::FinslerNorm::minkowski();
    return m;
}

SpacetimeModel SpacetimeModel::flat_finsler(finsler::FinslerNorm norm, Box domain) {
    SpacetimeModel m;
    m.kind_ = ModelKind::FlatFinsler;
    m.domain_ = domain;
    m.norm_ = norm;
    return m;
}

std::string SpacetimeModel::kind_name() const {
    switch (kind_) {
        case ModelKind::Minkowski: return "minkowski";
        case ModelKind::CtcCylinder: return "ctc_cylinder";
        case ModelKind::SlitMinkowski: return "slit_minkowski";
        case ModelKind::PuncturedMinkowski: return "punctured_minkowski";
        case ModelKind::FlatFinsler: return "flat_finsler";
    }
    return "unknown";
}

bool SpacetimeModel::in_domain(Point p) const {
    switch (kind_) {
        case ModelKind::CtcCylinder:
            // t is periodic; only the spatial strip is bounded.
            return p.x > domain_.x_lo && p.x < domain_.x_hi;
        case ModelKind::SlitMinkowski:
            if (p.t == 0.0 && p.x <= 0.0) return false;
            return domain_.strictly_inside(p);
        case ModelKind::PuncturedMinkowski:
            if (p.t == 0.0 && p.x == 0.0) return false;
            return domain_.strictly_inside(p);
        default:
            return domain_.strictly_inside(p);
    }
}

void SpacetimeModel::require_in_domain(Point p) const {
    if (!in_domain(p)) {
        throw InputError("point (" + std::to_string(p.t) + ", " + std::to_string(p.x) +
                         ") outside " + kind_name() + " domain");
    }
}

ExtReal SpacetimeModel::exact_d(Point p, Point q) const {
    require_in_domain(p);
    require_in_domain(q);
    switch (kind_) {
        case ModelKind::CtcCylinder:
            // Closed timelike loops make every supremum unbounded.
            return ExtReal::infinity();
        case ModelKind::Minkowski:
        case ModelKind::PuncturedMinkowski:
            // Removing a single point does not change the supremum: broken
            // geodesics through the puncture approach the straight length.
            return ExtReal(norm_.evaluate(as_vec(q - p)));
        case ModelKind::FlatFinsler:
            return ExtReal(norm_.evaluate(as_vec(q - p)));
        case ModelKind::SlitMinkowski: {
            if (same_point(p, q)) return ExtReal::zero();
            const Point delta = q - p;
            const bool crossing = p.t < 0.0 && q.t > 0.0;
            if (!crossing) {
                return ExtReal(timelike_mink(delta) ? mink_len(delta) : 0.0);
            }
            if (timelike_mink(delta) && crossing_x(p, q) > 0.0) {
                return ExtReal(mink_len(delta));
            }
            // Best broken path bends at the obstruction tip (0,0). It exists
            // iff both legs are causal and the detour can pass strictly to the
            // right of the tip, which excludes the two left null rays.
            const Point tip{0.0, 0.0};
            const Point leg1 = tip - p;
            const Point leg2 = q - tip;
            if (causal_mink(leg1) && causal_mink(leg2) && p.x > p.t && q.x > -q.t) {
                return ExtReal(mink_len(leg1) + mink_len(leg2));
            }
            return ExtReal::zero();
        }
    }
    return ExtReal::zero();
}

bool SpacetimeModel::exact_chron(Point p, Point q) const {
    // Ground truth is exact: I = {d > 0} with no tolerance (closed-form d).
    const ExtReal d = exact_d(p, q);
    return d.is_infinite() || d.finite_value() > 0.0;
}

bool SpacetimeModel::exact_causal(Point p, Point q) const {
    require_in_domain(p);
    require_in_domain(q);
    if (same_point(p, q)) return true;
    const Point delta = q - p;
    switch (kind_) {
        case ModelKind::CtcCylinder:
            return true;
        case ModelKind::Minkowski:
        case ModelKind::FlatFinsler:
            return norm_.closed_cone_test(as_vec(delta));
        case ModelKind::PuncturedMinkowski:
            if (!causal_mink(delta)) return false;
            // A null geodesic through the puncture cannot be dodged in 2D.
            if (!timelike_mink(delta) && origin_inside_segment(p, q)) return false;
            return true;
        case ModelKind::SlitMinkowski: {
            const bool crossing = p.t < 0.0 && q.t > 0.0;
            if (causal_mink(delta) && (!crossing || crossing_x(p, q) > 0.0)) return true;
            const Point tip{0.0, 0.0};
            const Point leg1 = tip - p;
            const Point leg2 = q - tip;
            return causal_mink(leg1) && causal_mink(leg2) && p.x > p.t && q.x > -q.t;
        }
    }
    return false;
}

double SpacetimeModel::max_cone_slope() const { return 1.0; }

namespace {

// Cone boundary slopes dx/dt of the model's future cone (left, right).
std::pair<double, double> cone_slopes(const finsler::FinslerNorm& norm) {
    const double b = norm.drift();
    // F = sqrt(t^2 - x^2) - b*x vanishes on x = t / sqrt(1 + b^2) (for b > 0
    // the right edge moves inward; for b < 0 the left edge does).
    const double edge = 1.0 / std::sqrt(1.0 + b * b);
    if (b > 0.0) return {-1.0, edge};
    if (b < 0.0) return {-edge, 1.0};
    return {-1.0, 1.0};
}

}  // namespace

bool SpacetimeModel::diamond_precompact(Point p, Point q) const {
    if (!exact_chron(p, q)) {
        throw InputError("diamond_precompact requires a chronological pair");
    }
    if (kind_ == ModelKind::CtcCylinder) {
        // Every diamond is the whole cylinder, whose closure meets the open
        // spatial boundary.
        return false;
    }
    const auto [s_left, s_right] = cone_slopes(norm_);
    const Point delta = q - p;
    // Corner c = p + a*(1, s_right) = q - e*(1, s_left).
    const double denom = s_right - s_left;
    const double a = (delta.x - s_left * delta.t) / denom;
    const double e = delta.t - a;
    const Point corner_r = p + a * Point{1.0, s_right};
    // Corner via left edge from p: c = p + a2*(1, s_left) = q - e2*(1, s_right).
    const double a2 = (delta.x - s_right * delta.t) / (s_left - s_right);
    const Point corner_l = p + a2 * Point{1.0, s_left};
    (void)e;

    const Point hull[4] = {p, corner_r, q, corner_l};
    for (const Point& v : hull) {
        if (!domain_.strictly_inside(v)) return false;
    }

    if (kind_ == ModelKind::PuncturedMinkowski) {
        // Closure contains the puncture iff the origin lies in the closed
        // Minkowski diamond of (p, q).
        const Point origin{0.0, 0.0};
        if (causal_mink(origin - p) || same_point(origin, p)) {
            if (causal_mink(q - origin) || same_point(origin, q)) return false;
        }
        return true;
    }
    if (kind_ == ModelKind::SlitMinkowski) {
        // Slice the closed hull at t = 0 and test overlap with {x <= 0}.
        if (p.t > 0.0 || q.t < 0.0) return true;
        double x_min = std::numeric_limits<double>::infinity();
        bool sliced = false;
        for (int i = 0; i < 4; ++i) {
            const Point u = hull[i];
            const Point v = hull[(i + 1) % 4];
            if (u.t == 0.0) {
                x_min = std::min(x_min, u.x);
                sliced = true;
            }
            if ((u.t < 0.0 && v.t > 0.0) || (u.t > 0.0 && v.t < 0.0)) {
                const double tau = (0.0 - u.t) / (v.t - u.t);
                x_min = std::min(x_min, u.x + tau * (v.x - u.x));
                sliced = true;
            }
        }
        return !(sliced && x_min <= 0.0);
    }
    return true;
}

SpacetimeModel model_from_descriptor(const std::string& kind, Box box, double period,
                                     double randers_b) {
    if (kind == "minkowski") return SpacetimeModel::minkowski(box);
    if (kind == "ctc_cylinder") return SpacetimeModel::ctc_cylinder(period, box);
    if (kind == "slit_minkowski") return SpacetimeModel::slit_minkowski(box);
    if (kind == "punctured_minkowski") return SpacetimeModel::punctured_minkowski(box);
    if (kind == "flat_finsler") {
        return SpacetimeModel::flat_finsler(finsler::FinslerNorm::randers(randers_b), box);
    }
    throw InputError("unknown model kind: '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Deterministic sampling primitives

std::uint64_t SplitMix64::next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SplitMix64::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SplitMix64::next_in(double lo, double hi) {
    return lo + (hi - lo) * next_unit();
}

std::size_t SplitMix64::next_poisson(double mean) {
    // Exponential inter-arrival sum; O(mean) but fully deterministic and
    // portable, which matters more here than speed.
    std::size_t count = 0;
    double acc = 0.0;
    while (true) {
        double u = next_unit();
        if (u <= 0.0) u = 0x1.0p-53;
        acc += -std::log(u);
        if (acc >= mean) break;
        ++count;
    }
    return count;
}

// ---------------------------------------------------------------------------
// Samplers

namespace serial {

DistanceMatrix fill_matrix(const SpacetimeModel& model,
                           const std::vector<std::string>& labels,
                           const std::vector<Point>& points) {
    DistanceMatrix m(labels);
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m.set(i, j, model.exact_d(points[i], points[j]));
        }
    }
    return m;
}

}  // namespace serial

DistanceMatrix fill_matrix(const SpacetimeModel& model,
                           const std::vector<std::string>& labels,
                           const std::vector<Point>& points) {
    DistanceMatrix m(labels);
    const long long n = static_cast<long long>(points.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long i = 0; i < n; ++i) {
        for (long long j = 0; j < n; ++j) {
            m.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                  model.exact_d(points[i], points[j]));
        }
    }
    return m;
}

namespace {

std::string event_label(std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "e%03zu", i);
    return buf;
}

Box default_region(const SpacetimeModel& model) {
    const Box& d = model.domain();
    const double tc = 0.5 * (d.t_lo + d.t_hi), xc = 0.5 * (d.x_lo + d.x_hi);
    const double th = 0.25 * d.t_span(), xh = 0.25 * d.x_span();
    return {tc - th, tc + th, xc - xh, xc + xh};
}

// Nested probe offset fractions: multiplier 1 uses the first, 2 the first
// two, 4 all four, so richer probe families contain the sparser ones.
constexpr double kProbeFractions[4] = {1.0, 0.5, 0.75, 0.25};

}  // namespace

SampleSpace sample(const SpacetimeModel& model, const SampleSpec& spec) {
    if (spec.n < 2) throw ConstructionError("sample: need n >= 2");
    const Box region = spec.region.value_or(default_region(model));
    SampleSpace s;
    s.model = model;

    if (spec.mode == SampleMode::Poisson) {
        SplitMix64 rng(spec.seed);
        const std::size_t count = rng.next_poisson(static_cast<double>(spec.n));
        for (std::size_t i = 0; i < count; ++i) {
            Point p{rng.next_in(region.t_lo, region.t_hi),
                    rng.next_in(region.x_lo, region.x_hi)};
            if (!model.in_domain(p)) continue;  // removed-set hit, measure zero
            s.labels.push_back(event_label(s.points.size()));
            s.points.push_back(p);
        }
        s.core_count = s.points.size();
    } else {
        const std::size_t m =
            static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(spec.n))));
        if (m < 2) throw ConstructionError("sample: grid needs at least 2x2 points");
        const double dt = region.t_span() / static_cast<double>(m - 1);
        const double dx = region.x_span() / static_cast<double>(m - 1);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                Point p{region.t_lo + static_cast<double>(i) * dt,
                        region.x_lo + static_cast<double>(j) * dx};
                if (!model.in_domain(p)) continue;
                s.labels.push_back(event_label(s.points.size()));
                s.points.push_back(p);
            }
        }
        s.core_count = s.points.size();

        if (spec.mode == SampleMode::GridWithProbes) {
            const int mult = std::max(1, std::min(4, spec.probe_multiplier));
            const double delta = std::min(dt, dx) / 8.0;
            for (std::size_t i = 0; i < s.core_count; ++i) {
                for (int k = 0; k < mult; ++k) {
                    const double off = delta * kProbeFractions[k];
                    const Point past{s.points[i].t - off, s.points[i].x};
                    const Point fut{s.points[i].t + off, s.points[i].x};
                    if (!model.in_domain(past) || !model.in_domain(fut)) {
                        throw ConstructionError("domain too small for probes at " +
                                                s.labels[i]);
                    }
                    s.labels.push_back(s.labels[i] + ".p" + std::to_string(k));
                    s.points.push_back(past);
                    s.labels.push_back(s.labels[i] + ".f" + std::to_string(k));
                    s.points.push_back(fut);
                }
            }
            // Construction contract: each core event sees one of its own
            // probes on both sides.
            for (std::size_t i = 0; i < s.core_count; ++i) {
                const std::size_t base = s.core_count + 2 * mult * i;
                if (!model.exact_chron(s.points[base], s.points[i]) ||
                    !model.exact_chron(s.points[i], s.points[base + 1])) {
                    throw ConstructionError("probe pair not chronological at " +
                                            s.labels[i]);
                }
            }
        }
    }

    if (s.points.size() < 2) {
        throw ConstructionError("sample produced fewer than 2 events");
    }
    s.matrix = fill_matrix(model, s.labels, s.points);
    return s;
}

void save_sample_coordinates(const SampleSpace& sample, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write sample coordinates: " + path);
    out << "label,t,x,role\n";
    char buf[96];
    for (std::size_t i = 0; i < sample.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%s", sample.labels[i].c_str(),
                      sample.points[i].t, sample.points[i].x,
                      sample.is_probe(i) ? "probe" : "core");
        out << buf << "\n";
    }
}

}  // namespace dkit::models
