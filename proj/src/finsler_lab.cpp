/// @file finsler_lab.cpp

#include "dkit/finsler_lab.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "dkit/distance_core.hpp"
#include "dkit/topology_lab.hpp"

namespace dkit::finsler {

using core::ExtReal;
using core::InputError;

namespace {

struct PhaseState {
    Point x;
    Vec y;
};

inline PhaseState axpy(const PhaseState& s, double h, const PhaseState& k) {
    return {{s.x.t + h * k.x.t, s.x.x + h * k.x.x},
            {s.y.t + h * k.y.t, s.y.x + h * k.y.x}};
}

inline PhaseState deriv(const Spray& spray, const PhaseState& s) {
    const Vec g = spray.coefficients(s.x, s.y);
    return {{s.y.t, s.y.x}, {-2.0 * g.t, -2.0 * g.x}};
}

inline bool finite_state(const PhaseState& s) {
    return std::isfinite(s.x.t) && std::isfinite(s.x.x) && std::isfinite(s.y.t) &&
           std::isfinite(s.y.x);
}

}  // namespace

GeodesicState spray_flow(const Spray& spray, Point p, Vec v, double t_end, int steps) {
    if (steps < 16) throw InputError("spray_flow: need at least 16 steps");
    PhaseState s{p, v};
    const double h = t_end / steps;
    for (int i = 0; i < steps; ++i) {
        const PhaseState k1 = deriv(spray, s);
        const PhaseState k2 = deriv(spray, axpy(s, 0.5 * h, k1));
        const PhaseState k3 = deriv(spray, axpy(s, 0.5 * h, k2));
        const PhaseState k4 = deriv(spray, axpy(s, h, k3));
        s.x.t += h / 6.0 * (k1.x.t + 2.0 * k2.x.t + 2.0 * k3.x.t + k4.x.t);
        s.x.x += h / 6.0 * (k1.x.x + 2.0 * k2.x.x + 2.0 * k3.x.x + k4.x.x);
        s.y.t += h / 6.0 * (k1.y.t + 2.0 * k2.y.t + 2.0 * k3.y.t + k4.y.t);
        s.y.x += h / 6.0 * (k1.y.x + 2.0 * k2.y.x + 2.0 * k3.y.x + k4.y.x);
        if (!finite_state(s)) {
            throw IntegrationError("spray_flow: non-finite state at step " +
                                   std::to_string(i));
        }
    }
    return {s.x, s.y, t_end};
}

Point exp_map(const Spray& spray, Point p, Vec v, int steps) {
    return spray_flow(spray, p, v, 1.0, steps).position;
}

Vec exp_inverse(const Spray& spray, Point p, Point q, int steps) {
    // Newton shooting on v -> exp_p(v) - q with a finite-difference Jacobian.
    Vec v{q.t - p.t, q.x - p.x};
    const double scale = std::max({std::fabs(v.t), std::fabs(v.x), 1e-3});
    const double h = 1e-6 * scale;
    for (int iter = 0; iter < 24; ++iter) {
        const Point e = exp_map(spray, p, v, steps);
        const double rt = e.t - q.t, rx = e.x - q.x;
        if (std::sqrt(rt * rt + rx * rx) < 1e-13 * scale) break;
        const Point et = exp_map(spray, p, {v.t + h, v.x}, steps);
        const Point ex = exp_map(spray, p, {v.t, v.x + h}, steps);
        const double j00 = (et.t - e.t) / h, j01 = (ex.t - e.t) / h;
        const double j10 = (et.x - e.x) / h, j11 = (ex.x - e.x) / h;
        const double det = j00 * j11 - j01 * j10;
        if (std::fabs(det) < 1e-14) {
            throw IntegrationError("exp_inverse: singular shooting Jacobian");
        }
        v.t -= (j11 * rt - j01 * rx) / det;
        v.x -= (-j10 * rt + j00 * rx) / det;
    }
    return v;
}

namespace {

// Central-difference Jacobian of exp_p at v, relative step per design.
void exp_jacobian(const Spray& spray, Point p, Vec v, double scale, double jac[2][2]) {
    const double h = 1e-5 * scale;
    const Point jt_p = exp_map(spray, p, {v.t + h, v.x});
    const Point jt_m = exp_map(spray, p, {v.t - h, v.x});
    const Point jx_p = exp_map(spray, p, {v.t, v.x + h});
    const Point jx_m = exp_map(spray, p, {v.t, v.x - h});
    jac[0][0] = (jt_p.t - jt_m.t) / (2.0 * h);
    jac[1][0] = (jt_p.x - jt_m.x) / (2.0 * h);
    jac[0][1] = (jx_p.t - jx_m.t) / (2.0 * h);
    jac[1][1] = (jx_p.x - jx_m.x) / (2.0 * h);
}

double identity_deviation(const double jac[2][2]) {
    return std::max(
        {std::fabs(jac[0][0] - 1.0), std::fabs(jac[0][1]), std::fabs(jac[1][0]),
         std::fabs(jac[1][1] - 1.0)});
}

double jac_distance(const double a[2][2], const double b[2][2]) {
    return std::max({std::fabs(a[0][0] - b[0][0]), std::fabs(a[0][1] - b[0][1]),
                     std::fabs(a[1][0] - b[1][0]), std::fabs(a[1][1] - b[1][1])});
}

}  // namespace

JacobianReport exp_zero_section_probe(const Spray& spray, Point p, double radius,
                                      int n_dirs) {
    JacobianReport rep;
    rep.radius = radius;
    rep.directions = n_dirs;

    double jac0[2][2];
    exp_jacobian(spray, p, {0.0, 0.0}, radius, jac0);
    rep.identity_deviation_at_zero = identity_deviation(jac0);

    std::vector<Vec> samples;
    std::vector<std::array<double, 4>> jacs;
    for (int d = 0; d < n_dirs; ++d) {
        const double ang = 2.0 * M_PI * d / n_dirs;
        for (double frac : {1.0, 0.5}) {
            const Vec v{radius * frac * std::cos(ang), radius * frac * std::sin(ang)};
            double jac[2][2];
            exp_jacobian(spray, p, v, radius, jac);
            rep.max_deviation_in_ball =
                std::max(rep.max_deviation_in_ball, identity_deviation(jac));
            samples.push_back(v);
            jacs.push_back({jac[0][0], jac[0][1], jac[1][0], jac[1][1]});
        }
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        for (std::size_t j = i + 1; j < samples.size(); ++j) {
            const double dv = std::hypot(samples[i].t - samples[j].t,
                                         samples[i].x - samples[j].x);
            if (dv < 1e-12) continue;
            const double a[2][2] = {{jacs[i][0], jacs[i][1]}, {jacs[i][2], jacs[i][3]}};
            const double b[2][2] = {{jacs[j][0], jacs[j][1]}, {jacs[j][2], jacs[j][3]}};
            rep.lipschitz_estimate =
                std::max(rep.lipschitz_estimate, jac_distance(a, b) / dv);
        }
    }
    return rep;
}

ConvergenceReport spray_self_convergence(const Spray& spray, Point p, Vec v) {
    ConvergenceReport rep;
    // A long parameter interval keeps the truncation error of the coarse runs
    // well above the rounding floor, where the order is measurable.
    const double t_end = 6.0;
    const auto endpoint = [&](int steps) {
        return spray_flow(spray, p, v, t_end, steps).position;
    };
    const Point ref = endpoint(4096);
    for (int steps : {16, 32, 64, 128}) {
        const Point e = endpoint(steps);
        rep.steps.push_back(steps);
        rep.errors.push_back(std::hypot(e.t - ref.t, e.x - ref.x));
    }
    // Order fitted from successive error ratios above the noise floor.
    double acc = 0.0;
    int cnt = 0;
    for (std::size_t i = 1; i < rep.errors.size(); ++i) {
        if (rep.errors[i] > 1e-13 && rep.errors[i - 1] > 1e-13) {
            acc += std::log2(rep.errors[i - 1] / rep.errors[i]);
            ++cnt;
        }
    }
    rep.order = cnt ? acc / cnt : std::numeric_limits<double>::infinity();
    return rep;
}

// ---------------------------------------------------------------------------
// Busemann-Mayer

std::vector<double> RichardsonSchedule::points() const {
    std::vector<double> t(levels);
    for (int k = 0; k < levels; ++k) t[k] = t0 * std::ldexp(1.0, -k);
    return t;
}

namespace {

// Richardson tableau for a sequence f(t_k) with t_{k+1} = t_k / 2 and an
// O(t) leading error term; returns the diagonal.
std::vector<double> richardson_diagonal(const std::vector<double>& f) {
    std::vector<std::vector<double>> r(f.size());
    std::vector<double> diag;
    for (std::size_t i = 0; i < f.size(); ++i) {
        r[i].resize(i + 1);
        r[i][0] = f[i];
        double pow2 = 2.0;
        for (std::size_t j = 1; j <= i; ++j) {
            r[i][j] = (pow2 * r[i][j - 1] - r[i - 1][j - 1]) / (pow2 - 1.0);
            pow2 *= 2.0;
        }
        diag.push_back(r[i][i]);
    }
    return diag;
}

double empirical_order(const std::vector<double>& f) {
    // log2 of successive difference ratios of the raw sequence.
    double acc = 0.0;
    int cnt = 0;
    for (std::size_t i = 2; i < f.size(); ++i) {
        const double d1 = std::fabs(f[i - 1] - f[i - 2]);
        const double d2 = std::fabs(f[i] - f[i - 1]);
        if (d1 > 1e-15 && d2 > 1e-15) {
            acc += std::log2(d1 / d2);
            ++cnt;
        }
    }
    return cnt ? acc / cnt : std::numeric_limits<double>::infinity();
}

inline Point curve_point(Point p, Vec v, Vec a, double t) {
    return {p.t + t * v.t + t * t * a.t, p.x + t * v.x + t * t * a.x};
}

}  // namespace

FEstimate busemann_mayer_first(const DField& dfield, Point p, Vec v, Vec curvature,
                               const RichardsonSchedule& schedule) {
    if (v.t == 0.0 && v.x == 0.0) throw InputError("busemann_mayer_first: v must be nonzero");
    FEstimate est;
    est.t_points = schedule.points();
    for (double t : est.t_points) {
        const ExtReal d = dfield(curve_point(p, v, curvature, t));
        if (d.is_infinite()) {
            throw InputError("busemann_mayer_first: infinite distance on the test curve");
        }
        est.raw.push_back(d.finite_value() / t);
    }
    est.extrapolated = richardson_diagonal(est.raw);
    est.value = est.extrapolated.back();
    est.empirical_order = empirical_order(est.raw);
    return est;
}

F2Estimate busemann_mayer_second(const DField& dfield, const FinslerNorm& norm, Point p,
                                 Vec v, Vec curvature, const RichardsonSchedule& schedule) {
    if (!norm.cone_test(v)) {
        throw InputError(
            "busemann_mayer_second: v must lie strictly inside the cone (the "
            "second formula needs the smooth region)");
    }
    F2Estimate est;
    est.t_points = schedule.points();
    auto d2 = [&](double t) {
        const ExtReal d = dfield(curve_point(p, v, curvature, t));
        if (d.is_infinite()) {
            throw InputError("busemann_mayer_second: infinite distance on the test curve");
        }
        const double f = d.finite_value();
        return f * f;
    };
    for (double t : est.t_points) {
        const double h = 0.25 * t;
        const double deriv = (d2(t + h) - d2(t - h)) / (2.0 * h);
        est.raw.push_back(0.5 * deriv / t);
    }
    est.extrapolated = richardson_diagonal(est.raw);
    est.value = est.extrapolated.back();
    return est;
}

QuadraticityReport quadraticity_test(const FinslerNorm& norm, Point p, int n_dirs) {
    if (n_dirs < 6) throw InputError("quadraticity_test: need at least 6 directions");
    QuadraticityReport rep;
    const DField dfield = [&norm, p](Point q) {
        return ExtReal(norm.evaluate({q.t - p.t, q.x - p.x}));
    };
    // Slopes well inside the cone for every |b| <= 0.3.
    for (int i = 0; i < n_dirs; ++i) {
        const double slope = -0.8 + 1.6 * i / (n_dirs - 1);
        const Vec v{1.0, slope};
        if (!norm.cone_test(v)) continue;
        const F2Estimate f2 = busemann_mayer_second(dfield, norm, p, v, {0.0, 0.0});
        rep.directions.push_back(v);
        rep.recovered_f2.push_back(f2.value);
    }
    // Least squares for Q(v) = A t^2 + B t x + C x^2 via normal equations.
    double ata[3][3] = {};
    double atb[3] = {};
    for (std::size_t i = 0; i < rep.directions.size(); ++i) {
        const Vec v = rep.directions[i];
        const double row[3] = {v.t * v.t, v.t * v.x, v.x * v.x};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) ata[r][c] += row[r] * row[c];
            atb[r] += row[r] * rep.recovered_f2[i];
        }
    }
    // Gaussian elimination, 3x3.
    double m[3][4];
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) m[r][c] = ata[r][c];
        m[r][3] = atb[r];
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
        }
        std::swap(m[col], m[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == col || m[col][col] == 0.0) continue;
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
        }
    }
    for (int r = 0; r < 3; ++r) {
        rep.fitted[r] = m[r][r] != 0.0 ? m[r][3] / m[r][r] : 0.0;
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < rep.directions.size(); ++i) {
        const Vec v = rep.directions[i];
        const double fit =
            rep.fitted[0] * v.t * v.t + rep.fitted[1] * v.t * v.x + rep.fitted[2] * v.x * v.x;
        num += (rep.recovered_f2[i] - fit) * (rep.recovered_f2[i] - fit);
        den += rep.recovered_f2[i] * rep.recovered_f2[i];
    }
    rep.deficit = den > 0.0 ? std::sqrt(num / den) : 0.0;
    return rep;
}

// ---------------------------------------------------------------------------
// Isometry

IsometryReport isometry_check(const SampleBijection& f, const core::DistanceMatrix& d,
                              const core::DistanceMatrix& d_image,
                              const FinslerNorm* norm, const FinslerNorm* norm_image,
                              double stage1_tol, std::uint64_t seed) {
    const std::size_t n = d.size();
    if (f.perm.size() != n || d_image.size() != n) {
        throw InputError("isometry_check: f is not a bijection between the label sets");
    }
    std::vector<bool> seen(n, false);
    for (std::size_t i : f.perm) {
        if (i >= n || seen[i]) throw InputError("isometry_check: f is not a bijection");
        seen[i] = true;
    }

    IsometryReport rep;
    // Stage 1: distance preservation.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const ExtReal a = d.at(i, j);
            const ExtReal b = d_image.at(f.perm[i], f.perm[j]);
            double dev;
            if (a.is_infinite() || b.is_infinite()) {
                dev = (a.is_infinite() == b.is_infinite())
                          ? 0.0
                          : std::numeric_limits<double>::infinity();
            } else {
                dev = std::fabs(a.finite_value() - b.finite_value());
            }
            if (dev > rep.stage1_max_deviation) {
                rep.stage1_max_deviation = dev;
                rep.stage1_witness = checks::Witness{d.labels()[i], d.labels()[j], ""};
            }
        }
    }
    rep.stage1_pass = rep.stage1_max_deviation <= stage1_tol;
    if (!rep.stage1_pass) return rep;
    rep.stage1_witness.reset();

    // Stage 2: pushforward of chronology, relation D and the Alexandrov
    // topology must agree with the image's own structures.
    rep.stage2_evaluated = true;
    const core::Relation chron_src = core::chronology(d);
    const core::Relation chron_img = core::chronology(d_image);
    const core::Relation d_src = checks::relation_D(d);
    const core::Relation d_img = checks::relation_D(d_image);
    rep.stage2_chronology = true;
    rep.stage2_relation_d = true;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (chron_src.at(i, j) != chron_img.at(f.perm[i], f.perm[j])) {
                rep.stage2_chronology = false;
            }
            if (d_src.at(i, j) != d_img.at(f.perm[i], f.perm[j])) {
                rep.stage2_relation_d = false;
            }
        }
    }
    const topology::FiniteTopology alex_src = topology::alexandrov_topology(d);
    const topology::FiniteTopology alex_img = topology::alexandrov_topology(d_image);
    rep.stage2_alexandrov = true;
    for (std::size_t i = 0; i < n && rep.stage2_alexandrov; ++i) {
        const topology::GroundSet& u = alex_src.minimal_open(i);
        const topology::GroundSet& w = alex_img.minimal_open(f.perm[i]);
        for (std::size_t j = 0; j < n; ++j) {
            if (u.contains(j) != w.contains(f.perm[j])) {
                rep.stage2_alexandrov = false;
                break;
            }
        }
    }

    // Stage 3: norm pushforward on random cone directions, recovered on both
    // sides through the first Busemann-Mayer formula.
    if (norm && norm_image && f.linear_pushforward) {
        rep.stage3_evaluated = true;
        models::SplitMix64 rng(seed);
        const DField src_field = [norm](Point q) {
            return ExtReal(norm->evaluate({q.t, q.x}));
        };
        const DField img_field = [norm_image](Point q) {
            return ExtReal(norm_image->evaluate({q.t, q.x}));
        };
        int used = 0;
        for (int k = 0; k < 32 && used < 8; ++k) {
            const Vec v{1.0, rng.next_in(-0.9, 0.9)};
            if (!norm->cone_test(v)) continue;
            const Vec w = (*f.linear_pushforward)(v);
            if (!norm_image->cone_test(w)) {
                rep.stage3_max_deviation = std::numeric_limits<double>::infinity();
                break;
            }
            const double fv =
                busemann_mayer_first(src_field, {0.0, 0.0}, v, {0.0, 0.0}).value;
            const double fw =
                busemann_mayer_first(img_field, {0.0, 0.0}, w, {0.0, 0.0}).value;
            rep.stage3_max_deviation =
                std::max(rep.stage3_max_deviation, std::fabs(fv - fw));
            ++used;
        }
        rep.stage3_pass = rep.stage3_max_deviation <= 1e-6;
    }
    return rep;
}

}  // namespace dkit::finsler
