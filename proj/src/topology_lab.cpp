/// @file topology_lab.cpp

#include "dkit/topology_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>

#include "dkit/distance_core.hpp"

namespace dkit::topology {

using core::ext_approx_eq;
using core::ext_leq;
using core::ext_positive;
using core::ExtReal;
using core::InputError;

std::size_t GroundSet::count() const {
    std::size_t c = 0;
    for (std::uint64_t w : bits_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
}

bool GroundSet::empty() const {
    for (std::uint64_t w : bits_) {
        if (w) return false;
    }
    return true;
}

bool GroundSet::subset_of(const GroundSet& o) const {
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i] & ~o.bits_[i]) return false;
    }
    return true;
}

GroundSet GroundSet::intersect(const GroundSet& o) const {
    GroundSet r(n_);
    for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] & o.bits_[i];
    return r;
}

GroundSet GroundSet::unite(const GroundSet& o) const {
    GroundSet r(n_);
    for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] | o.bits_[i];
    return r;
}

std::vector<std::size_t> GroundSet::members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_; ++i) {
        if (contains(i)) out.push_back(i);
    }
    return out;
}

FiniteTopology::FiniteTopology(std::vector<std::string> ground,
                               std::vector<GroundSet> subbasis)
    : ground_(std::move(ground)), subbasis_(std::move(subbasis)) {
    const std::size_t n = ground_.size();
    minimal_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        GroundSet u(n);
        bool hit = false;
        for (const GroundSet& s : subbasis_) {
            if (!s.contains(i)) continue;
            u = hit ? u.intersect(s) : s;
            hit = true;
        }
        if (!hit) {
            // No subbasis set sees i: its only neighborhood is the whole space.
            for (std::size_t j = 0; j < n; ++j) u.add(j);
        }
        minimal_.push_back(u);
    }
}

bool FiniteTopology::is_open(const GroundSet& s) const {
    for (std::size_t i : s.members()) {
        if (!minimal_[i].subset_of(s)) return false;
    }
    return true;
}

bool FiniteTopology::is_discrete() const {
    for (std::size_t i = 0; i < ground_.size(); ++i) {
        if (minimal_[i].count() != 1) return false;
    }
    return true;
}

std::optional<std::vector<GroundSet>> FiniteTopology::opens(std::size_t cap) const {
    // Every open is a union of minimal-basis sets; close {empty} under
    // one-set unions to a fixpoint.
    std::set<GroundSet> result;
    result.insert(GroundSet(ground_.size()));
    const std::set<GroundSet> basis(minimal_.begin(), minimal_.end());
    bool grew = true;
    while (grew) {
        grew = false;
        const std::vector<GroundSet> snapshot(result.begin(), result.end());
        for (const GroundSet& r : snapshot) {
            for (const GroundSet& b : basis) {
                if (result.insert(r.unite(b)).second) grew = true;
                if (result.size() > cap) return std::nullopt;
            }
        }
    }
    return std::vector<GroundSet>(result.begin(), result.end());
}

bool FiniteTopology::same_topology_as(const FiniteTopology& other) const {
    if (ground_ != other.ground_) return false;
    for (std::size_t i = 0; i < ground_.size(); ++i) {
        if (!(minimal_[i] == other.minimal_[i])) return false;
    }
    return true;
}

namespace {

std::vector<std::size_t> full_ground(const DistanceMatrix& d) {
    std::vector<std::size_t> g(d.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = i;
    return g;
}

}  // namespace

FiniteTopology alexandrov_topology(const DistanceMatrix& d,
                                   const std::vector<std::size_t>* ground_subset,
                                   double tol) {
    const std::vector<std::size_t> ground =
        ground_subset ? *ground_subset : full_ground(d);
    std::vector<std::string> labels;
    labels.reserve(ground.size());
    for (std::size_t g : ground) labels.push_back(d.labels()[g]);

    std::set<GroundSet> subbasis;
    for (std::size_t p = 0; p < d.size(); ++p) {
        for (std::size_t q = 0; q < d.size(); ++q) {
            GroundSet s(ground.size());
            bool nonempty = false;
            for (std::size_t gi = 0; gi < ground.size(); ++gi) {
                const std::size_t r = ground[gi];
                if (ext_positive(d.at(p, r), tol) && ext_positive(d.at(r, q), tol)) {
                    s.add(gi);
                    nonempty = true;
                }
            }
            if (nonempty) subbasis.insert(s);
        }
    }
    return FiniteTopology(std::move(labels),
                          std::vector<GroundSet>(subbasis.begin(), subbasis.end()));
}

FiniteTopology initial_topology(const DistanceMatrix& d,
                                const std::vector<std::size_t>* ground_subset,
                                double tol) {
    const std::vector<std::size_t> ground =
        ground_subset ? *ground_subset : full_ground(d);
    std::vector<std::string> labels;
    labels.reserve(ground.size());
    for (std::size_t g : ground) labels.push_back(d.labels()[g]);
    const std::size_t m = ground.size();

    std::set<GroundSet> subbasis;
    // One pass per function d_p (rows) and d^p (columns), every p in the
    // sample.
    for (std::size_t p = 0; p < d.size(); ++p) {
        for (int col = 0; col < 2; ++col) {
            std::vector<ExtReal> vals(m);
            for (std::size_t gi = 0; gi < m; ++gi) {
                vals[gi] = col ? d.at(ground[gi], p) : d.at(p, ground[gi]);
            }
            // Distinct attained values (tol-deduplicated), finite ascending.
            std::vector<double> finite;
            bool has_inf = false;
            for (const ExtReal& v : vals) {
                if (v.is_infinite()) {
                    has_inf = true;
                } else {
                    finite.push_back(v.finite_value());
                }
            }
            std::sort(finite.begin(), finite.end());
            std::vector<double> attained;
            for (double v : finite) {
                if (attained.empty() || v - attained.back() > tol) attained.push_back(v);
            }
            std::vector<double> thresholds;
            for (std::size_t i = 1; i < attained.size(); ++i) {
                thresholds.push_back(0.5 * (attained[i - 1] + attained[i]));
            }
            if (has_inf && !attained.empty()) thresholds.push_back(attained.back() + 1.0);

            for (double a : thresholds) {
                GroundSet up(m), down(m);
                bool up_ne = false, down_ne = false;
                for (std::size_t gi = 0; gi < m; ++gi) {
                    const bool above = vals[gi].is_infinite() || vals[gi].raw() > a;
                    if (above) {
                        up.add(gi);
                        up_ne = true;
                    } else {
                        down.add(gi);
                        down_ne = true;
                    }
                }
                if (up_ne) subbasis.insert(up);
                if (down_ne) subbasis.insert(down);
            }
        }
    }
    return FiniteTopology(std::move(labels),
                          std::vector<GroundSet>(subbasis.begin(), subbasis.end()));
}

HausdorffVerdict is_hausdorff(const FiniteTopology& t) {
    HausdorffVerdict v;
    const std::size_t n = t.ground().size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!t.minimal_open(i).intersect(t.minimal_open(j)).empty()) {
                v.hausdorff = false;
                v.witness = std::make_pair(t.ground()[i], t.ground()[j]);
                return v;
            }
        }
    }
    v.hausdorff = true;
    return v;
}

bool finer_than(const FiniteTopology& t1, const FiniteTopology& t2) {
    if (t1.ground() != t2.ground()) throw InputError("finer_than: ground sets differ");
    // T2's opens are unions of its minimal opens; each is T1-open iff every
    // T1-minimal neighborhood stays inside the corresponding T2-minimal set.
    for (std::size_t i = 0; i < t1.ground().size(); ++i) {
        if (!t1.minimal_open(i).subset_of(t2.minimal_open(i))) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Semicontinuity probes

ProbeSchedule ProbeSchedule::standard(Point approach) {
    ProbeSchedule s;
    s.approach = approach;
    for (int k = 1; k <= 12; ++k) s.radii.push_back(std::ldexp(1.0, -k));
    return s;
}

namespace {

struct TailStats {
    ExtReal liminf, limsup;
};

// Empirical liminf/limsup over the tail of the (converging) value sequence.
TailStats tail_stats(const std::vector<ExtReal>& vals) {
    const std::size_t tail = std::min<std::size_t>(4, vals.size());
    ExtReal lo = vals[vals.size() - tail], hi = lo;
    for (std::size_t i = vals.size() - tail; i < vals.size(); ++i) {
        if (!ext_leq(lo, vals[i], 0.0)) lo = vals[i];
        if (!ext_leq(vals[i], hi, 0.0)) hi = vals[i];
    }
    return {lo, hi};
}

// Violation of the one-sided bound at a single sequence point.
double bound_residual(Side side, ExtReal value_at_target, ExtReal observed) {
    if (side == Side::Upper) {
        // observed must not exceed value
        if (value_at_target.is_infinite()) return 0.0;
        if (observed.is_infinite()) return std::numeric_limits<double>::infinity();
        return std::max(0.0, observed.finite_value() - value_at_target.finite_value());
    }
    // lower: observed must not fall below value
    if (observed.is_infinite()) return 0.0;
    if (value_at_target.is_infinite()) return std::numeric_limits<double>::infinity();
    return std::max(0.0, value_at_target.finite_value() - observed.finite_value());
}

// Semicontinuity verdict from the residual tail. The distance may approach
// its limit as slowly as O(sqrt(r)) (null-cone crossings), so a residual that
// keeps shrinking geometrically counts as converging to the bound; only a
// stagnating residual above tol refutes the semicontinuity side.
struct SideVerdict {
    bool pass = true;
    double gap = 0.0;
};

SideVerdict side_verdict(Side side, ExtReal value_at_target,
                         const std::vector<ExtReal>& vals, double tol) {
    std::vector<double> res;
    res.reserve(vals.size());
    for (const ExtReal& v : vals) res.push_back(bound_residual(side, value_at_target, v));

    const std::size_t tail = std::min<std::size_t>(6, res.size());
    bool converging = true;
    for (std::size_t i = res.size() - tail + 1; i < res.size(); ++i) {
        const double prev = res[i - 1], cur = res[i];
        if (cur <= tol) continue;
        if (std::isinf(cur) || !(cur <= 0.8 * prev)) {
            converging = false;
            break;
        }
    }
    SideVerdict v;
    v.pass = res.back() <= tol || converging;
    v.gap = v.pass ? 0.0 : res.back();
    return v;
}

}  // namespace

ProbeReport semicontinuity_probe(const SpacetimeModel& model, Point p_ref, Point target,
                                 Side side, const ProbeSchedule& schedule, double tol) {
    ProbeReport rep;
    rep.side = side;
    if (!model.in_domain(p_ref) || !model.in_domain(target)) {
        throw InputError("semicontinuity_probe: points outside model domain");
    }
    rep.target_dp = model.exact_d(p_ref, target);
    rep.target_dcol = model.exact_d(target, p_ref);

    std::vector<ExtReal> vals_dp, vals_dcol;
    int k = 0;
    for (double r : schedule.radii) {
        ++k;
        const Point q = target + r * schedule.approach;
        if (!model.in_domain(q)) continue;
        ProbeRow row;
        row.k = k;
        row.radius = r;
        row.value_dp = model.exact_d(p_ref, q);
        row.value_dcol = model.exact_d(q, p_ref);
        rep.rows.push_back(row);
        vals_dp.push_back(row.value_dp);
        vals_dcol.push_back(row.value_dcol);
    }
    if (vals_dp.size() < 4) {
        rep.applicable = false;
        return rep;
    }

    const TailStats sp = tail_stats(vals_dp);
    const TailStats sc = tail_stats(vals_dcol);
    rep.liminf_dp = sp.liminf;
    rep.limsup_dp = sp.limsup;
    rep.liminf_dcol = sc.liminf;
    rep.limsup_dcol = sc.limsup;

    const SideVerdict vp = side_verdict(side, rep.target_dp, vals_dp, tol);
    const SideVerdict vc = side_verdict(side, rep.target_dcol, vals_dcol, tol);
    rep.pass_dp = vp.pass;
    rep.gap_dp = vp.gap;
    rep.pass_dcol = vc.pass;
    rep.gap_dcol = vc.gap;
    return rep;
}

void ProbeReport::save_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write probe csv: " + path);
    out << "k,radius,value_dp,value_dcol,suffix_min_dp,suffix_max_dp\n";
    // Suffix statistics approximate the running liminf/limsup.
    std::vector<ExtReal> suf_min(rows.size()), suf_max(rows.size());
    for (std::size_t i = rows.size(); i-- > 0;) {
        suf_min[i] = rows[i].value_dp;
        suf_max[i] = rows[i].value_dp;
        if (i + 1 < rows.size()) {
            if (!ext_leq(suf_min[i], suf_min[i + 1], 0.0)) suf_min[i] = suf_min[i + 1];
            if (!ext_leq(suf_max[i + 1], suf_max[i], 0.0)) suf_max[i] = suf_max[i + 1];
        }
    }
    char buf[64];
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%d,%.12g,", rows[i].k, rows[i].radius);
        out << buf << core::ext_to_string(rows[i].value_dp) << ","
            << core::ext_to_string(rows[i].value_dcol) << ","
            << core::ext_to_string(suf_min[i]) << "," << core::ext_to_string(suf_max[i])
            << "\n";
    }
}

SemicontinuityBattery semicontinuity_battery(const SampleSpace& sample,
                                             std::size_t max_targets, double probe_tol) {
    SemicontinuityBattery out;
    const std::size_t n_targets = std::min(sample.core_count, max_targets);
    const Point dirs[4] = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
    for (std::size_t ti = 0; ti < n_targets; ++ti) {
        const Point target = sample.points[ti];
        for (std::size_t ri = 0; ri < sample.core_count; ++ri) {
            if (ri == ti) continue;
            const Point p_ref = sample.points[ri];
            for (const Point& dir : dirs) {
                for (Side side : {Side::Lower, Side::Upper}) {
                    ProbeReport rep = semicontinuity_probe(
                        sample.model, p_ref, target, side, ProbeSchedule::standard(dir),
                        probe_tol);
                    if (!rep.applicable) continue;
                    ++out.probes_run;
                    if (!rep.pass()) {
                        ++out.failure_count;
                        if (side == Side::Upper) out.upper_failure = true;
                        if (side == Side::Lower) out.lower_failure = true;
                        if (out.failures.size() < 16) {
                            out.failures.push_back({sample.labels[ri], sample.labels[ti],
                                                    dir, side,
                                                    std::max(rep.gap_dp, rep.gap_dcol)});
                        }
                    }
                }
            }
        }
    }
    return out;
}

ConsistencyReport reflectivity_continuity_consistency(const SampleSpace& sample,
                                                      double tol) {
    ConsistencyReport rep;
    rep.battery = semicontinuity_battery(sample, 1000, kProbeTol);
    rep.causality = checks::causality_report(sample, tol);
    rep.probes_pass = rep.battery.pass();
    rep.upper_probe_failure = rep.battery.upper_failure;
    rep.d_reflectivity_pass = rep.causality.d_reflectivity.pass;
    const bool imp1 = !(rep.probes_pass && !rep.d_reflectivity_pass);
    const bool imp2 = !(!rep.d_reflectivity_pass && !rep.upper_probe_failure);
    rep.consistent = imp1 && imp2;
    return rep;
}

}  // namespace dkit::topology
