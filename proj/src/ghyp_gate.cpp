/// @file ghyp_gate.cpp

#include "dkit/ghyp_gate.hpp"

#include <algorithm>

#include "dkit/distance_core.hpp"

namespace dkit::gates {

using core::ext_positive;

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::ConsistentWithGH: return "CONSISTENT_WITH_GH";
        case Verdict::Refuted: return "REFUTED";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "UNKNOWN";
}

namespace {

Condition pass_condition(std::string note = "") {
    return {ConditionStatus::Pass, std::nullopt, std::move(note)};
}

Condition fail_condition(Witness w, std::string note = "") {
    return {ConditionStatus::Fail, std::move(w), std::move(note)};
}

Condition na_condition(std::string reason) {
    return {ConditionStatus::NotApplicable, std::nullopt, std::move(reason)};
}

// Aggregation is monotone: any applicable failure refutes, and the refuting
// condition is the first failing one in the canonical order.
void aggregate(GateVerdict& gv) {
    for (const std::string& key : condition_order()) {
        auto it = gv.conditions.find(key);
        if (it == gv.conditions.end()) continue;
        if (it->second.status == ConditionStatus::Fail) {
            gv.verdict = Verdict::Refuted;
            gv.refuted_condition = key;
            return;
        }
    }
    for (const auto& [key, cond] : gv.conditions) {
        if (cond.status == ConditionStatus::Pass) {
            gv.verdict = Verdict::ConsistentWithGH;
        }
    }
    if (gv.verdict != Verdict::ConsistentWithGH) {
        gv.verdict = Verdict::Inconclusive;
        gv.inconclusive_reason = "no applicable condition could be evaluated";
    }
}

Condition finiteness_condition(const DistanceMatrix& d) {
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = 0; j < d.size(); ++j) {
            if (d.at(i, j).is_infinite()) {
                return fail_condition({d.labels()[i], d.labels()[j], ""},
                                      "infinite distance entry");
            }
        }
    }
    return pass_condition();
}

Condition precompactness_condition(const SampleSpace& sample, double tol) {
    for (std::size_t i = 0; i < sample.size(); ++i) {
        for (std::size_t j = 0; j < sample.size(); ++j) {
            if (i == j || !ext_positive(sample.matrix.at(i, j), tol)) continue;
            if (!sample.model.diamond_precompact(sample.points[i], sample.points[j])) {
                return fail_condition(
                    {sample.labels[i], sample.labels[j], ""},
                    "diamond closure meets a removed set or the domain boundary");
            }
        }
    }
    return pass_condition("geometric oracle over all sampled chronological pairs");
}

Condition continuity_condition(const SampleSpace& sample, double /*tol*/) {
    const topology::SemicontinuityBattery battery =
        topology::semicontinuity_battery(sample, 1000, topology::kProbeTol);
    if (battery.pass()) {
        return pass_condition("semicontinuity probes: " +
                              std::to_string(battery.probes_run) + " run, all pass");
    }
    const topology::BatteryFailure& f = battery.failures.front();
    return fail_condition({f.p_ref, f.target, ""},
                          std::string(f.side == topology::Side::Upper ? "upper" : "lower") +
                              " semicontinuity defect " + std::to_string(f.gap) + " (" +
                              std::to_string(battery.failure_count) + " failing probes)");
}

Condition from_predicate(const checks::PredicateVerdict& pv) {
    if (!pv.evaluated) return na_condition("not evaluated");
    if (pv.pass) return pass_condition();
    return fail_condition(pv.witness.value_or(Witness{}), "");
}

std::vector<std::size_t> core_ground(const SampleSpace& sample) {
    std::vector<std::size_t> g(sample.core_count);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = i;
    return g;
}

}  // namespace

GateVerdict thm_main_gate(const SampleSpace& sample, double tol) {
    GateVerdict gv;
    const DistanceMatrix& d = sample.matrix;
    gv.conditions["finiteness"] = finiteness_condition(d);
    gv.conditions["diamond_precompactness"] = precompactness_condition(sample, tol);
    gv.conditions["continuity_surrogate"] = continuity_condition(sample, tol);
    const std::vector<std::size_t> subjects = core_ground(sample);
    const checks::CausalityReport rep = checks::distinction_report(d, tol, &subjects);
    gv.conditions["weak_d_distinction"] = from_predicate(rep.weak_d_distinction);
    gv.conditions["future_or_past_d_distinction"] =
        from_predicate(rep.future_or_past_d_distinction);
    gv.reconstructed_J = checks::relation_D(d, tol);
    aggregate(gv);
    return gv;
}

GateVerdict thm_main_gate(const DistanceMatrix& d, double tol) {
    GateVerdict gv;
    gv.conditions["finiteness"] = finiteness_condition(d);
    gv.conditions["diamond_precompactness"] = na_condition(
        "no geometric oracle: on a finite set every subset is compact, so a "
        "matrix-only check would be vacuous");
    gv.conditions["continuity_surrogate"] =
        na_condition("no model: no convergent sequences to probe");
    const checks::CausalityReport rep = checks::distinction_report(d, tol);
    gv.conditions["weak_d_distinction"] = from_predicate(rep.weak_d_distinction);
    gv.conditions["future_or_past_d_distinction"] =
        from_predicate(rep.future_or_past_d_distinction);
    gv.reconstructed_J = checks::relation_D(d, tol);
    aggregate(gv);
    return gv;
}

GateVerdict diamond_gate(const SampleSpace& sample, double tol) {
    GateVerdict gv;
    // Probes serve as diamond corners and separating test points; the
    // topology itself is evaluated on the core events.
    const std::vector<std::size_t> ground = core_ground(sample);
    const topology::FiniteTopology alex =
        topology::alexandrov_topology(sample.matrix, &ground, tol);
    const topology::HausdorffVerdict hv = topology::is_hausdorff(alex);
    gv.conditions["alexandrov_hausdorff"] =
        hv.hausdorff ? pass_condition(hv.note)
                     : fail_condition({hv.witness->first, hv.witness->second, ""}, hv.note);
    gv.conditions["diamond_precompactness"] = precompactness_condition(sample, tol);
    gv.reconstructed_J = checks::relation_D(sample.matrix, tol);
    aggregate(gv);
    return gv;
}

GateVerdict diamond_gate(const DistanceMatrix& d, double tol) {
    GateVerdict gv;
    const topology::FiniteTopology alex = topology::alexandrov_topology(d, nullptr, tol);
    const topology::HausdorffVerdict hv = topology::is_hausdorff(alex);
    gv.conditions["alexandrov_hausdorff"] =
        hv.hausdorff ? pass_condition(hv.note)
                     : fail_condition({hv.witness->first, hv.witness->second, ""}, hv.note);
    gv.conditions["diamond_precompactness"] = na_condition("no precompactness oracle");
    gv.reconstructed_J = checks::relation_D(d, tol);
    gv.verdict = Verdict::Inconclusive;
    gv.inconclusive_reason = "no precompactness oracle";
    return gv;
}

bool AxiomReport::core_axioms_pass() const {
    return finiteness.status == ConditionStatus::Pass &&
           reverse_triangle.status == ConditionStatus::Pass &&
           weak_d_distinction.status == ConditionStatus::Pass;
}

AxiomReport lms_axiom_check(const DistanceMatrix& d, double tol) {
    AxiomReport rep;
    rep.finiteness = finiteness_condition(d);

    const core::ViolationReport rt = core::check_reverse_triangle(d, tol);
    if (rt.pass()) {
        rep.reverse_triangle = pass_condition();
    } else {
        const core::TripleViolation& v = rt.violations.front();
        rep.reverse_triangle =
            fail_condition({d.labels()[v.p], d.labels()[v.r], d.labels()[v.q]},
                           std::to_string(rt.violations.size()) + " violating triples");
    }

    const checks::CausalityReport cr = checks::causality_report(d, nullptr, tol);
    rep.weak_d_distinction = from_predicate(cr.weak_d_distinction);
    rep.d_reflective = cr.d_reflectivity.pass;

    const Relation chron = core::chronology(d, tol);
    for (std::size_t p = 0; p < d.size(); ++p) {
        bool has_past = false, has_future = false;
        for (std::size_t r = 0; r < d.size(); ++r) {
            has_past = has_past || chron.at(r, p);
            has_future = has_future || chron.at(p, r);
        }
        if (!has_past || !has_future) rep.boundary_points.push_back(d.labels()[p]);
    }
    rep.no_chronological_boundary =
        rep.boundary_points.empty()
            ? pass_condition()
            : fail_condition({rep.boundary_points.front(), "", ""},
                             std::to_string(rep.boundary_points.size()) +
                                 " boundary points flagged");

    rep.continuity_compactness = pass_condition(
        "trivially satisfied: finite ground set carries the discrete topology");
    return rep;
}

}  // namespace dkit::gates
