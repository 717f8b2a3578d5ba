/// @file report_json.cpp

#include "dkit/report_json.hpp"

#include <cstdio>
#include <fstream>

namespace dkit::report {

double quantize(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::strtod(buf, nullptr);
}

json ext_json(core::ExtReal v) {
    if (v.is_infinite()) return "inf";
    return quantize(v.finite_value());
}

json to_json(const core::ViolationReport& rep, const core::DistanceMatrix& d) {
    json out;
    out["pass"] = rep.pass();
    out["violation_count"] = rep.violations.size();
    json list = json::array();
    std::size_t cap = 0;
    for (const core::TripleViolation& v : rep.violations) {
        if (++cap > 16) break;
        list.push_back({{"p", d.labels()[v.p]},
                        {"q", d.labels()[v.q]},
                        {"r", d.labels()[v.r]},
                        {"d_pr", ext_json(v.d_pr)},
                        {"d_pq", ext_json(v.d_pq)},
                        {"d_qr", ext_json(v.d_qr)}});
    }
    out["violations"] = list;
    return out;
}

json to_json(const checks::Witness& w) {
    json out;
    out["p"] = w.p;
    out["q"] = w.q;
    if (!w.third.empty()) out["third"] = w.third;
    return out;
}

json to_json(const checks::PredicateVerdict& v) {
    json out;
    if (!v.evaluated) {
        out["verdict"] = "not_evaluated";
        return out;
    }
    out["verdict"] = v.pass ? "pass" : "fail";
    if (v.witness) out["witness"] = to_json(*v.witness);
    return out;
}

json to_json(const checks::CausalityReport& rep) {
    json out;
    out["tolerance"] = quantize(rep.tol);
    out["future_d_distinction"] = to_json(rep.future_d_distinction);
    out["past_d_distinction"] = to_json(rep.past_d_distinction);
    out["d_distinction"] = to_json(rep.d_distinction);
    out["weak_d_distinction"] = to_json(rep.weak_d_distinction);
    out["future_or_past_d_distinction"] = to_json(rep.future_or_past_d_distinction);
    out["future_d_reflectivity"] = to_json(rep.future_d_reflectivity);
    out["past_d_reflectivity"] = to_json(rep.past_d_reflectivity);
    out["d_reflectivity"] = to_json(rep.d_reflectivity);
    out["strong_future_reflectivity"] = to_json(rep.strong_future_reflectivity);
    out["strong_past_reflectivity"] = to_json(rep.strong_past_reflectivity);
    out["causal_continuity"] = to_json(rep.causal_continuity);
    out["strong_reflectivity_chronology"] =
        rep.strong_used_ground_truth ? "ground_truth" : "{d>0}";
    out["lattice_consistent"] = rep.lattice_consistent();
    return out;
}

json relation_edges_json(const core::Relation& r) {
    json edges = json::array();
    for (auto [i, j] : r.strict_edges()) {
        edges.push_back({r.labels()[i], r.labels()[j]});
    }
    return edges;
}

json to_json(const checks::Eq1Relations& rep) {
    json out;
    out["equal"] = rep.equal;
    if (rep.mismatch) out["mismatch"] = to_json(*rep.mismatch);
    out["r_future_pairs"] = rep.r_future.pair_count();
    out["r_past_pairs"] = rep.r_past.pair_count();
    return out;
}

json to_json(const checks::InclusionCheck& rep) {
    json out;
    out["pairs_checked"] = rep.pairs_checked;
    out["exact_direction_failures"] = rep.exact_direction_failures;
    out["surrogate_direction_failures"] = rep.surrogate_direction_failures;
    json w = json::array();
    for (const checks::Witness& x : rep.surrogate_witnesses) w.push_back(to_json(x));
    out["surrogate_witnesses"] = w;
    return out;
}

json to_json(const gates::Condition& c) {
    json out;
    switch (c.status) {
        case gates::ConditionStatus::Pass: out["status"] = "pass"; break;
        case gates::ConditionStatus::Fail: out["status"] = "fail"; break;
        case gates::ConditionStatus::NotApplicable: out["status"] = "not_applicable"; break;
    }
    if (c.witness) out["witness"] = to_json(*c.witness);
    if (!c.note.empty()) out["note"] = c.note;
    return out;
}

json to_json(const gates::GateVerdict& gv) {
    json out;
    out["verdict"] = gates::verdict_name(gv.verdict);
    if (!gv.refuted_condition.empty()) out["refuted_condition"] = gv.refuted_condition;
    if (!gv.inconclusive_reason.empty()) {
        out["inconclusive_reason"] = gv.inconclusive_reason;
    }
    json conds;
    for (const auto& [key, cond] : gv.conditions) conds[key] = to_json(cond);
    out["conditions"] = conds;
    out["reconstructed_J_pairs"] = gv.reconstructed_J.pair_count();
    out["reconstructed_J"] = relation_edges_json(gv.reconstructed_J);
    return out;
}

json to_json(const gates::AxiomReport& rep) {
    json out;
    out["finiteness"] = to_json(rep.finiteness);
    out["reverse_triangle"] = to_json(rep.reverse_triangle);
    out["weak_d_distinction"] = to_json(rep.weak_d_distinction);
    out["no_chronological_boundary"] = to_json(rep.no_chronological_boundary);
    out["continuity_compactness"] = to_json(rep.continuity_compactness);
    out["d_reflective"] = rep.d_reflective;
    out["boundary_points"] = rep.boundary_points;
    out["core_axioms_pass"] = rep.core_axioms_pass();
    return out;
}

json to_json(const models::OracleReport& rep) {
    json out;
    out["resolution"] = rep.resolution;
    out["max_gap"] = quantize(rep.max_gap);
    out["min_gap"] = quantize(rep.min_gap);
    out["lower_bound_ok"] = rep.lower_bound_ok();
    out["infinite_pairs"] = rep.infinite_pairs;
    json pairs = json::array();
    for (const models::OraclePairResult& r : rep.pairs) {
        json p;
        p["p"] = {quantize(r.p.t), quantize(r.p.x)};
        p["q"] = {quantize(r.q.t), quantize(r.q.x)};
        p["exact"] = ext_json(r.exact);
        p["oracle"] = quantize(r.oracle);
        p["path_found"] = r.path_found;
        p["snap_found"] = r.snap_found;
        pairs.push_back(p);
    }
    out["pairs"] = pairs;
    return out;
}

json to_json(const causets::ScalingReport& rep) {
    json out;
    json entries = json::array();
    for (const causets::ScalingEntry& e : rep.entries) {
        entries.push_back({{"density", quantize(e.density)},
                           {"median_chain", quantize(e.median_chain)},
                           {"median_n", quantize(e.median_n)},
                           {"ratio_chain_per_sqrt_n", quantize(e.ratio)},
                           {"insufficient_sample", e.insufficient_sample}});
    }
    out["entries"] = entries;
    out["medians_strictly_increasing"] = rep.medians_strictly_increasing;
    out["ratios_in_bracket"] = rep.ratios_in_bracket;
    return out;
}

json to_json(const topology::FiniteTopology& t, std::size_t materialize_cap) {
    json out;
    out["ground_size"] = t.ground().size();
    out["subbasis_size"] = t.subbasis().size();
    out["discrete"] = t.is_discrete();
    const auto opens = t.opens(materialize_cap);
    if (opens) {
        json list = json::array();
        for (const topology::GroundSet& s : *opens) {
            json one = json::array();
            for (std::size_t i : s.members()) one.push_back(t.ground()[i]);
            list.push_back(one);
        }
        out["open_count"] = opens->size();
        out["opens"] = list;
    } else {
        out["opens"] = "exceeds materialization cap";
        json minimal = json::array();
        for (std::size_t i = 0; i < t.ground().size(); ++i) {
            json one = json::array();
            for (std::size_t j : t.minimal_open(i).members()) one.push_back(t.ground()[j]);
            minimal.push_back(one);
        }
        out["minimal_basis"] = minimal;
    }
    return out;
}

json to_json(const topology::HausdorffVerdict& v) {
    json out;
    out["hausdorff"] = v.hausdorff;
    out["note"] = v.note;
    if (v.witness) out["witness"] = {v.witness->first, v.witness->second};
    return out;
}

json to_json(const topology::SemicontinuityBattery& b) {
    json out;
    out["probes_run"] = b.probes_run;
    out["failure_count"] = b.failure_count;
    out["upper_failure"] = b.upper_failure;
    out["lower_failure"] = b.lower_failure;
    json fails = json::array();
    for (const topology::BatteryFailure& f : b.failures) {
        fails.push_back({{"p_ref", f.p_ref},
                         {"target", f.target},
                         {"approach", {quantize(f.approach.t), quantize(f.approach.x)}},
                         {"side", f.side == topology::Side::Upper ? "upper" : "lower"},
                         {"gap", quantize(f.gap)}});
    }
    out["failures"] = fails;
    out["pass"] = b.pass();
    return out;
}

json to_json(const topology::ConsistencyReport& rep) {
    json out;
    out["probes_pass"] = rep.probes_pass;
    out["upper_probe_failure"] = rep.upper_probe_failure;
    out["d_reflectivity_pass"] = rep.d_reflectivity_pass;
    out["consistent"] = rep.consistent;
    out["battery"] = to_json(rep.battery);
    return out;
}

json to_json(const finsler::FEstimate& est) {
    json out;
    out["value"] = quantize(est.value);
    out["empirical_order"] = quantize(est.empirical_order);
    json raw = json::array(), extr = json::array(), ts = json::array();
    for (double v : est.raw) raw.push_back(quantize(v));
    for (double v : est.extrapolated) extr.push_back(quantize(v));
    for (double v : est.t_points) ts.push_back(quantize(v));
    out["raw"] = raw;
    out["extrapolated"] = extr;
    out["t"] = ts;
    return out;
}

json to_json(const finsler::F2Estimate& est) {
    json out;
    out["value"] = quantize(est.value);
    json raw = json::array(), ts = json::array();
    for (double v : est.raw) raw.push_back(quantize(v));
    for (double v : est.t_points) ts.push_back(quantize(v));
    out["raw"] = raw;
    out["t"] = ts;
    return out;
}

json to_json(const finsler::QuadraticityReport& rep) {
    json out;
    out["deficit"] = quantize(rep.deficit);
    out["directions"] = rep.directions.size();
    out["fitted"] = {quantize(rep.fitted[0]), quantize(rep.fitted[1]),
                     quantize(rep.fitted[2])};
    return out;
}

json to_json(const finsler::IsometryReport& rep) {
    json out;
    out["stage1_max_deviation"] = quantize(rep.stage1_max_deviation);
    out["stage1_pass"] = rep.stage1_pass;
    if (rep.stage1_witness) out["stage1_witness"] = to_json(*rep.stage1_witness);
    if (rep.stage2_evaluated) {
        out["stage2_chronology"] = rep.stage2_chronology;
        out["stage2_relation_d"] = rep.stage2_relation_d;
        out["stage2_alexandrov"] = rep.stage2_alexandrov;
    }
    if (rep.stage3_evaluated) {
        out["stage3_max_deviation"] = quantize(rep.stage3_max_deviation);
        out["stage3_pass"] = rep.stage3_pass;
    }
    out["pass"] = rep.pass();
    return out;
}

json to_json(const finsler::JacobianReport& rep) {
    json out;
    out["identity_deviation_at_zero"] = quantize(rep.identity_deviation_at_zero);
    out["max_deviation_in_ball"] = quantize(rep.max_deviation_in_ball);
    out["lipschitz_estimate"] = quantize(rep.lipschitz_estimate);
    out["radius"] = quantize(rep.radius);
    out["directions"] = rep.directions;
    return out;
}

json to_json(const finsler::ConvergenceReport& rep) {
    json out;
    out["steps"] = rep.steps;
    json errs = json::array();
    for (double e : rep.errors) errs.push_back(quantize(e));
    out["errors"] = errs;
    out["order"] = quantize(rep.order);
    return out;
}

bool subset_match(const json& expected, const json& actual) {
    if (expected.is_object()) {
        if (!actual.is_object()) return false;
        for (auto it = expected.begin(); it != expected.end(); ++it) {
            if (!actual.contains(it.key())) return false;
            if (!subset_match(it.value(), actual.at(it.key()))) return false;
        }
        return true;
    }
    return expected == actual;
}

std::string file_hash_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::uint64_t h = 1469598103934665603ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace dkit::report
