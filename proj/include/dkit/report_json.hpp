/// @file report_json.hpp
/// @brief JSON serialization of every report type, with deterministic float
///        formatting (12 significant digits) and symbolic "inf" entries.

#pragma once

#include <json.hpp>

#include "dkit/causal_sets.hpp"
#include "dkit/causality_checks.hpp"
#include "dkit/distance_core.hpp"
#include "dkit/finsler_lab.hpp"
#include "dkit/ghyp_gate.hpp"
#include "dkit/grid_oracle.hpp"
#include "dkit/topology_lab.hpp"

namespace dkit::report {

using json = nlohmann::ordered_json;

/// Doubles rounded to 12 significant digits so re-runs are byte-identical.
double quantize(double v);
json ext_json(core::ExtReal v);

json to_json(const core::ViolationReport& rep, const core::DistanceMatrix& d);
json to_json(const checks::Witness& w);
json to_json(const checks::PredicateVerdict& v);
json to_json(const checks::CausalityReport& rep);
json to_json(const checks::Eq1Relations& rep);
json to_json(const checks::InclusionCheck& rep);
json relation_edges_json(const core::Relation& r);

json to_json(const gates::Condition& c);
json to_json(const gates::GateVerdict& gv);
json to_json(const gates::AxiomReport& rep);

json to_json(const models::OracleReport& rep);
json to_json(const causets::ScalingReport& rep);

json to_json(const topology::FiniteTopology& t, std::size_t materialize_cap = 1u << 16);
json to_json(const topology::HausdorffVerdict& v);
json to_json(const topology::SemicontinuityBattery& b);
json to_json(const topology::ConsistencyReport& rep);

json to_json(const finsler::FEstimate& est);
json to_json(const finsler::F2Estimate& est);
json to_json(const finsler::QuadraticityReport& rep);
json to_json(const finsler::IsometryReport& rep);
json to_json(const finsler::JacobianReport& rep);
json to_json(const finsler::ConvergenceReport& rep);

/// Recursive sub-object containment: every key/value in `expected` must be
/// present and equal in `actual` (arrays compare exactly).
bool subset_match(const json& expected, const json& actual);

/// FNV-1a 64-bit of a file's bytes, hex-encoded; used as the scenario hash.
std::string file_hash_hex(const std::string& path);

}  // namespace dkit::report
