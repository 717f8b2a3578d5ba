/// @file scenario.hpp
/// @brief Scenario runner: loads a scenario description, builds the model /
///        sample / matrix / causal set it names, runs the selected check
///        suites in dependency order, and writes one JSON verdict file per
///        suite plus a summary. Scenarios may declare expected failures, so
///        "fails as predicted" is a green result.

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "dkit/causal_sets.hpp"
#include "dkit/geometry_models.hpp"

namespace dkit::scenario {

inline constexpr const char* kToolVersion = "dkit 0.1.0";

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Json, Csv };

/// The known suite names; anything else is rejected at parse time.
const std::set<std::string>& known_suites();

struct Scenario {
    std::string name;
    std::string path;       // source file, for hashing
    std::string base_dir;   // directory of the scenario file
    nlohmann::ordered_json source;
    std::vector<std::string> suites;
    nlohmann::ordered_json expect;  // per-suite expected sub-objects
    double tol = core::kDefaultTol;
    std::optional<std::uint64_t> seed;
};

/// Parse and validate; throws ParseError on malformed input. `env_seed` is
/// the DKIT_SEED fallback (seed is mandatory for stochastic sources).
Scenario parse_scenario(const std::string& path,
                        std::optional<std::uint64_t> env_seed = std::nullopt);

struct RunResult {
    int exit_code = 0;  // 0 ok, 2 parse, 3 suite crash, 4 unwritable output
    std::vector<std::string> files_written;
    nlohmann::ordered_json summary;
};

/// Execute the scenario, writing reports under out_dir.
RunResult run_scenario(const Scenario& sc, const std::string& out_dir,
                       OutputFormat format = OutputFormat::Json);

/// Ad-hoc matrix mode (`dkit matrix file.csv --suite ...`).
RunResult run_matrix(const std::string& csv_path, const std::vector<std::string>& suites,
                     const std::string& out_dir, OutputFormat format = OutputFormat::Json,
                     double tol = core::kDefaultTol);

}  // namespace dkit::scenario
