#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "infoclubs/equilibrium.hpp"
#include "infoclubs/incentives.hpp"
#include "infoclubs/model.hpp"

namespace infoclubs {

// Process exit codes shared by the CLI and its tests.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;       // I/O or unexpected failure
inline constexpr int kExitIcFail = 2;      // check-ic: truthfulness fails
inline constexpr int kExitValidation = 3;  // invalid params/scenario/request
inline constexpr int kExitGuard = 4;       // enumeration guard exceeded

struct ScenarioOptions {
  double tol = 1e-12;        // equilibrium solver tolerance
  double slope_tol = 1e-8;   // IC slope tolerance
  double gain_tol = 1e-10;   // IC gain tolerance
  double core_tol = 1e-9;    // payoff-comparison tolerance
  std::int64_t samples = 100000;
  std::uint64_t seed = 1;
  SolveMethod method = SolveMethod::kDirect;
};

// One analysis request: validated game parameters, an optional network, and
// option overrides. Parsed from a JSON file; all GameParams invariants are
// re-validated on load.
struct Scenario {
  GameParams params;
  std::optional<Network> network;
  std::vector<std::string> labels;  // empty, or one label per agent
  ScenarioOptions options;
};

// `base` supplies the option defaults (e.g. after an environment override);
// values present in the document win over it.
Scenario parse_scenario(const nlohmann::json& doc, ScenarioOptions base = {});
Scenario load_scenario(const std::string& path, ScenarioOptions base = {});

// Report builders. Each returns a JSON document with a stable schema and a
// "schema_version" field; all numeric fields round-trip losslessly.
nlohmann::json run_solve(const Scenario& scenario);
nlohmann::json run_check_ic(const Scenario& scenario);
nlohmann::json run_form(const Scenario& scenario);
nlohmann::json run_core(const Scenario& scenario);
nlohmann::json run_welfare(const Scenario& scenario);
nlohmann::json run_simulate(const Scenario& scenario);

// Canonical textual rendering (sorted keys, fixed layout): identical inputs
// produce byte-identical output.
std::string render_json(const nlohmann::json& report);

// Flat table rendering for payoff-style reports (solve, form, check-ic,
// simulate); throws ValidationError for reports without a tabular form.
std::string render_csv(const nlohmann::json& report);

}  // namespace infoclubs
