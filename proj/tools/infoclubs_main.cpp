// Command-line front end: loads a scenario file, dispatches one analysis,
// and writes a JSON (or CSV) report. Exit codes: 0 success (and check-ic
// passing), 2 check-ic failing, 3 invalid input, 4 enumeration guard
// exceeded, 1 anything else.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "infoclubs/scenario.hpp"

namespace {

using infoclubs::Scenario;
using infoclubs::ScenarioOptions;

struct CommonArgs {
  std::string scenario_path;
  std::string out_path;
  std::string format = "json";
  std::optional<double> tol;
  std::optional<std::int64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> method;
};

void add_common_options(CLI::App* sub, CommonArgs& args) {
  sub->add_option("--scenario", args.scenario_path, "Scenario JSON file")
      ->required();
  sub->add_option("--out", args.out_path,
                  "Write the report here instead of stdout");
  sub->add_option("--format", args.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--tol", args.tol, "Equilibrium solver tolerance");
  sub->add_option("--samples", args.samples, "Monte Carlo sample count");
  sub->add_option("--seed", args.seed, "Monte Carlo seed");
  sub->add_option("--method", args.method, "Equilibrium solver method")
      ->check(CLI::IsMember({"direct", "fixed_point"}));
}

Scenario load(const CommonArgs& args) {
  ScenarioOptions base;
  if (const char* env = std::getenv("INFOCLUBS_TOL")) {
    try {
      base.tol = std::stod(env);
    } catch (const std::exception&) {
      throw infoclubs::ValidationError(infoclubs::ErrorCode::kBadScenario,
                                       "INFOCLUBS_TOL is not a number");
    }
  }
  Scenario scenario = infoclubs::load_scenario(args.scenario_path, base);
  if (args.tol) scenario.options.tol = *args.tol;
  if (args.samples) scenario.options.samples = *args.samples;
  if (args.seed) scenario.options.seed = *args.seed;
  if (args.method) {
    scenario.options.method = *args.method == "direct"
                                  ? infoclubs::SolveMethod::kDirect
                                  : infoclubs::SolveMethod::kFixedPoint;
  }
  return scenario;
}

void emit(const nlohmann::json& report, const CommonArgs& args) {
  const std::string text = args.format == "csv"
                               ? infoclubs::render_csv(report)
                               : infoclubs::render_json(report);
  if (args.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(args.out_path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write report to " + args.out_path);
  }
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Linear-quadratic Gaussian communication games on networks: truthful "
      "equilibria, reporting incentives, club formation, and core stability"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string chosen;
  for (const auto& [name, description] :
       std::initializer_list<std::pair<const char*, const char*>>{
           {"solve", "Equilibrium coefficients and payoffs under truthful "
                     "communication"},
           {"check-ic", "Test whether truthful reporting is incentive "
                        "compatible"},
           {"form", "Run the greedy assortative club construction"},
           {"core", "Core-stability check of a clique partition"},
           {"welfare", "Welfare-maximizing partition vs. the stable one"},
           {"simulate", "Monte Carlo check of the analytic payoffs"}}) {
    CLI::App* sub = app.add_subcommand(name, description);
    add_common_options(sub, args);
    sub->callback([&chosen, name = std::string(name)] { chosen = name; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const Scenario scenario = load(args);
    nlohmann::json report;
    int exit_code = infoclubs::kExitOk;
    if (chosen == "solve") {
      report = infoclubs::run_solve(scenario);
    } else if (chosen == "check-ic") {
      report = infoclubs::run_check_ic(scenario);
      if (!report["is_truthful_ic"].get<bool>()) {
        exit_code = infoclubs::kExitIcFail;
      }
    } else if (chosen == "form") {
      report = infoclubs::run_form(scenario);
    } else if (chosen == "core") {
      report = infoclubs::run_core(scenario);
    } else if (chosen == "welfare") {
      report = infoclubs::run_welfare(scenario);
    } else {
      report = infoclubs::run_simulate(scenario);
    }
    emit(report, args);
    return exit_code;
  } catch (const infoclubs::ValidationError& err) {
    std::cerr << "error (" << infoclubs::error_code_name(err.code())
              << "): " << err.what() << '\n';
    return infoclubs::kExitValidation;
  } catch (const infoclubs::GuardError& err) {
    std::cerr << "error (guard): " << err.what() << '\n';
    return infoclubs::kExitGuard;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return infoclubs::kExitError;
  }
}
