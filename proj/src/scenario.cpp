#include "infoclubs/scenario.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "infoclubs/formation.hpp"
#include "infoclubs/montecarlo.hpp"
#include "infoclubs/payoffs.hpp"

namespace infoclubs {

namespace {

using nlohmann::json;

[[noreturn]] void bad_scenario(const std::string& what) {
  throw ValidationError(ErrorCode::kBadScenario, what);
}

double require_number(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number()) {
    bad_scenario(std::string("missing or non-numeric field '") + key + "'");
  }
  return doc[key].get<double>();
}

std::vector<double> require_number_array(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    bad_scenario(std::string("missing or non-array field '") + key + "'");
  }
  std::vector<double> out;
  for (const auto& v : doc[key]) {
    if (!v.is_number()) bad_scenario(std::string("non-numeric entry in '") + key + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

GameParams parse_params(const json& doc) {
  if (!doc.contains("params") || !doc["params"].is_object()) {
    bad_scenario("missing 'params' object");
  }
  const json& p = doc["params"];
  GameParams params;
  params.sigma_theta = require_number(p, "sigma_theta");
  params.gamma = require_number(p, "gamma");
  params.tau = require_number_array(p, "tau");
  if (!p.contains("cost")) bad_scenario("missing 'cost' field");
  if (p["cost"].is_object()) {
    // {"kappa": k} is shorthand for the linear schedule cost[d] = kappa * d.
    const double kappa = require_number(p["cost"], "kappa");
    params.cost.resize(params.tau.size());
    for (std::size_t d = 0; d < params.cost.size(); ++d) {
      params.cost[d] = kappa * static_cast<double>(d);
    }
  } else {
    params.cost = require_number_array(p, "cost");
  }
  return validate_params(std::move(params));
}

std::optional<Network> parse_network(const json& doc, int n) {
  if (!doc.contains("network")) return std::nullopt;
  const json& net = doc["network"];
  if (!net.is_object() || !net.contains("edges") || !net["edges"].is_array()) {
    bad_scenario("'network' must be an object with an 'edges' array");
  }
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : net["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer()) {
      bad_scenario("each edge must be a pair of agent indices");
    }
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return Network(n, std::move(edges));
}

json partition_to_json(const CliquePartition& partition) {
  json blocks = json::array();
  for (const auto& block : partition.blocks) blocks.push_back(block);
  return blocks;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

const Network& require_network(const Scenario& scenario, const char* command) {
  if (!scenario.network.has_value()) {
    bad_scenario(std::string("'") + command + "' needs a network in the scenario");
  }
  return *scenario.network;
}

json payoffs_to_json(const PayoffReport& report,
                     const std::vector<std::string>& labels) {
  json per_agent = json::array();
  for (std::size_t i = 0; i < report.per_agent.size(); ++i) {
    const AgentPayoff& a = report.per_agent[i];
    json entry{{"agent", i},
               {"accuracy_loss", a.accuracy_loss},
               {"coordination_loss", a.coordination_loss},
               {"link_cost", a.link_cost},
               {"total", a.total}};
    if (!labels.empty()) entry["label"] = labels[i];
    per_agent.push_back(std::move(entry));
  }
  return json{{"per_agent", std::move(per_agent)},
              {"aggregate", report.aggregate}};
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Scenario parse_scenario(const json& doc, ScenarioOptions base) {
  if (!doc.is_object()) bad_scenario("scenario must be a JSON object");
  Scenario scenario;
  scenario.options = base;
  scenario.params = parse_params(doc);
  scenario.network = parse_network(doc, scenario.params.n_agents());

  if (doc.contains("labels")) {
    if (!doc["labels"].is_array()) bad_scenario("'labels' must be an array");
    for (const auto& l : doc["labels"]) {
      if (!l.is_string()) bad_scenario("labels must be strings");
      scenario.labels.push_back(l.get<std::string>());
    }
    if (static_cast<int>(scenario.labels.size()) !=
        scenario.params.n_agents()) {
      bad_scenario("one label per agent required");
    }
  }

  if (doc.contains("options")) {
    const json& opt = doc["options"];
    if (!opt.is_object()) bad_scenario("'options' must be an object");
    ScenarioOptions& o = scenario.options;
    if (opt.contains("tol")) o.tol = require_number(opt, "tol");
    if (opt.contains("slope_tol")) o.slope_tol = require_number(opt, "slope_tol");
    if (opt.contains("gain_tol")) o.gain_tol = require_number(opt, "gain_tol");
    if (opt.contains("core_tol")) o.core_tol = require_number(opt, "core_tol");
    if (opt.contains("samples")) {
      if (!opt["samples"].is_number_integer()) bad_scenario("'samples' must be an integer");
      o.samples = opt["samples"].get<std::int64_t>();
    }
    if (opt.contains("seed")) {
      if (!opt["seed"].is_number_unsigned() && !opt["seed"].is_number_integer()) {
        bad_scenario("'seed' must be a non-negative integer");
      }
      o.seed = opt["seed"].get<std::uint64_t>();
    }
    if (opt.contains("method")) {
      const std::string m = opt["method"].get<std::string>();
      if (m == "direct") o.method = SolveMethod::kDirect;
      else if (m == "fixed_point") o.method = SolveMethod::kFixedPoint;
      else bad_scenario("method must be 'direct' or 'fixed_point'");
    }
  }
  return scenario;
}

Scenario load_scenario(const std::string& path, ScenarioOptions base) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open scenario file: " + path);
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& err) {
    bad_scenario(std::string("scenario is not valid JSON: ") + err.what());
  }
  return parse_scenario(doc, base);
}

json run_solve(const Scenario& scenario) {
  const Network& g = require_network(scenario, "solve");
  const ScenarioOptions& o = scenario.options;
  const SolveResult primary = solve_truthful(g, scenario.params, o.method, o.tol);
  const SolveMethod other_method = o.method == SolveMethod::kDirect
                                       ? SolveMethod::kFixedPoint
                                       : SolveMethod::kDirect;
  const SolveResult cross = solve_truthful(g, scenario.params, other_method, o.tol);
  const double agreement =
      (primary.coefficients.weights - cross.coefficients.weights)
          .cwiseAbs()
          .maxCoeff();
  const PayoffReport payoffs =
      exante_payoffs(g, primary.coefficients, scenario.params);

  json report{{"schema_version", 1},
              {"command", "solve"},
              {"method", o.method == SolveMethod::kDirect ? "direct" : "fixed_point"},
              {"tol", o.tol},
              {"coefficients", matrix_to_json(primary.coefficients.weights)},
              {"foc_residual", primary.residual},
              {"iterations", primary.iterations},
              {"method_agreement", agreement},
              {"payoffs", payoffs_to_json(payoffs, scenario.labels)}};
  if (!scenario.labels.empty()) report["labels"] = scenario.labels;
  return report;
}

json run_check_ic(const Scenario& scenario) {
  const Network& g = require_network(scenario, "check-ic");
  const ScenarioOptions& o = scenario.options;
  const DeviationReport report =
      check_truthful_ic(g, scenario.params, IcTolerances{o.slope_tol, o.gain_tol});

  json senders = json::array();
  for (const SenderDeviation& dev : report.per_sender) {
    senders.push_back(json{
        {"sender", dev.sender},
        {"receivers", dev.receivers},
        {"slopes", vector_to_json(dev.slopes)},
        {"gain", dev.gain},
        {"max_slope_deviation",
         dev.slopes.size() > 0 ? (dev.slopes.array() - 1.0).abs().maxCoeff() : 0.0},
    });
  }
  return json{{"schema_version", 1},
              {"command", "check_ic"},
              {"slope_tol", o.slope_tol},
              {"gain_tol", o.gain_tol},
              {"is_truthful_ic", report.is_truthful_ic},
              {"senders", std::move(senders)}};
}

json run_form(const Scenario& scenario) {
  const CliquePartition partition = recursive_partition(scenario.params);
  json blocks_detail = json::array();
  for (const auto& block : partition.blocks) {
    double precision_sum = 0.0;
    for (int i : block) precision_sum += scenario.params.tau[i];
    blocks_detail.push_back(json{
        {"members", block},
        {"size", block.size()},
        {"precision_sum", precision_sum},
        {"member_payoff", clique_payoff(block, scenario.params)},
    });
  }
  return json{{"schema_version", 1},
              {"command", "form"},
              {"blocks", partition_to_json(partition)},
              {"assortative", is_assortative(partition, scenario.params)},
              {"per_block", std::move(blocks_detail)},
              {"welfare", welfare(partition, scenario.params)}};
}

namespace {

// The candidate for a core check: the scenario's network when present (it
// must be a clique partition), otherwise the recursive partition.
CliquePartition core_candidate(const Scenario& scenario) {
  if (scenario.network.has_value()) {
    if (!scenario.network->is_clique_partition()) {
      bad_scenario("'core' needs a network whose components are cliques");
    }
    CliquePartition candidate;
    candidate.blocks = scenario.network->components();
    return candidate;
  }
  return recursive_partition(scenario.params);
}

}  // namespace

json run_core(const Scenario& scenario) {
  const CliquePartition candidate = core_candidate(scenario);
  const BlockingReport report =
      core_check(candidate, scenario.params, scenario.options.core_tol);

  json witnesses = json::array();
  for (const BlockingWitness& w : report.witnesses) {
    witnesses.push_back(json{{"coalition", w.coalition},
                             {"clique_value", w.clique_value},
                             {"improved", w.improved}});
  }
  return json{{"schema_version", 1},
              {"command", "core"},
              {"tol", scenario.options.core_tol},
              {"candidate_blocks", partition_to_json(candidate)},
              {"in_core", report.in_core},
              {"upper_bound_slack", report.upper_bound_slack},
              {"witnesses", std::move(witnesses)}};
}

json run_welfare(const Scenario& scenario) {
  const EfficiencyFrontier frontier = efficiency_frontier(scenario.params);
  return json{{"schema_version", 1},
              {"command", "welfare"},
              {"best_partition", partition_to_json(frontier.best_partition)},
              {"best_welfare", frontier.best_welfare},
              {"core_partition", partition_to_json(frontier.core_partition)},
              {"core_welfare", frontier.core_welfare},
              {"gap", frontier.gap}};
}

json run_simulate(const Scenario& scenario) {
  const Network& g = require_network(scenario, "simulate");
  const ScenarioOptions& o = scenario.options;
  const SolveResult solved = solve_truthful(g, scenario.params, o.method, o.tol);
  const SimulationResult sim =
      simulate(g, solved.coefficients, scenario.params, o.samples, o.seed);
  const PayoffReport analytic =
      exante_payoffs(g, solved.coefficients, scenario.params);

  json per_agent = json::array();
  for (std::size_t i = 0; i < sim.per_agent_mean.size(); ++i) {
    const double mean = sim.per_agent_mean[i];
    const double se = sim.per_agent_stderr[i];
    const double expected = analytic.per_agent[i].total;
    json entry{{"agent", i},
               {"mean", mean},
               {"std_error", se},
               {"analytic_total", expected},
               {"z_score", se > 0.0 ? (mean - expected) / se : 0.0}};
    if (!scenario.labels.empty()) entry["label"] = scenario.labels[i];
    per_agent.push_back(std::move(entry));
  }
  return json{{"schema_version", 1},
              {"command", "simulate"},
              {"samples", sim.samples},
              {"seed", sim.seed},
              {"per_agent", std::move(per_agent)}};
}

std::string render_json(const json& report) { return report.dump(2) + "\n"; }

std::string render_csv(const json& report) {
  const std::string command = report.value("command", "");
  std::ostringstream out;
  if (command == "solve") {
    out << "agent,accuracy_loss,coordination_loss,link_cost,total\n";
    for (const auto& row : report["payoffs"]["per_agent"]) {
      out << row["agent"].get<int>() << ','
          << format_double(row["accuracy_loss"].get<double>()) << ','
          << format_double(row["coordination_loss"].get<double>()) << ','
          << format_double(row["link_cost"].get<double>()) << ','
          << format_double(row["total"].get<double>()) << '\n';
    }
    return out.str();
  }
  if (command == "form") {
    out << "block,size,precision_sum,member_payoff,members\n";
    int index = 0;
    for (const auto& block : report["per_block"]) {
      out << index++ << ',' << block["size"].get<int>() << ','
          << format_double(block["precision_sum"].get<double>()) << ','
          << format_double(block["member_payoff"].get<double>()) << ',';
      const auto& members = block["members"];
      for (std::size_t k = 0; k < members.size(); ++k) {
        if (k) out << ' ';
        out << members[k].get<int>();
      }
      out << '\n';
    }
    return out.str();
  }
  if (command == "check_ic") {
    out << "sender,receiver,slope,gain\n";
    for (const auto& dev : report["senders"]) {
      const auto& receivers = dev["receivers"];
      const auto& slopes = dev["slopes"];
      for (std::size_t k = 0; k < receivers.size(); ++k) {
        out << dev["sender"].get<int>() << ',' << receivers[k].get<int>()
            << ',' << format_double(slopes[k].get<double>()) << ','
            << format_double(dev["gain"].get<double>()) << '\n';
      }
    }
    return out.str();
  }
  if (command == "simulate") {
    out << "agent,mean,std_error,analytic_total,z_score\n";
    for (const auto& row : report["per_agent"]) {
      out << row["agent"].get<int>() << ','
          << format_double(row["mean"].get<double>()) << ','
          << format_double(row["std_error"].get<double>()) << ','
          << format_double(row["analytic_total"].get<double>()) << ','
          << format_double(row["z_score"].get<double>()) << '\n';
    }
    return out.str();
  }
  throw ValidationError(ErrorCode::kBadScenario,
                        "no CSV rendering for command '" + command + "'");
}

}  // namespace infoclubs
