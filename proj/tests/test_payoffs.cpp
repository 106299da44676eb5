#include <doctest.h>

#include <random>

#include "infoclubs/payoffs.hpp"
#include "test_support.hpp"

using namespace infoclubs;

namespace {

GameParams four_agent_params(double kappa = 0.05) {
  return GameParams::linear_cost(1.0, 1.0, {4.0, 4.0, 1.0, 1.0}, kappa);
}

}  // namespace

TEST_CASE("clique payoff closed form") {
  const GameParams p = four_agent_params();

  // High-precision pair: -1/9 - 0.05.
  CHECK(clique_payoff({0, 1}, p) ==
        doctest::Approx(-1.0 / 9.0 - 0.05).epsilon(1e-12));
  // Low-precision pair: -1/3 - 0.05.
  CHECK(clique_payoff({2, 3}, p) ==
        doctest::Approx(-1.0 / 3.0 - 0.05).epsilon(1e-12));
  // Singletons pay no link cost.
  CHECK(clique_payoff({2}, p) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK_THROWS_AS(clique_payoff({}, p), ValidationError);
}

TEST_CASE("welfare of the benchmark four-agent partitions") {
  const GameParams p = four_agent_params();

  CliquePartition assortative;
  assortative.blocks = {{0, 1}, {2, 3}};
  CHECK(welfare(assortative, p) ==
        doctest::Approx(-2.0 / 9.0 - 2.0 / 3.0 - 4 * 0.05).epsilon(1e-12));

  CliquePartition mixed;
  mixed.blocks = {{0, 2}, {1, 3}};
  CHECK(welfare(mixed, p) ==
        doctest::Approx(-4.0 / 6.0 - 4 * 0.05).epsilon(1e-12));

  CliquePartition bad;
  bad.blocks = {{0, 1}, {1, 2, 3}};
  CHECK_THROWS_AS(welfare(bad, p), ValidationError);
}

TEST_CASE("two isolated unit agents lose exactly their posterior variance") {
  GameParams p;
  p.sigma_theta = 1.0;
  p.gamma = 1.0;
  p.tau = {1.0, 1.0};
  p.cost = {0.0, 0.0};
  CliquePartition singletons;
  singletons.blocks = {{0}, {1}};
  CHECK(welfare(singletons, p) == doctest::Approx(-1.0).epsilon(1e-12));

  const PayoffReport report =
      exante_payoffs(Network::empty(2), babbling_strategy(p), p);
  for (const AgentPayoff& a : report.per_agent) {
    CHECK(a.total == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(a.coordination_loss == 0.0);
    CHECK(a.link_cost == 0.0);
  }
}

TEST_CASE("line equilibrium payoffs decompose as expected") {
  GameParams p;
  p.sigma_theta = 1.0;
  p.gamma = 1.0;
  p.tau = {1.0, 1.0, 1.0};
  p.cost = {0.0, 0.0, 0.0};
  const Network line(3, {{0, 1}, {1, 2}});
  const SolveResult r = solve_truthful(line, p);
  const PayoffReport report = exante_payoffs(line, r.coefficients, p);

  // Quadratic-form evaluation of the known rational equilibrium.
  CHECK(report.per_agent[0].total == doctest::Approx(-0.39).epsilon(1e-9));
  CHECK(report.per_agent[1].total == doctest::Approx(-0.315).epsilon(1e-9));
  CHECK(report.per_agent[2].total == doctest::Approx(-0.39).epsilon(1e-9));
  for (const AgentPayoff& a : report.per_agent) {
    CHECK(a.accuracy_loss <= 0.0);
    CHECK(a.coordination_loss < 0.0);  // strict disagreement on the line
    CHECK(a.total ==
          doctest::Approx(a.accuracy_loss + a.coordination_loss - a.link_cost)
              .epsilon(1e-14));
  }
  CHECK(report.aggregate == doctest::Approx(-1.095).epsilon(1e-9));
}

TEST_CASE("closed form matches the full pipeline on random cliques") {
  std::mt19937 rng(404);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const GameParams p = test_support::random_params(n, rng);
    const CliquePartition partition =
        test_support::random_clique_partition(n, rng);
    const Network g = clique_network(partition, n);
    const SolveResult r = solve_truthful(g, p);
    const PayoffReport report = exante_payoffs(g, r.coefficients, p);
    for (const auto& block : partition.blocks) {
      const double expected = clique_payoff(block, p);
      for (int i : block) {
        CHECK(report.per_agent[i].total ==
              doctest::Approx(expected).epsilon(1e-9));
        // Identical actions within the clique: no disagreement.
        CHECK(std::abs(report.per_agent[i].coordination_loss) < 1e-12);
      }
    }
  }
}

TEST_CASE("spreading precision across cliques beats concentrating it") {
  // Convexity of 1/(sigma+S): the mixed pairing dominates the assortative
  // one at equal link costs, for every h > l.
  for (double sigma : {0.5, 1.0, 2.0}) {
    for (double h = 1.0; h <= 5.0; h += 1.0) {
      for (double l = 0.25; l < h; l += 0.5) {
        GameParams p = GameParams::linear_cost(sigma, 1.0, {h, h, l, l}, 0.01);
        CliquePartition assortative, mixed;
        assortative.blocks = {{0, 1}, {2, 3}};
        mixed.blocks = {{0, 2}, {1, 3}};
        CHECK(welfare(mixed, p) > welfare(assortative, p));
      }
    }
  }
}

TEST_CASE("pooling more precision weakly improves the accuracy term") {
  std::mt19937 rng(77);
  const GameParams p = test_support::random_params(6, rng, /*zero_cost=*/true);
  std::vector<int> clique;
  double previous = -1.0 / p.sigma_theta;
  for (int i = 0; i < 6; ++i) {
    clique.push_back(i);
    const double value = clique_payoff(clique, p);
    CHECK(value >= previous);
    previous = value;
  }
}

TEST_CASE("dimension mismatches are rejected") {
  GameParams p;
  p.sigma_theta = 1.0;
  p.gamma = 1.0;
  p.tau = {1.0, 1.0};
  p.cost = {0.0, 0.0};
  StrategyCoefficients b;
  b.weights = Eigen::MatrixXd::Zero(3, 3);
  CHECK_THROWS_AS(exante_payoffs(Network::empty(2), b, p), ValidationError);
}
