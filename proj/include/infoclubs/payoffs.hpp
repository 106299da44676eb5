#pragma once

#include <vector>

#include "infoclubs/equilibrium.hpp"
#include "infoclubs/model.hpp"

namespace infoclubs {

// Ex-ante expected payoff of one agent, split into the three terms of the
// stage payoff: -E[(a_i - theta)^2], -(gamma/d_i) sum_j E[(a_i - a_j)^2]
// (zero for isolated agents), and the link cost c(d_i).
struct AgentPayoff {
  double accuracy_loss = 0.0;      // <= 0
  double coordination_loss = 0.0;  // <= 0
  double link_cost = 0.0;          // >= 0
  double total = 0.0;              // accuracy + coordination - link_cost
};

struct PayoffReport {
  std::vector<AgentPayoff> per_agent;
  double aggregate = 0.0;  // sum of totals
};

// Exact Gaussian evaluation of the expected payoffs of a linear profile; no
// sampling. Uses E[(a_i-theta)^2] = b_i' Sigma b_i - 2 b_i' cov(x,theta)
// + Var(theta) and E[(a_i-a_j)^2] = (b_i-b_j)' Sigma (b_i-b_j).
PayoffReport exante_payoffs(const Network& g, const StrategyCoefficients& b,
                            const GameParams& params);

// Ex-ante payoff of each member of a truthful clique C:
//   -1 / (sigma_theta + S_C) - cost(|C|-1),  S_C = sum of member precisions.
// All members share the posterior mean, so the coordination term vanishes.
double clique_payoff(const std::vector<int>& members, const GameParams& params);

// Aggregate welfare of a truthful clique partition:
//   W = sum_C |C| * clique_payoff(C).
double welfare(const CliquePartition& partition, const GameParams& params);

}  // namespace infoclubs
