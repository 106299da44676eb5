#pragma once

#include <cstdint>
#include <vector>

#include "infoclubs/equilibrium.hpp"
#include "infoclubs/model.hpp"

namespace infoclubs {

struct SimulationResult {
  std::vector<double> per_agent_mean;    // empirical mean total payoff
  std::vector<double> per_agent_stderr;  // standard error of each mean
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

// Simulates the generative model: theta ~ N(0, 1/sigma_theta), eta_i ~
// N(0, 1/tau_i), x = theta + eta, a = B x, realized per-agent payoffs
// including link costs. Deterministic function of (inputs, seed); serves as
// an independent check on the closed-form payoffs, never as a substitute.
SimulationResult simulate(const Network& g, const StrategyCoefficients& b,
                          const GameParams& params, std::int64_t samples,
                          std::uint64_t seed);

struct DeviationLossEstimate {
  double mean = 0.0;       // empirical expected loss (accuracy + coordination)
  double std_error = 0.0;  // standard error of the mean
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

// Simulates a single sender deviating to the linear message rule
// m = slope * x_sender on every link, choosing her continuation action
// optimally, with everyone else truthful at the equilibrium profile.
// slope == 1 reproduces the sender's truthful expected loss.
DeviationLossEstimate simulate_deviation(const Network& g,
                                         const GameParams& params, int sender,
                                         double slope, std::int64_t samples,
                                         std::uint64_t seed);

}  // namespace infoclubs
