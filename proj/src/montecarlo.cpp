#include "infoclubs/montecarlo.hpp"

#include <cmath>

#include "infoclubs/incentives.hpp"
#include "infoclubs/rng.hpp"

namespace infoclubs {

namespace {

// Running mean and scaled variance (Welford).
struct Accumulator {
  double mean = 0.0;
  double m2 = 0.0;
  std::int64_t count = 0;

  void add(double value) {
    ++count;
    const double delta = value - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (value - mean);
  }

  double std_error() const {
    if (count < 2) return 0.0;
    const double variance = m2 / static_cast<double>(count - 1);
    return std::sqrt(variance / static_cast<double>(count));
  }
};

void check_samples(std::int64_t samples) {
  if (samples < 1) {
    throw ValidationError(ErrorCode::kDimensionMismatch,
                          "at least one sample required");
  }
}

}  // namespace

SimulationResult simulate(const Network& g, const StrategyCoefficients& b,
                          const GameParams& params, std::int64_t samples,
                          std::uint64_t seed) {
  const GameParams p = validate_params(params);
  const int n = g.size();
  if (n != p.n_agents() || b.weights.rows() != n || b.weights.cols() != n) {
    throw ValidationError(ErrorCode::kDimensionMismatch,
                          "network, params, and coefficients disagree");
  }
  check_samples(samples);

  const CounterRng rng(seed);
  const double theta_scale = 1.0 / std::sqrt(p.sigma_theta);
  Eigen::VectorXd noise_scale(n);
  for (int i = 0; i < n; ++i) noise_scale[i] = 1.0 / std::sqrt(p.tau[i]);

  std::vector<Accumulator> acc(n);
  Eigen::VectorXd x(n);
  for (std::int64_t s = 0; s < samples; ++s) {
    const std::uint64_t si = static_cast<std::uint64_t>(s);
    const double theta = theta_scale * rng.normal(si, 0);
    for (int i = 0; i < n; ++i) {
      x[i] = theta + noise_scale[i] * rng.normal(si, 1 + static_cast<std::uint64_t>(i));
    }
    const Eigen::VectorXd a = b.weights * x;
    for (int i = 0; i < n; ++i) {
      double payoff = -(a[i] - theta) * (a[i] - theta);
      const int deg = g.degree(i);
      if (deg > 0) {
        double disagreement = 0.0;
        for (int j : g.neighbors(i)) {
          disagreement += (a[i] - a[j]) * (a[i] - a[j]);
        }
        payoff -= p.gamma / deg * disagreement;
      }
      payoff -= p.cost[deg];
      acc[i].add(payoff);
    }
  }

  SimulationResult result;
  result.samples = samples;
  result.seed = seed;
  result.per_agent_mean.resize(n);
  result.per_agent_stderr.resize(n);
  for (int i = 0; i < n; ++i) {
    result.per_agent_mean[i] = acc[i].mean;
    result.per_agent_stderr[i] = acc[i].std_error();
  }
  return result;
}

DeviationLossEstimate simulate_deviation(const Network& g,
                                         const GameParams& params, int sender,
                                         double slope, std::int64_t samples,
                                         std::uint64_t seed) {
  const GameParams p = validate_params(params);
  check_samples(samples);
  const SolveResult solved = solve_truthful(g, p);
  const DeviationProblem problem =
      build_deviation_problem(g, solved.coefficients, p, sender);
  const Eigen::MatrixXd& b = solved.coefficients.weights;
  const int n = g.size();
  const int d = static_cast<int>(problem.receivers.size());

  const CounterRng rng(seed);
  const double theta_scale = 1.0 / std::sqrt(p.sigma_theta);
  Eigen::VectorXd noise_scale(n);
  for (int i = 0; i < n; ++i) noise_scale[i] = 1.0 / std::sqrt(p.tau[i]);

  Accumulator acc;
  Eigen::VectorXd x(n);
  for (std::int64_t s = 0; s < samples; ++s) {
    const std::uint64_t si = static_cast<std::uint64_t>(s);
    const double theta = theta_scale * rng.normal(si, 0);
    for (int i = 0; i < n; ++i) {
      x[i] = theta + noise_scale[i] * rng.normal(si, 1 + static_cast<std::uint64_t>(i));
    }
    const double message = slope * x[sender];

    // Sender's optimal continuation action given her signals and the sent
    // messages; receivers plug the message into their equilibrium rules.
    double action = problem.action_signal_coeffs.dot(x) +
                    problem.action_message_coeffs.sum() * message;
    double loss = (action - theta) * (action - theta);
    double disagreement = 0.0;
    for (int jj = 0; jj < d; ++jj) {
      const int j = problem.receivers[jj];
      const double receiver_action =
          b.row(j).dot(x) + b(j, sender) * (message - x[sender]);
      disagreement += (action - receiver_action) * (action - receiver_action);
    }
    loss += p.gamma / d * disagreement;
    acc.add(loss);
  }

  DeviationLossEstimate estimate;
  estimate.mean = acc.mean;
  estimate.std_error = acc.std_error();
  estimate.samples = samples;
  estimate.seed = seed;
  return estimate;
}

}  // namespace infoclubs
