#include "infoclubs/payoffs.hpp"

namespace infoclubs {

PayoffReport exante_payoffs(const Network& g, const StrategyCoefficients& b,
                            const GameParams& params) {
  const GameParams p = validate_params(params);
  const int n = g.size();
  if (n != p.n_agents() || b.weights.rows() != n || b.weights.cols() != n) {
    throw ValidationError(ErrorCode::kDimensionMismatch,
                          "network, params, and coefficients disagree");
  }
  const SignalCovariance cov = SignalCovariance::from_params(p);

  PayoffReport report;
  report.per_agent.resize(n);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd bi = b.weights.row(i).transpose();
    const double mse = bi.dot(cov.signals * bi) - 2.0 * bi.dot(cov.state_cov) +
                       cov.state_var;

    AgentPayoff& entry = report.per_agent[i];
    entry.accuracy_loss = -mse;
    const int deg = g.degree(i);
    if (deg > 0) {
      double disagreement = 0.0;
      for (int j : g.neighbors(i)) {
        const Eigen::VectorXd diff =
            (b.weights.row(i) - b.weights.row(j)).transpose();
        disagreement += diff.dot(cov.signals * diff);
      }
      entry.coordination_loss = -(p.gamma / deg) * disagreement;
    }
    entry.link_cost = p.link_cost(deg);
    entry.total = entry.accuracy_loss + entry.coordination_loss - entry.link_cost;
    report.aggregate += entry.total;
  }
  return report;
}

double clique_payoff(const std::vector<int>& members,
                     const GameParams& params) {
  const GameParams p = validate_params(params);
  if (members.empty()) {
    throw ValidationError(ErrorCode::kEmptySubset,
                          "clique payoff of an empty set");
  }
  double pooled = p.sigma_theta;
  for (int i : members) {
    if (i < 0 || i >= p.n_agents()) {
      throw ValidationError(ErrorCode::kDimensionMismatch,
                            "clique member out of range");
    }
    pooled += p.tau[i];
  }
  return -1.0 / pooled - p.link_cost(static_cast<int>(members.size()) - 1);
}

double welfare(const CliquePartition& partition, const GameParams& params) {
  const GameParams p = validate_params(params);
  validate_partition(partition, p.n_agents());
  double total = 0.0;
  for (const auto& block : partition.blocks) {
    total += static_cast<double>(block.size()) * clique_payoff(block, p);
  }
  return total;
}

}  // namespace infoclubs
