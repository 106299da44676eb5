#include "infoclubs/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace infoclubs {

double GameParams::link_cost(int degree) const {
  if (degree < 0 || degree >= static_cast<int>(cost.size())) {
    std::ostringstream msg;
    msg << "degree " << degree << " outside cost schedule of length "
        << cost.size();
    throw ValidationError(ErrorCode::kDimensionMismatch, msg.str());
  }
  return cost[degree];
}

GameParams GameParams::linear_cost(double sigma_theta, double gamma,
                                   std::vector<double> tau, double kappa) {
  GameParams p;
  p.sigma_theta = sigma_theta;
  p.gamma = gamma;
  p.cost.resize(tau.size());
  for (std::size_t d = 0; d < tau.size(); ++d) {
    p.cost[d] = kappa * static_cast<double>(d);
  }
  p.tau = std::move(tau);
  return p;
}

GameParams validate_params(GameParams params) {
  if (params.tau.empty()) {
    throw ValidationError(ErrorCode::kDimensionMismatch,
                          "at least one agent required");
  }
  if (!(params.sigma_theta > 0.0) || !std::isfinite(params.sigma_theta)) {
    throw ValidationError(ErrorCode::kNonPositivePrecision,
                          "sigma_theta must be positive");
  }
  if (!(params.gamma > 0.0) || !std::isfinite(params.gamma)) {
    throw ValidationError(ErrorCode::kNonPositiveGamma,
                          "gamma must be positive");
  }
  for (std::size_t i = 0; i < params.tau.size(); ++i) {
    if (!(params.tau[i] > 0.0) || !std::isfinite(params.tau[i])) {
      std::ostringstream msg;
      msg << "tau[" << i << "] must be positive";
      throw ValidationError(ErrorCode::kNonPositivePrecision, msg.str());
    }
  }
  if (params.cost.size() != params.tau.size()) {
    throw ValidationError(
        ErrorCode::kDimensionMismatch,
        "cost schedule must cover degrees 0..n-1 (one entry per agent)");
  }
  if (params.cost[0] != 0.0) {
    throw ValidationError(ErrorCode::kCostBaseNonzero, "cost[0] must be 0");
  }
  for (std::size_t d = 0; d + 1 < params.cost.size(); ++d) {
    if (!std::isfinite(params.cost[d + 1])) {
      throw ValidationError(ErrorCode::kDecreasingCost,
                            "cost entries must be finite");
    }
    if (params.cost[d + 1] < params.cost[d]) {
      std::ostringstream msg;
      msg << "cost decreases between degrees " << d << " and " << d + 1;
      throw ValidationError(ErrorCode::kDecreasingCost, msg.str());
    }
  }
  for (std::size_t d = 0; d + 2 < params.cost.size(); ++d) {
    const double inc0 = params.cost[d + 1] - params.cost[d];
    const double inc1 = params.cost[d + 2] - params.cost[d + 1];
    if (inc1 < inc0) {
      std::ostringstream msg;
      msg << "cost increments fall from " << inc0 << " to " << inc1
          << " at degree " << d + 1;
      throw ValidationError(ErrorCode::kNonConvexCost, msg.str());
    }
  }
  return params;
}

Network::Network(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
  if (n < 1) {
    throw ValidationError(ErrorCode::kBadNetwork,
                          "network needs at least one agent");
  }
  std::set<std::pair<int, int>> seen;
  for (auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw ValidationError(ErrorCode::kBadNetwork,
                            "edge endpoint out of range");
    }
    if (a == b) {
      throw ValidationError(ErrorCode::kBadNetwork, "self-loop not allowed");
    }
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) {
      throw ValidationError(ErrorCode::kBadNetwork, "duplicate edge");
    }
  }
  edges_.assign(seen.begin(), seen.end());
  neighbors_.resize(n);
  for (const auto& [a, b] : edges_) {
    neighbors_[a].push_back(b);
    neighbors_[b].push_back(a);
  }
  closed_neighborhoods_.resize(n);
  for (int i = 0; i < n; ++i) {
    std::sort(neighbors_[i].begin(), neighbors_[i].end());
    closed_neighborhoods_[i] = neighbors_[i];
    closed_neighborhoods_[i].push_back(i);
    std::sort(closed_neighborhoods_[i].begin(),
              closed_neighborhoods_[i].end());
  }
}

Network Network::complete(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return Network(n, std::move(edges));
}

bool Network::has_edge(int i, int j) const {
  if (i == j) return false;
  const auto& nbrs = neighbors_[i];
  return std::binary_search(nbrs.begin(), nbrs.end(), j);
}

std::vector<std::vector<int>> Network::components() const {
  std::vector<int> label(n_, -1);
  std::vector<std::vector<int>> out;
  for (int root = 0; root < n_; ++root) {
    if (label[root] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<int> stack{root};
    label[root] = id;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      out[id].push_back(v);
      for (int w : neighbors_[v]) {
        if (label[w] < 0) {
          label[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

bool Network::is_clique_partition() const {
  for (const auto& comp : components()) {
    for (std::size_t a = 0; a < comp.size(); ++a) {
      for (std::size_t b = a + 1; b < comp.size(); ++b) {
        if (!has_edge(comp[a], comp[b])) return false;
      }
    }
  }
  return true;
}

SignalCovariance SignalCovariance::from_params(const GameParams& params) {
  const int n = params.n_agents();
  const double prior_var = 1.0 / params.sigma_theta;
  SignalCovariance cov;
  cov.state_var = prior_var;
  cov.state_cov = Eigen::VectorXd::Constant(n, prior_var);
  cov.signals = Eigen::MatrixXd::Constant(n, n, prior_var);
  for (int i = 0; i < n; ++i) {
    cov.signals(i, i) += 1.0 / params.tau[i];
  }
  return cov;
}

namespace {

void check_subset(const GameParams& params, const std::vector<int>& subset) {
  if (subset.empty()) {
    throw ValidationError(ErrorCode::kEmptySubset,
                          "posterior over an empty signal set");
  }
  std::set<int> seen;
  for (int l : subset) {
    if (l < 0 || l >= params.n_agents()) {
      throw ValidationError(ErrorCode::kDimensionMismatch,
                            "subset member out of range");
    }
    if (!seen.insert(l).second) {
      throw ValidationError(ErrorCode::kDimensionMismatch,
                            "subset member repeated");
    }
  }
}

}  // namespace

Eigen::VectorXd posterior_weights(const GameParams& params,
                                  const std::vector<int>& subset) {
  check_subset(params, subset);
  double total = params.sigma_theta;
  for (int l : subset) total += params.tau[l];
  Eigen::VectorXd w(subset.size());
  for (std::size_t k = 0; k < subset.size(); ++k) {
    w[static_cast<Eigen::Index>(k)] = params.tau[subset[k]] / total;
  }
  return w;
}

Eigen::VectorXd embedded_posterior_weights(const GameParams& params,
                                           const std::vector<int>& subset) {
  const Eigen::VectorXd w = posterior_weights(params, subset);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(params.n_agents());
  for (std::size_t k = 0; k < subset.size(); ++k) {
    out[subset[k]] = w[static_cast<Eigen::Index>(k)];
  }
  return out;
}

int CliquePartition::n_agents() const {
  int n = 0;
  for (const auto& block : blocks) n += static_cast<int>(block.size());
  return n;
}

std::vector<int> CliquePartition::block_of_agent(int n) const {
  validate_partition(*this, n);
  std::vector<int> owner(n, -1);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    for (int i : blocks[k]) owner[i] = static_cast<int>(k);
  }
  return owner;
}

void validate_partition(const CliquePartition& partition, int n) {
  std::vector<char> seen(n, 0);
  int covered = 0;
  for (const auto& block : partition.blocks) {
    if (block.empty()) {
      throw ValidationError(ErrorCode::kBadPartition, "empty block");
    }
    for (int i : block) {
      if (i < 0 || i >= n) {
        throw ValidationError(ErrorCode::kBadPartition,
                              "block member out of range");
      }
      if (seen[i]) {
        throw ValidationError(ErrorCode::kBadPartition,
                              "blocks overlap");
      }
      seen[i] = 1;
      ++covered;
    }
  }
  if (covered != n) {
    throw ValidationError(ErrorCode::kBadPartition,
                          "blocks do not cover every agent");
  }
}

Network clique_network(const CliquePartition& partition, int n) {
  validate_partition(partition, n);
  std::vector<std::pair<int, int>> edges;
  for (const auto& block : partition.blocks) {
    for (std::size_t a = 0; a < block.size(); ++a) {
      for (std::size_t b = a + 1; b < block.size(); ++b) {
        edges.emplace_back(block[a], block[b]);
      }
    }
  }
  return Network(n, std::move(edges));
}

}  // namespace infoclubs
