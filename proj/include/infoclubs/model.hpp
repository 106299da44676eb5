#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

#include "infoclubs/errors.hpp"

namespace infoclubs {

// Primitives of the Gaussian communication game.
//
// The unknown state theta is Gaussian with mean zero and precision
// sigma_theta. Agent i observes x_i = theta + eta_i, where eta_i is
// independent Gaussian noise with precision tau[i]. Maintaining d links costs
// cost[d]; the schedule starts at cost[0] == 0 and has weakly increasing,
// weakly convex increments. gamma weighs the coordination motive against
// accuracy in the quadratic payoff.
struct GameParams {
  double sigma_theta = 1.0;
  double gamma = 1.0;
  std::vector<double> tau;
  std::vector<double> cost;

  int n_agents() const { return static_cast<int>(tau.size()); }

  // cost.at(degree); throws ValidationError on an out-of-range degree.
  double link_cost(int degree) const;

  // Convenience for the linear schedule cost[d] = kappa * d.
  static GameParams linear_cost(double sigma_theta, double gamma,
                                std::vector<double> tau, double kappa);
};

// Returns the params unchanged if every invariant holds; otherwise throws a
// ValidationError whose code identifies the violated invariant.
GameParams validate_params(GameParams params);

// Undirected simple graph on agents 0..n-1. Immutable after construction.
class Network {
 public:
  Network(int n, std::vector<std::pair<int, int>> edges);

  static Network empty(int n) { return Network(n, {}); }
  static Network complete(int n);

  int size() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  bool has_edge(int i, int j) const;
  int degree(int i) const { return static_cast<int>(neighbors_[i].size()); }

  // Sorted neighbor list of i.
  const std::vector<int>& neighbors(int i) const { return neighbors_[i]; }

  // Sorted neighbors plus i itself: the signals available to i under
  // truthful communication.
  const std::vector<int>& closed_neighborhood(int i) const {
    return closed_neighborhoods_[i];
  }

  // Edges as given at construction, normalized to (min, max) and sorted.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  // Connected components, each sorted, ordered by smallest member.
  std::vector<std::vector<int>> components() const;

  // True iff every connected component is complete.
  bool is_clique_partition() const;

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<std::vector<int>> closed_neighborhoods_;
};

// Joint second moments of (theta, x_1, ..., x_n):
//   Var(x_l)      = 1/sigma_theta + 1/tau_l
//   Cov(x_l, x_m) = 1/sigma_theta          (l != m)
//   Cov(x_l, theta) = 1/sigma_theta
// Positive definite for any valid GameParams.
struct SignalCovariance {
  Eigen::MatrixXd signals;     // n x n covariance of x
  Eigen::VectorXd state_cov;   // Cov(x_l, theta), all equal to 1/sigma_theta
  double state_var = 0.0;      // Var(theta) = 1/sigma_theta

  static SignalCovariance from_params(const GameParams& params);
};

// Weights of the Gaussian posterior mean E[theta | x_subset] = sum w_l x_l,
// with w_l = tau_l / (sigma_theta + sum_{m in subset} tau_m). The returned
// vector is aligned with `subset`; the weights sum to S/(sigma_theta+S) < 1.
Eigen::VectorXd posterior_weights(const GameParams& params,
                                  const std::vector<int>& subset);

// Same weights scattered into an n-vector (zero off the subset).
Eigen::VectorXd embedded_posterior_weights(const GameParams& params,
                                           const std::vector<int>& subset);

// Ordered partition of agents into information clubs. Blocks are stored with
// sorted members; block order is meaningful (formation procedures emit blocks
// in descending precision order).
struct CliquePartition {
  std::vector<std::vector<int>> blocks;

  int n_agents() const;
  // Index of the block containing each agent; requires a valid partition.
  std::vector<int> block_of_agent(int n) const;
};

// Throws unless blocks are disjoint, in-range, and cover 0..n-1 exactly.
void validate_partition(const CliquePartition& partition, int n);

// The network whose components are exactly the partition's blocks, each
// fully connected.
Network clique_network(const CliquePartition& partition, int n);

}  // namespace infoclubs
