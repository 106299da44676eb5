#pragma once

#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "infoclubs/incentives.hpp"
#include "infoclubs/model.hpp"

namespace test_support {

// Valid random game parameters: positive precisions, positive gamma, and a
// weakly convex cost schedule built from non-decreasing increments.
inline infoclubs::GameParams random_params(int n, std::mt19937& rng,
                                           bool zero_cost = false) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  infoclubs::GameParams p;
  p.sigma_theta = 0.4 + 1.8 * unif(rng);
  p.gamma = 0.2 + 3.0 * unif(rng);
  p.tau.resize(n);
  for (int i = 0; i < n; ++i) p.tau[i] = 0.3 + 4.7 * unif(rng);
  p.cost.assign(n, 0.0);
  if (!zero_cost) {
    double increment = 0.03 * unif(rng);
    const double growth = 0.03 * unif(rng);
    for (int d = 1; d < n; ++d) {
      p.cost[d] = p.cost[d - 1] + increment;
      increment += growth;
    }
  }
  return p;
}

inline infoclubs::Network random_network(int n, double density,
                                         std::mt19937& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (unif(rng) < density) edges.emplace_back(i, j);
    }
  }
  return infoclubs::Network(n, std::move(edges));
}

// Uniformly structured random set partition via a random restricted growth
// string.
inline infoclubs::CliquePartition random_clique_partition(int n,
                                                          std::mt19937& rng) {
  infoclubs::CliquePartition partition;
  int used = 0;
  std::vector<int> assign(n);
  for (int i = 0; i < n; ++i) {
    std::uniform_int_distribution<int> pick(0, used);
    assign[i] = pick(rng);
    if (assign[i] == used) ++used;
  }
  partition.blocks.assign(used, {});
  for (int i = 0; i < n; ++i) partition.blocks[assign[i]].push_back(i);
  return partition;
}

// Independent oracle for message deviations: minimize the analytic expected
// loss over slope vectors by full-grid search with repeated refinement around
// the incumbent. Handles the 1-D and 2-D cases arising on networks with up to
// three agents; resolution after eight rounds is far below 1e-6.
inline Eigen::VectorXd grid_minimize_slopes(
    const infoclubs::DeviationProblem& problem) {
  const int d = static_cast<int>(problem.receivers.size());
  Eigen::VectorXd center = Eigen::VectorXd::Ones(d);
  Eigen::VectorXd best = center;
  double span = 4.0;  // initial bracket around truthful reporting
  const int points = 41;
  for (int round = 0; round < 8; ++round) {
    double best_loss = std::numeric_limits<double>::infinity();
    Eigen::VectorXd probe(d);
    const double step = span / (points - 1);
    if (d == 1) {
      for (int a = 0; a < points; ++a) {
        probe[0] = center[0] - span / 2 + a * step;
        const double loss = problem.expected_loss(probe);
        if (loss < best_loss) {
          best_loss = loss;
          best = probe;
        }
      }
    } else {
      for (int a = 0; a < points; ++a) {
        for (int b = 0; b < points; ++b) {
          probe[0] = center[0] - span / 2 + a * step;
          probe[1] = center[1] - span / 2 + b * step;
          const double loss = problem.expected_loss(probe);
          if (loss < best_loss) {
            best_loss = loss;
            best = probe;
          }
        }
      }
    }
    center = best;
    span = 4.0 * step;
  }
  return best;
}

}  // namespace test_support
