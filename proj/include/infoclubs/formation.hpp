#pragma once

#include <functional>
#include <vector>

#include "infoclubs/model.hpp"

namespace infoclubs {

// Enumeration guards. Bell(12) ~ 4.2e6 partitions and 2^15 subsets are the
// largest searches run exhaustively; beyond that the operations throw
// GuardError.
inline constexpr int kMaxPartitionAgents = 12;
inline constexpr int kMaxCoalitionAgents = 15;

// Greedy assortative club construction. Agents are sorted by precision
// (descending, stable). Starting from the highest-ranked unassigned agent r,
// the block {r,...,s} is chosen to maximize
//
//   -1 / (sigma_theta + sum_{l=r..s} tau_l) - cost(s - r),
//
// ties resolved toward the smallest block; the block is closed and the
// procedure repeats on the rest. Blocks hold original agent indices and come
// out in descending precision order.
CliquePartition recursive_partition(const GameParams& params);

// True iff the blocks, in their stored order, occupy consecutive ranges of
// the descending precision order (members of equal precision may swap).
bool is_assortative(const CliquePartition& partition, const GameParams& params);

// Open interval of linear cost slopes kappa for which the greedy procedure on
// precisions (h, h, l, l) forms the two assortative pairs {h,h}, {l,l}:
//
//   lo = l / ((s+2h)(s+2h+l))
//   hi = min{ h / ((s+h)(s+2h)), l / ((s+l)(s+2l)) },   s = sigma_theta.
//
// Empty when lo >= hi. Requires h >= l > 0; h == l is reported by the same
// expressions without the strict ordering interpretation.
struct KappaInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return !(lo < hi); }
};
KappaInterval kappa_region(double h, double l, double sigma_theta);

// Visits every set partition of {0..n-1} exactly once (restricted growth
// strings, lexicographic). Throws GuardError for n > kMaxPartitionAgents.
void for_each_clique_partition(
    int n, const std::function<void(const CliquePartition&)>& visit);

std::vector<CliquePartition> all_clique_partitions(int n);

struct BlockingWitness {
  std::vector<int> coalition;   // sorted members
  double clique_value = 0.0;    // common truthful clique payoff of the coalition
  std::vector<int> improved;    // members strictly better off
};

struct BlockingReport {
  // Per agent: candidate payoff minus the agent's ideal-bound payoff. The
  // ideal bound is max over degree d of the payoff from observing the d+1
  // highest-precision signals still available when the recursive procedure
  // reaches the agent, at zero coordination loss; no feasible deviation can
  // beat it.
  std::vector<double> upper_bound_slack;
  std::vector<BlockingWitness> witnesses;
  bool in_core = false;
};

// Per-agent ideal-bound payoffs (the benchmark of the slack above). Runs at
// any n.
std::vector<double> ideal_upper_bounds(const GameParams& params);

// Core test for a truthful clique-partition outcome. Two checks:
// (1) every agent's candidate payoff reaches her ideal bound within tol, and
// (2) no coalition B can form a clique whose common truthful payoff weakly
//     improves all members and strictly improves one (exhaustive over all
//     2^n - 1 coalitions; GuardError for n > kMaxCoalitionAgents).
// in_core is true iff both hold.
BlockingReport core_check(const CliquePartition& candidate,
                          const GameParams& params, double tol = 1e-9);

struct EfficiencyFrontier {
  CliquePartition best_partition;
  double best_welfare = 0.0;
  CliquePartition core_partition;
  double core_welfare = 0.0;
  double gap = 0.0;  // best_welfare - core_welfare, >= 0 up to tolerance
};

// Welfare-maximizing clique partition versus the recursive core partition.
// Exhaustive over all partitions; GuardError for n > kMaxPartitionAgents.
EfficiencyFrontier efficiency_frontier(const GameParams& params);

}  // namespace infoclubs
