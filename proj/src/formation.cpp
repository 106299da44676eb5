#include "infoclubs/formation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "infoclubs/payoffs.hpp"

namespace infoclubs {

namespace {

struct RecursiveRun {
  CliquePartition partition;
  std::vector<double> block_value;  // common member payoff of each block
};

// Greedy pass over agents sorted by precision. Each step scans every
// endpoint for the current residual prefix; strict improvement keeps the
// smallest maximizing block.
RecursiveRun run_recursive(const GameParams& params) {
  const int n = params.n_agents();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return params.tau[a] > params.tau[b];
  });

  RecursiveRun run;
  int r = 0;
  while (r < n) {
    double best_value = -std::numeric_limits<double>::infinity();
    int best_s = r;
    double pooled = params.sigma_theta;
    for (int s = r; s < n; ++s) {
      pooled += params.tau[order[s]];
      const double value = -1.0 / pooled - params.cost[s - r];
      if (value > best_value) {
        best_value = value;
        best_s = s;
      }
    }
    std::vector<int> block(order.begin() + r, order.begin() + best_s + 1);
    std::sort(block.begin(), block.end());
    run.partition.blocks.push_back(std::move(block));
    run.block_value.push_back(best_value);
    r = best_s + 1;
  }
  return run;
}

}  // namespace

CliquePartition recursive_partition(const GameParams& params) {
  return run_recursive(validate_params(params)).partition;
}

bool is_assortative(const CliquePartition& partition,
                    const GameParams& params) {
  const GameParams p = validate_params(params);
  validate_partition(partition, p.n_agents());

  std::vector<double> sorted_tau(p.tau);
  std::sort(sorted_tau.begin(), sorted_tau.end(), std::greater<>());

  // Some ordering of the blocks must tile the descending precision sequence;
  // sorting by (max, min) precision recovers it when it exists.
  std::vector<std::vector<double>> block_taus;
  for (const auto& block : partition.blocks) {
    std::vector<double> taus;
    taus.reserve(block.size());
    for (int i : block) taus.push_back(p.tau[i]);
    std::sort(taus.begin(), taus.end(), std::greater<>());
    block_taus.push_back(std::move(taus));
  }
  std::sort(block_taus.begin(), block_taus.end(),
            [](const std::vector<double>& a, const std::vector<double>& b) {
              if (a.front() != b.front()) return a.front() > b.front();
              return a.back() > b.back();
            });

  std::size_t pos = 0;
  for (const auto& taus : block_taus) {
    for (double t : taus) {
      if (sorted_tau[pos++] != t) return false;
    }
  }
  return true;
}

KappaInterval kappa_region(double h, double l, double sigma_theta) {
  if (!(l > 0.0) || !(h >= l) || !(sigma_theta > 0.0)) {
    throw ValidationError(ErrorCode::kDimensionMismatch,
                          "kappa_region requires h >= l > 0 and positive "
                          "sigma_theta");
  }
  const double s = sigma_theta;
  KappaInterval interval;
  interval.lo = l / ((s + 2.0 * h) * (s + 2.0 * h + l));
  interval.hi = std::min(h / ((s + h) * (s + 2.0 * h)),
                         l / ((s + l) * (s + 2.0 * l)));
  return interval;
}

void for_each_clique_partition(
    int n, const std::function<void(const CliquePartition&)>& visit) {
  if (n < 1) {
    throw ValidationError(ErrorCode::kDimensionMismatch,
                          "partition enumeration needs n >= 1");
  }
  if (n > kMaxPartitionAgents) {
    std::ostringstream msg;
    msg << "partition enumeration capped at n = " << kMaxPartitionAgents
        << " (Bell-number guard), got " << n;
    throw GuardError(msg.str());
  }

  // Restricted growth strings: assign[i] picks the block of agent i and may
  // exceed the blocks used so far by at most one.
  std::vector<int> assign(n, 0);
  CliquePartition partition;
  const std::function<void(int, int)> recurse = [&](int i, int used) {
    if (i == n) {
      partition.blocks.assign(used, {});
      for (int a = 0; a < n; ++a) partition.blocks[assign[a]].push_back(a);
      visit(partition);
      return;
    }
    for (int block = 0; block <= used; ++block) {
      assign[i] = block;
      recurse(i + 1, std::max(used, block + 1));
    }
  };
  recurse(0, 0);
}

std::vector<CliquePartition> all_clique_partitions(int n) {
  std::vector<CliquePartition> out;
  for_each_clique_partition(
      n, [&](const CliquePartition& p) { out.push_back(p); });
  return out;
}

std::vector<double> ideal_upper_bounds(const GameParams& params) {
  const GameParams p = validate_params(params);
  const RecursiveRun run = run_recursive(p);
  std::vector<double> ideal(p.n_agents(), 0.0);
  for (std::size_t k = 0; k < run.partition.blocks.size(); ++k) {
    for (int i : run.partition.blocks[k]) ideal[i] = run.block_value[k];
  }
  return ideal;
}

BlockingReport core_check(const CliquePartition& candidate,
                          const GameParams& params, double tol) {
  const GameParams p = validate_params(params);
  const int n = p.n_agents();
  validate_partition(candidate, n);
  if (!(tol > 0.0)) {
    throw ValidationError(ErrorCode::kNonPositiveTolerance,
                          "core tolerance must be positive");
  }
  if (n > kMaxCoalitionAgents) {
    std::ostringstream msg;
    msg << "coalition search capped at n = " << kMaxCoalitionAgents
        << ", got " << n;
    throw GuardError(msg.str());
  }

  std::vector<double> payoff(n, 0.0);
  for (const auto& block : candidate.blocks) {
    const double value = clique_payoff(block, p);
    for (int i : block) payoff[i] = value;
  }

  BlockingReport report;
  const std::vector<double> ideal = ideal_upper_bounds(p);
  report.upper_bound_slack.resize(n);
  bool bounds_ok = true;
  for (int i = 0; i < n; ++i) {
    report.upper_bound_slack[i] = payoff[i] - ideal[i];
    if (report.upper_bound_slack[i] < -tol) bounds_ok = false;
  }

  // Every coalition deviates to its own truthful clique; all members share
  // the pooled-precision payoff.
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    double pooled = p.sigma_theta;
    int size = 0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        pooled += p.tau[i];
        ++size;
      }
    }
    const double value = -1.0 / pooled - p.cost[size - 1];
    bool all_weak = true;
    std::vector<int> improved;
    for (int i = 0; i < n && all_weak; ++i) {
      if (!(mask & (1u << i))) continue;
      if (value < payoff[i] - tol) all_weak = false;
      else if (value > payoff[i] + tol) improved.push_back(i);
    }
    if (all_weak && !improved.empty()) {
      BlockingWitness witness;
      witness.clique_value = value;
      witness.improved = std::move(improved);
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i)) witness.coalition.push_back(i);
      }
      report.witnesses.push_back(std::move(witness));
    }
  }

  report.in_core = bounds_ok && report.witnesses.empty();
  return report;
}

EfficiencyFrontier efficiency_frontier(const GameParams& params) {
  const GameParams p = validate_params(params);

  EfficiencyFrontier frontier;
  frontier.core_partition = recursive_partition(p);
  frontier.core_welfare = welfare(frontier.core_partition, p);

  double best = -std::numeric_limits<double>::infinity();
  for_each_clique_partition(p.n_agents(), [&](const CliquePartition& cand) {
    const double w = welfare(cand, p);
    if (w > best) {
      best = w;
      frontier.best_partition = cand;
    }
  });
  frontier.best_welfare = best;
  frontier.gap = frontier.best_welfare - frontier.core_welfare;
  return frontier;
}

}  // namespace infoclubs
