#include "infoclubs/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace infoclubs {

namespace {

void check_dimensions(const Network& g, const GameParams& params,
                      const StrategyCoefficients* b) {
  if (g.size() != params.n_agents()) {
    throw ValidationError(ErrorCode::kDimensionMismatch,
                          "network and params disagree on agent count");
  }
  if (b != nullptr && (b->weights.rows() != g.size() ||
                       b->weights.cols() != g.size())) {
    throw ValidationError(ErrorCode::kDimensionMismatch,
                          "coefficient matrix must be n x n");
  }
}

void check_support(const Network& g, const StrategyCoefficients& b) {
  const int n = g.size();
  for (int i = 0; i < n; ++i) {
    const auto& nbhd = g.closed_neighborhood(i);
    for (int l = 0; l < n; ++l) {
      const bool inside = std::binary_search(nbhd.begin(), nbhd.end(), l);
      if (!inside && b.weights(i, l) != 0.0) {
        std::ostringstream msg;
        msg << "coefficient (" << i << "," << l
            << ") nonzero outside the closed neighborhood";
        throw ValidationError(ErrorCode::kSupportViolation, msg.str());
      }
    }
  }
}

}  // namespace

StrategyCoefficients babbling_strategy(const GameParams& params) {
  const GameParams p = validate_params(params);
  const int n = p.n_agents();
  StrategyCoefficients b;
  b.weights = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    b.weights(i, i) = p.tau[i] / (p.sigma_theta + p.tau[i]);
  }
  return b;
}

StrategyCoefficients best_response_map(const Network& g,
                                       const GameParams& params,
                                       const StrategyCoefficients& b) {
  check_dimensions(g, params, &b);
  check_support(g, b);
  const int n = g.size();
  const double gamma = params.gamma;

  StrategyCoefficients out;
  out.weights = Eigen::MatrixXd::Zero(n, n);

  for (int i = 0; i < n; ++i) {
    const int deg = g.degree(i);
    if (deg == 0) {
      out.weights(i, i) = params.tau[i] / (params.sigma_theta + params.tau[i]);
      continue;
    }
    const auto& nbhd = g.closed_neighborhood(i);
    const Eigen::VectorXd post = embedded_posterior_weights(params, nbhd);

    Eigen::VectorXd row = post / (1.0 + gamma);
    const double neighbor_scale = gamma / ((1.0 + gamma) * deg);
    for (int j : g.neighbors(i)) {
      // E[a_j | I_i]: keep coefficients on signals i observes, fold the rest
      // onto the posterior weights (unseen signals have conditional mean
      // E[theta | I_i]).
      double outside_mass = 0.0;
      Eigen::VectorXd kept = Eigen::VectorXd::Zero(n);
      for (int l : g.closed_neighborhood(j)) {
        if (std::binary_search(nbhd.begin(), nbhd.end(), l)) {
          kept[l] = b.weights(j, l);
        } else {
          outside_mass += b.weights(j, l);
        }
      }
      row += neighbor_scale * (kept + outside_mass * post);
    }
    out.weights.row(i) = row.transpose();
  }
  return out;
}

double action_norm(const SignalCovariance& cov, const Eigen::MatrixXd& delta) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < delta.rows(); ++i) {
    const Eigen::VectorXd row = delta.row(i).transpose();
    worst = std::max(worst, std::sqrt(row.dot(cov.signals * row)));
  }
  return worst;
}

namespace {

SolveResult solve_fixed_point(const Network& g, const GameParams& params,
                              double tol) {
  SolveResult result;
  result.method = SolveMethod::kFixedPoint;
  const SignalCovariance cov = SignalCovariance::from_params(params);

  StrategyCoefficients current = babbling_strategy(params);
  // gamma/(1+gamma) < 1 bounds the number of iterations needed; the cap only
  // trips on a logic error.
  const int max_iterations = 100000;
  for (int k = 0; k < max_iterations; ++k) {
    StrategyCoefficients next = best_response_map(g, params, current);
    const double step = action_norm(cov, next.weights - current.weights);
    result.step_norms.push_back(step);
    current = std::move(next);
    ++result.iterations;
    if (step < tol) {
      result.coefficients = std::move(current);
      result.residual = action_norm(
          cov, best_response_map(g, params, result.coefficients).weights -
                   result.coefficients.weights);
      return result;
    }
  }
  throw std::logic_error("fixed-point iteration failed to contract");
}

SolveResult solve_direct(const Network& g, const GameParams& params) {
  const int n = g.size();
  const double gamma = params.gamma;

  // Stack only the support-restricted coefficients: one unknown per
  // (agent, observed signal) pair.
  std::vector<std::vector<int>> index(n);
  int dim = 0;
  for (int i = 0; i < n; ++i) {
    index[i].assign(n, -1);
    for (int l : g.closed_neighborhood(i)) index[i][l] = dim++;
  }

  Eigen::MatrixXd system = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);

  for (int i = 0; i < n; ++i) {
    const int deg = g.degree(i);
    const auto& nbhd = g.closed_neighborhood(i);
    const Eigen::VectorXd post = embedded_posterior_weights(params, nbhd);

    if (deg == 0) {
      const int row = index[i][i];
      system(row, row) = 1.0;
      rhs[row] = params.tau[i] / (params.sigma_theta + params.tau[i]);
      continue;
    }
    const double neighbor_scale = gamma / ((1.0 + gamma) * deg);
    for (int l : nbhd) {
      const int row = index[i][l];
      system(row, row) += 1.0;
      rhs[row] = post[l] / (1.0 + gamma);
      for (int j : g.neighbors(i)) {
        for (int m : g.closed_neighborhood(j)) {
          if (index[i][m] >= 0) {
            // Signal m is visible to i; the neighbor's coefficient carries
            // over directly when m == l.
            if (m == l) system(row, index[j][m]) -= neighbor_scale;
          } else {
            // Unseen signal: its coefficient mass folds onto i's posterior
            // weight for l.
            system(row, index[j][m]) -= neighbor_scale * post[l];
          }
        }
      }
    }
  }

  const Eigen::VectorXd solution = system.partialPivLu().solve(rhs);
  if (!solution.allFinite()) {
    // Cannot occur for valid params: the system is a strict contraction
    // perturbation of the identity.
    throw std::logic_error("singular first-order-condition system");
  }

  SolveResult result;
  result.method = SolveMethod::kDirect;
  result.coefficients.weights = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int l : g.closed_neighborhood(i)) {
      result.coefficients.weights(i, l) = solution[index[i][l]];
    }
  }
  const SignalCovariance cov = SignalCovariance::from_params(params);
  result.residual = action_norm(
      cov, best_response_map(g, params, result.coefficients).weights -
               result.coefficients.weights);
  return result;
}

}  // namespace

SolveResult solve_truthful(const Network& g, const GameParams& params,
                           SolveMethod method, double tol) {
  const GameParams p = validate_params(params);
  check_dimensions(g, p, nullptr);
  if (!(tol > 0.0)) {
    throw ValidationError(ErrorCode::kNonPositiveTolerance,
                          "solver tolerance must be positive");
  }
  return method == SolveMethod::kFixedPoint ? solve_fixed_point(g, p, tol)
                                            : solve_direct(g, p);
}

}  // namespace infoclubs
