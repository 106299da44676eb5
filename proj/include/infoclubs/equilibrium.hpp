#pragma once

#include <Eigen/Dense>

#include <vector>

#include "infoclubs/model.hpp"

namespace infoclubs {

// Linear action profile a_i = sum_l B(i,l) x_l. Under truthful communication
// agent i only sees signals in her closed neighborhood, so B(i,l) == 0
// whenever l is outside it (the support restriction).
struct StrategyCoefficients {
  Eigen::MatrixXd weights;

  int n_agents() const { return static_cast<int>(weights.rows()); }
};

enum class SolveMethod { kFixedPoint, kDirect };

// Action profile of the uninformative-messages equilibrium: every agent
// conditions on her own signal only, so B = diag(tau_i / (sigma_theta +
// tau_i)) regardless of the network.
StrategyCoefficients babbling_strategy(const GameParams& params);

// One application of the best-response operator under truthful communication.
// For a connected agent the first-order condition is
//
//   a_i = 1/(1+gamma) E[theta | I_i]
//       + gamma/((1+gamma) d_i) sum_{j in N_i} E[a_j | I_i],
//
// where I_i is the closed-neighborhood signal set; an isolated agent plays
// E[theta | x_i]. Conditioning a neighbor's action on I_i keeps coefficients
// on signals inside the neighborhood and folds the remaining coefficient mass
// onto the posterior weights, since E[x_l | I_i] = E[theta | I_i] for unseen
// signals. The result satisfies the support restriction whenever the input
// does.
StrategyCoefficients best_response_map(const Network& g,
                                       const GameParams& params,
                                       const StrategyCoefficients& b);

// Distance used for convergence: max_i sqrt(d_i' Sigma d_i) over rows d_i of
// `delta`, i.e. the largest L2 change in any agent's action.
double action_norm(const SignalCovariance& cov, const Eigen::MatrixXd& delta);

struct SolveResult {
  StrategyCoefficients coefficients;
  SolveMethod method = SolveMethod::kDirect;
  int iterations = 0;          // 0 for the direct method
  double residual = 0.0;       // action_norm of T(B*) - B*
  std::vector<double> step_norms;  // successive fixed-point step sizes
};

// Unique linear Bayesian equilibrium of the action stage under truthful
// communication. kFixedPoint iterates the best-response operator from the
// babbling diagonal; the operator is a contraction with modulus
// gamma/(1+gamma), so convergence is guaranteed. kDirect assembles the
// first-order conditions over the support-restricted coefficients (dimension
// sum_i |closed_neighborhood(i)|) and solves them in one shot. Both methods
// agree to solver precision.
SolveResult solve_truthful(const Network& g, const GameParams& params,
                           SolveMethod method = SolveMethod::kDirect,
                           double tol = 1e-12);

}  // namespace infoclubs
