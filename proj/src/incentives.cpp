#include "infoclubs/incentives.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace infoclubs {

// Internals work in the joint Gaussian vector z = (theta, x_1, ..., x_n);
// coordinate 0 is the state, coordinate 1+l is signal l. Every random
// quantity in the deviation problem is affine in z and in the message vector
// m, so conditional first and second moments reduce to inner products.

namespace {

Eigen::MatrixXd joint_covariance(const GameParams& params) {
  const int n = params.n_agents();
  const double prior_var = 1.0 / params.sigma_theta;
  Eigen::MatrixXd omega = Eigen::MatrixXd::Constant(n + 1, n + 1, prior_var);
  for (int l = 0; l < n; ++l) {
    omega(1 + l, 1 + l) += 1.0 / params.tau[l];
  }
  return omega;
}

}  // namespace

double DeviationProblem::interim_loss(const Eigen::VectorXd& messages,
                                      double x_sender) const {
  if (messages.size() != static_cast<Eigen::Index>(receivers.size())) {
    throw ValidationError(ErrorCode::kDimensionMismatch,
                          "one message per neighbor required");
  }
  Eigen::VectorXd point(1 + messages.size());
  point[0] = x_sender;
  point.tail(messages.size()) = messages;
  return point.dot(quad * point) + constant;
}

double DeviationProblem::expected_loss(const Eigen::VectorXd& slopes) const {
  if (slopes.size() != static_cast<Eigen::Index>(receivers.size())) {
    throw ValidationError(ErrorCode::kDimensionMismatch,
                          "one slope per neighbor required");
  }
  // With m = slope * x the whole quadratic scales with x^2.
  Eigen::VectorXd direction(1 + slopes.size());
  direction[0] = 1.0;
  direction.tail(slopes.size()) = slopes;
  return direction.dot(quad * direction) * sender_signal_var + constant;
}

Eigen::VectorXd DeviationProblem::optimal_slopes() const {
  const Eigen::Index d = static_cast<Eigen::Index>(receivers.size());
  const Eigen::MatrixXd hessian = quad.block(1, 1, d, d);
  const Eigen::VectorXd cross = quad.block(1, 0, d, 1);
  // The Hessian is positive definite at any truthful equilibrium: every
  // receiver puts strictly positive weight on the sender's signal.
  Eigen::LLT<Eigen::MatrixXd> llt(hessian);
  if (llt.info() == Eigen::Success) {
    return llt.solve(-cross);
  }
  return hessian.completeOrthogonalDecomposition().solve(-cross);
}

DeviationProblem build_deviation_problem(const Network& g,
                                         const StrategyCoefficients& b,
                                         const GameParams& params, int sender,
                                         double equilibrium_tol) {
  const GameParams p = validate_params(params);
  const int n = g.size();
  if (n != p.n_agents() || b.weights.rows() != n || b.weights.cols() != n) {
    throw ValidationError(ErrorCode::kDimensionMismatch,
                          "network, params, and coefficients disagree");
  }
  if (sender < 0 || sender >= n) {
    throw ValidationError(ErrorCode::kDimensionMismatch,
                          "sender out of range");
  }
  if (g.degree(sender) == 0) {
    throw ValidationError(ErrorCode::kIsolatedSender,
                          "an isolated agent has no messages to distort");
  }
  {
    const SignalCovariance cov = SignalCovariance::from_params(p);
    const double residual =
        action_norm(cov, best_response_map(g, p, b).weights - b.weights);
    if (!(residual <= equilibrium_tol)) {
      std::ostringstream msg;
      msg << "coefficients are not an equilibrium (best-response residual "
          << residual << ")";
      throw ValidationError(ErrorCode::kNotAnEquilibrium, msg.str());
    }
  }

  DeviationProblem problem;
  problem.sender = sender;
  problem.receivers = g.neighbors(sender);
  const int d = static_cast<int>(problem.receivers.size());
  const double gamma = p.gamma;
  const double neighbor_scale = gamma / ((1.0 + gamma) * d);

  const Eigen::MatrixXd omega = joint_covariance(p);
  const int s_idx = 1 + sender;
  const double sender_var = omega(s_idx, s_idx);
  // E[z | x_sender] = cond_mean * x_sender; V is the conditional covariance.
  const Eigen::VectorXd cond_mean = omega.col(s_idx) / sender_var;
  const Eigen::MatrixXd cond_cov =
      omega - sender_var * cond_mean * cond_mean.transpose();

  const auto& sender_nbhd = g.closed_neighborhood(sender);
  const Eigen::VectorXd post = embedded_posterior_weights(p, sender_nbhd);
  Eigen::VectorXd post_z = Eigen::VectorXd::Zero(n + 1);
  post_z.tail(n) = post;

  // Optimal continuation action, affine in (z, m). Receiver j's action uses
  // the equilibrium rule with m_j substituted for the sender's signal; its
  // conditional expectation keeps signals the sender observes and folds the
  // rest onto her posterior weights.
  Eigen::VectorXd br_z = post_z / (1.0 + gamma);
  Eigen::VectorXd br_m = Eigen::VectorXd::Zero(d);
  std::vector<Eigen::VectorXd> receiver_z(d);
  std::vector<Eigen::VectorXd> receiver_m(d);
  for (int jj = 0; jj < d; ++jj) {
    const int j = problem.receivers[jj];
    receiver_z[jj] = Eigen::VectorXd::Zero(n + 1);
    receiver_m[jj] = Eigen::VectorXd::Zero(d);
    receiver_m[jj][jj] = b.weights(j, sender);
    double outside_mass = 0.0;
    for (int l : g.closed_neighborhood(j)) {
      if (l == sender) continue;
      receiver_z[jj][1 + l] = b.weights(j, l);
      if (std::binary_search(sender_nbhd.begin(), sender_nbhd.end(), l)) {
        br_z[1 + l] += neighbor_scale * b.weights(j, l);
      } else {
        outside_mass += b.weights(j, l);
      }
    }
    br_z += neighbor_scale * outside_mass * post_z;
    br_m[jj] = neighbor_scale * b.weights(j, sender);
  }

  // Loss terms (weight, z-part, m-part): accuracy plus one coordination term
  // per receiver.
  struct Term {
    double weight;
    Eigen::VectorXd z;
    Eigen::VectorXd m;
  };
  std::vector<Term> terms;
  terms.reserve(1 + d);
  {
    Eigen::VectorXd acc_z = br_z;
    acc_z[0] -= 1.0;  // subtract theta
    terms.push_back({1.0, std::move(acc_z), br_m});
  }
  for (int jj = 0; jj < d; ++jj) {
    terms.push_back({gamma / d, br_z - receiver_z[jj], br_m - receiver_m[jj]});
  }

  problem.quad = Eigen::MatrixXd::Zero(1 + d, 1 + d);
  problem.constant = 0.0;
  for (const Term& term : terms) {
    Eigen::VectorXd profile(1 + d);
    profile[0] = term.z.dot(cond_mean);
    profile.tail(d) = term.m;
    problem.quad += term.weight * profile * profile.transpose();
    problem.constant += term.weight * term.z.dot(cond_cov * term.z);
  }
  problem.sender_signal_var = sender_var;
  problem.action_signal_coeffs = br_z.tail(n);
  problem.action_message_coeffs = br_m;
  return problem;
}

SenderDeviation optimal_deviation(const Network& g,
                                  const StrategyCoefficients& b,
                                  const GameParams& params, int sender,
                                  double equilibrium_tol) {
  const DeviationProblem problem =
      build_deviation_problem(g, b, params, sender, equilibrium_tol);
  SenderDeviation result;
  result.sender = sender;
  result.receivers = problem.receivers;
  result.slopes = problem.optimal_slopes();
  const Eigen::VectorXd truthful =
      Eigen::VectorXd::Ones(result.slopes.size());
  result.gain =
      problem.expected_loss(truthful) - problem.expected_loss(result.slopes);
  result.action_signal_coeffs = problem.action_signal_coeffs;
  result.action_message_coeffs = problem.action_message_coeffs;
  return result;
}

DeviationReport check_truthful_ic(const Network& g, const GameParams& params,
                                  IcTolerances tol) {
  if (!(tol.slope > 0.0) || !(tol.gain > 0.0)) {
    throw ValidationError(ErrorCode::kNonPositiveTolerance,
                          "IC tolerances must be positive");
  }
  const SolveResult solved = solve_truthful(g, params);

  DeviationReport report;
  report.is_truthful_ic = true;
  for (int i = 0; i < g.size(); ++i) {
    if (g.degree(i) == 0) continue;
    SenderDeviation dev =
        optimal_deviation(g, solved.coefficients, params, i);
    const double worst_slope =
        (dev.slopes.array() - 1.0).abs().maxCoeff();
    if (worst_slope > tol.slope || dev.gain > tol.gain) {
      report.is_truthful_ic = false;
    }
    report.per_sender.push_back(std::move(dev));
  }
  return report;
}

DeviationReport check_truthful_ic(const Network& g, const GameParams& params,
                                  double tol) {
  return check_truthful_ic(g, params, IcTolerances{tol, tol});
}

}  // namespace infoclubs
