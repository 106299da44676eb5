#pragma once

#include <Eigen/Dense>

#include <vector>

#include "infoclubs/equilibrium.hpp"
#include "infoclubs/model.hpp"

namespace infoclubs {

// A sender's joint deviation problem at the communication stage, with
// everyone else held at the truthful-equilibrium strategies.
//
// The sender picks one message per neighbor before seeing anything but her
// own signal; each receiver plugs the message into her equilibrium linear
// rule in place of the sender's signal; the sender then chooses her action
// optimally with perfect recall (own signal, sent messages, received truthful
// messages). Eliminating the continuation action through its first-order
// condition leaves an expected loss that is a quadratic form in
// (x_sender, messages) plus a constant from conditional variances:
//
//   L(m; x) = [x m]' quad [x m] + constant.
//
// Minimizing over m pointwise gives optimal messages linear in x_sender with
// zero intercept, m_j = slope_j * x, since prior means are zero.
struct DeviationProblem {
  int sender = 0;
  std::vector<int> receivers;  // sorted neighbor list of the sender

  Eigen::MatrixXd quad;  // (1+d) x (1+d), coordinate order (x, m_1..m_d)
  double constant = 0.0;
  double sender_signal_var = 0.0;  // E[x_sender^2]

  // Optimal continuation action a = signal_coeffs' x + message_coeffs' m.
  Eigen::VectorXd action_signal_coeffs;   // length n, support in N-bar(sender)
  Eigen::VectorXd action_message_coeffs;  // length d, aligned with receivers

  // Interim expected loss after sending messages m at signal value x.
  double interim_loss(const Eigen::VectorXd& messages, double x_sender) const;

  // Ex-ante expected loss of the linear message rule m_j = slopes_j * x.
  double expected_loss(const Eigen::VectorXd& slopes) const;

  // argmin of expected_loss; solves the d x d first-order system.
  Eigen::VectorXd optimal_slopes() const;
};

// Builds the quadratic deviation problem for `sender`. Requires the sender to
// have at least one neighbor and `b` to be the truthful equilibrium for
// (g, params) up to `equilibrium_tol` in the action norm.
DeviationProblem build_deviation_problem(const Network& g,
                                         const StrategyCoefficients& b,
                                         const GameParams& params, int sender,
                                         double equilibrium_tol = 1e-7);

struct SenderDeviation {
  int sender = 0;
  std::vector<int> receivers;
  Eigen::VectorXd slopes;  // optimal message slope per receiver
  double gain = 0.0;       // truthful expected loss - optimal expected loss
  Eigen::VectorXd action_signal_coeffs;
  Eigen::VectorXd action_message_coeffs;
};

struct IcTolerances {
  double slope = 1e-8;  // max |slope - 1| for truthfulness
  double gain = 1e-10;  // max improvement counted as zero
};

struct DeviationReport {
  std::vector<SenderDeviation> per_sender;  // every agent with degree >= 1
  bool is_truthful_ic = false;
};

// Optimal joint (messages, continuation action) deviation for one sender.
SenderDeviation optimal_deviation(const Network& g,
                                  const StrategyCoefficients& b,
                                  const GameParams& params, int sender,
                                  double equilibrium_tol = 1e-7);

// Solves the truthful equilibrium, runs optimal_deviation for every
// non-isolated sender, and aggregates. Truthful reporting is incentive
// compatible iff every slope is 1 within tol.slope and every gain is at most
// tol.gain. Vacuously true when no agent has a link.
DeviationReport check_truthful_ic(const Network& g, const GameParams& params,
                                  IcTolerances tol = {});

// Single-tolerance overload applying `tol` to both slopes and gains.
DeviationReport check_truthful_ic(const Network& g, const GameParams& params,
                                  double tol);

}  // namespace infoclubs
