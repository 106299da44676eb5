#include <doctest.h>

#include <Eigen/Cholesky>

#include <functional>
#include <random>

#include "infoclubs/model.hpp"
#include "test_support.hpp"

using namespace infoclubs;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ValidationError& err) {
    return err.code();
  }
  FAIL("expected a ValidationError");
  return ErrorCode::kBadScenario;
}

}  // namespace

TEST_CASE("validate_params accepts the three-agent linear-cost instance") {
  GameParams p;
  p.sigma_theta = 1.0;
  p.gamma = 1.0;
  p.tau = {1.0, 1.0, 1.0};
  p.cost = {0.0, 0.05, 0.10};
  CHECK_NOTHROW(validate_params(p));
}

TEST_CASE("validate_params rejects each invariant violation with its own code") {
  GameParams base;
  base.sigma_theta = 1.0;
  base.gamma = 1.0;
  base.tau = {1.0, 1.0, 1.0};
  base.cost = {0.0, 0.1, 0.2};

  GameParams p = base;
  p.sigma_theta = 0.0;
  CHECK(code_of([&] { validate_params(p); }) == ErrorCode::kNonPositivePrecision);

  p = base;
  p.tau[1] = -2.0;
  CHECK(code_of([&] { validate_params(p); }) == ErrorCode::kNonPositivePrecision);

  p = base;
  p.gamma = 0.0;
  CHECK(code_of([&] { validate_params(p); }) == ErrorCode::kNonPositiveGamma);

  p = base;
  p.cost = {0.1, 0.2, 0.3};
  CHECK(code_of([&] { validate_params(p); }) == ErrorCode::kCostBaseNonzero);

  p = base;
  p.cost = {0.0, -0.1, 0.0};
  CHECK(code_of([&] { validate_params(p); }) == ErrorCode::kDecreasingCost);

  // Increments fall from 0.3 to 0.1.
  p = base;
  p.cost = {0.0, 0.3, 0.4};
  CHECK(code_of([&] { validate_params(p); }) == ErrorCode::kNonConvexCost);

  p = base;
  p.cost = {0.0, 0.1};
  CHECK(code_of([&] { validate_params(p); }) == ErrorCode::kDimensionMismatch);
}

TEST_CASE("posterior weights match hand-computed Gaussian updates") {
  GameParams p;
  p.sigma_theta = 1.0;
  p.gamma = 1.0;
  p.tau = {1.0, 1.0, 1.0};
  p.cost = {0.0, 0.0, 0.0};

  SUBCASE("two unit signals each get weight 1/3") {
    const Eigen::VectorXd w = posterior_weights(p, {0, 1});
    REQUIRE(w.size() == 2);
    CHECK(w[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(w[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }

  SUBCASE("a single unit signal gets weight 1/2") {
    const Eigen::VectorXd w = posterior_weights(p, {2});
    CHECK(w[0] == doctest::Approx(0.5).epsilon(1e-12));
  }

  SUBCASE("heterogeneous precisions split proportionally") {
    p.tau = {4.0, 1.0};
    p.cost = {0.0, 0.0};
    const Eigen::VectorXd w = posterior_weights(p, {0, 1});
    CHECK(w[0] == doctest::Approx(4.0 / 6.0).epsilon(1e-12));
    CHECK(w[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  }

  SUBCASE("empty subset is rejected") {
    CHECK(code_of([&] { posterior_weights(p, {}); }) == ErrorCode::kEmptySubset);
  }
}

TEST_CASE("posterior weights sum to S/(sigma+S) on random subsets") {
  std::mt19937 rng(91);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const GameParams p = test_support::random_params(n, rng);
    std::vector<int> subset;
    for (int i = 0; i < n; ++i) {
      if (rng() % 2) subset.push_back(i);
    }
    if (subset.empty()) subset.push_back(0);
    double s = 0.0;
    for (int i : subset) s += p.tau[i];
    const Eigen::VectorXd w = posterior_weights(p, subset);
    CHECK(w.sum() == doctest::Approx(s / (p.sigma_theta + s)).epsilon(1e-12));
    CHECK(w.sum() < 1.0);
  }
}

TEST_CASE("signal covariance has the stated entries and is positive definite") {
  std::mt19937 rng(17);
  const GameParams p = test_support::random_params(5, rng);
  const SignalCovariance cov = SignalCovariance::from_params(p);
  const double prior_var = 1.0 / p.sigma_theta;
  for (int i = 0; i < 5; ++i) {
    CHECK(cov.signals(i, i) ==
          doctest::Approx(prior_var + 1.0 / p.tau[i]).epsilon(1e-14));
    CHECK(cov.state_cov[i] == doctest::Approx(prior_var).epsilon(1e-14));
    for (int j = 0; j < 5; ++j) {
      if (i != j) {
        CHECK(cov.signals(i, j) == doctest::Approx(prior_var).epsilon(1e-14));
      }
    }
  }
  CHECK(cov.state_var == doctest::Approx(prior_var).epsilon(1e-14));
  const Eigen::LLT<Eigen::MatrixXd> llt(cov.signals);
  CHECK(llt.info() == Eigen::Success);
}

TEST_CASE("network validation and queries") {
  CHECK_THROWS_AS(Network(3, {{0, 0}}), ValidationError);
  CHECK_THROWS_AS(Network(3, {{0, 3}}), ValidationError);
  CHECK_THROWS_AS(Network(3, {{0, 1}, {1, 0}}), ValidationError);
  CHECK_THROWS_AS(Network(0, {}), ValidationError);

  const Network line(3, {{0, 1}, {1, 2}});
  CHECK(line.degree(0) == 1);
  CHECK(line.degree(1) == 2);
  CHECK(line.closed_neighborhood(0) == std::vector<int>{0, 1});
  CHECK(line.closed_neighborhood(1) == std::vector<int>{0, 1, 2});
  CHECK(line.has_edge(1, 0));
  CHECK(!line.has_edge(0, 2));

  SUBCASE("a line is not a clique partition, cliques and singletons are") {
    CHECK(!line.is_clique_partition());
    CHECK(Network::complete(4).is_clique_partition());
    CHECK(Network::empty(5).is_clique_partition());
    CHECK(Network(4, {{0, 1}, {2, 3}}).is_clique_partition());
    CHECK(!Network(4, {{0, 1}, {1, 2}, {2, 3}}).is_clique_partition());
  }

  SUBCASE("components come back sorted") {
    const Network g(5, {{3, 1}, {4, 2}});
    const auto comps = g.components();
    REQUIRE(comps.size() == 3);
    CHECK(comps[0] == std::vector<int>{0});
    CHECK(comps[1] == std::vector<int>{1, 3});
    CHECK(comps[2] == std::vector<int>{2, 4});
  }
}

TEST_CASE("partition validation catches overlap and gaps") {
  CliquePartition ok;
  ok.blocks = {{0, 1}, {2}};
  CHECK_NOTHROW(validate_partition(ok, 3));

  CliquePartition overlap;
  overlap.blocks = {{0, 1}, {1, 2}};
  CHECK(code_of([&] { validate_partition(overlap, 3); }) ==
        ErrorCode::kBadPartition);

  CliquePartition incomplete;
  incomplete.blocks = {{0, 1}};
  CHECK(code_of([&] { validate_partition(incomplete, 3); }) ==
        ErrorCode::kBadPartition);

  const Network g = clique_network(ok, 3);
  CHECK(g.has_edge(0, 1));
  CHECK(!g.has_edge(0, 2));
  CHECK(g.is_clique_partition());
}
