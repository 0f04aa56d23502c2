#include <doctest.h>

#include <sstream>

#include "linkfdi/error.hpp"
#include "linkfdi/jumps.hpp"
#include "linkfdi/simulate.hpp"
#include "support.hpp"

using namespace linkfdi;

TEST_CASE("RK4 matches the matrix exponential") {
  std::mt19937_64 rng(8);
  const Digraph g = with_consensus_self_loops(Digraph::undirected(4, {{0, 1}, {1, 2}, {2, 3}}));
  const InWeighting a = InWeighting::consensus(g);
  const Eigen::VectorXd x0 = testsupport::random_vector(rng, 4);
  const Trajectory traj = simulate(g, a, InputSignal::none(4), x0, 0.0, std::nullopt, 1.0);
  const Eigen::VectorXd exact = testsupport::expm(a.matrix() * 1.0) * x0;
  CHECK(traj.t.back() == doctest::Approx(1.0));
  CHECK((traj.x.back() - exact).norm() < 1e-10);
  CHECK_FALSE(traj.failure_index.has_value());
}

TEST_CASE("failure switches dynamics at the snapped instant") {
  std::mt19937_64 rng(9);
  const Digraph g = testsupport::path_graph(3);
  const InWeighting a = testsupport::random_weights(rng, g);
  const Eigen::VectorXd x0 = testsupport::random_vector(rng, 3);
  const auto s = FailureScenario::unidirectional({0, 1}, 0.50004);
  const Trajectory traj = simulate(g, a, InputSignal::none(3), x0, 0.0, s, 1.0);
  REQUIRE(traj.failure_index.has_value());
  CHECK(traj.failure_time() == doctest::Approx(0.5));
  const FaultyNetwork f = apply_failure(g, a, s);
  const Eigen::VectorXd expected =
      testsupport::expm(f.weights.matrix() * 0.5) * testsupport::expm(a.matrix() * 0.5) * x0;
  CHECK((traj.x.back() - expected).norm() < 1e-10);
  CHECK_FALSE(traj.post_failure(*traj.failure_index));
  CHECK(traj.post_failure(*traj.failure_index + 1));
}

TEST_CASE("numeric jump estimate agrees with the oracle") {
  std::mt19937_64 rng(10);
  const Digraph g = testsupport::path_graph(3);
  const InWeighting a = testsupport::random_weights(rng, g);
  const InputSignal in = testsupport::random_input(rng, 3, 1);
  const auto s = FailureScenario::unidirectional({0, 1}, 0.4);
  const Trajectory traj = simulate(g, a, in, testsupport::random_vector(rng, 3), 0.0, s, 0.8);
  const FaultyNetwork f = apply_failure(g, a, s);
  for (int k = 1; k <= 3; ++k) {
    const double oracle = oracle_jump(a, f.weights, in, traj.state_at_failure(), traj.failure_time(), 2, k);
    CHECK(numeric_jump_estimate(traj, a, f.weights, in, 2, k) == doctest::Approx(oracle).epsilon(1e-12));
  }
}

TEST_CASE("trajectory CSV round trip") {
  const Digraph g = testsupport::path_graph(2);
  const InWeighting a = InWeighting::unit(g);
  const auto s = FailureScenario::unidirectional({0, 1}, 0.01);
  const Trajectory traj = simulate(g, a, InputSignal::none(2), Eigen::Vector2d(1.0, 0.0), 0.0, s, 0.02, 0.005);
  std::stringstream io;
  write_trajectory_csv(io, traj);
  const Trajectory back = read_trajectory_csv(io);
  REQUIRE(back.samples() == traj.samples());
  CHECK(back.failure_index == traj.failure_index);
  CHECK((back.x.back() - traj.x.back()).norm() < 1e-15);

  std::istringstream bad("t,x1,post_failure\n0,1,0\n0.1,oops,0\n");
  try {
    read_trajectory_csv(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("simulation errors") {
  const Digraph g = testsupport::path_graph(2);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(1, 0) = 1.0;
  const Digraph looped(2, {{0, 1}, {0, 0}});
  Eigen::MatrixXd blow = Eigen::MatrixXd::Zero(2, 2);
  blow(0, 0) = 800.0;
  blow(1, 0) = 1.0;
  CHECK_THROWS_AS(simulate(looped, InWeighting(looped, blow), InputSignal::none(2), Eigen::Vector2d(1, 1), 0.0,
                           std::nullopt, 5.0),
                  SimulationDiverged);
  CHECK_THROWS_AS(simulate(g, InWeighting(g, m), InputSignal::none(2), Eigen::Vector2d(1, 1), 1.0, std::nullopt, 0.5),
                  InvalidInput);
}
