#include <doctest.h>

#include "linkfdi/error.hpp"
#include "linkfdi/jumps.hpp"
#include "support.hpp"

using namespace linkfdi;

namespace {

std::vector<Eigen::VectorXd> forcing_at(const InputSignal& in, double t, int orders) {
  std::vector<Eigen::VectorXd> f;
  for (int j = 0; j < orders; ++j) {
    f.push_back(in.forcing(j, t));
  }
  return f;
}

} // namespace

TEST_CASE("P3 jump by hand") {
  const Digraph g = testsupport::path_graph(3);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
  m(1, 0) = 2.0;
  m(2, 1) = 3.0;
  const InWeighting a(g, m);
  const FaultyNetwork f = apply_failure(g, a, FailureScenario::unidirectional({0, 1}, 0.0));
  const Eigen::Vector3d x(0.7, -0.2, 0.4);
  const InputSignal none = InputSignal::none(3);
  // x3'' jumps by a32 * (-a21 x1); x3' does not jump.
  CHECK(oracle_jump(a, f.weights, none, x, 0.0, 2, 1) == doctest::Approx(0.0));
  CHECK(oracle_jump(a, f.weights, none, x, 0.0, 2, 2) == doctest::Approx(-3.0 * 2.0 * 0.7));
  CHECK(oracle_jump(a, f.weights, none, x, 0.0, 1, 1) == doctest::Approx(-2.0 * 0.7));
  CHECK(predict_jump_theorem1(g, a, f.weights, x, {0, 1}, 2, 2) == doctest::Approx(-4.2));
  CHECK(predict_jump_theorem1(g, a, f.weights, x, {0, 1}, 2, 1) == 0.0);
  CHECK_THROWS_AS(predict_jump_theorem1(g, a, f.weights, x, {0, 1}, 2, 3), UncharacterizedOrder);
  CHECK_THROWS_AS(oracle_jump(a, f.weights, none, x, 0.0, 2, 0), InvalidInput);
}

TEST_CASE("oracle jump equals dense derivative difference") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 3 + trial % 6;
    const Digraph g = testsupport::random_digraph(rng, n, 0.35, 0.0, 0.3);
    std::vector<Edge> candidates;
    for (const Edge& e : g.edges()) {
      if (!e.is_self_loop()) {
        candidates.push_back(e);
      }
    }
    if (candidates.empty()) {
      continue;
    }
    const InWeighting a = testsupport::random_weights(rng, g, 0.5, 1.5, true);
    const Edge e = candidates[rng() % candidates.size()];
    const FaultyNetwork f = apply_failure(g, a, FailureScenario::unidirectional(e, 0.3));
    const InputSignal in = testsupport::random_input(rng, n, 2);
    const Eigen::VectorXd x = testsupport::random_vector(rng, n);
    const auto forcing = forcing_at(in, 0.3, 6);
    for (int p = 0; p < n; ++p) {
      for (int k = 1; k <= 6; ++k) {
        const double expected = testsupport::dense_jump(a.matrix(), f.weights.matrix(), forcing, x, p, k);
        REQUIRE(oracle_jump(a, f.weights, in, x, 0.3, p, k) == doctest::Approx(expected).epsilon(1e-9).scale(1.0));
      }
    }
    const std::vector<NodeId> nodes{0, n - 1};
    const JumpTable table = oracle_jump_table(a, f.weights, in, x, 0.3, nodes, 4);
    CHECK(table(n - 1, 3) == doctest::Approx(oracle_jump(a, f.weights, in, x, 0.3, n - 1, 3)));
    CHECK(table(0, 0) == 0.0);
  }
}

TEST_CASE("jump table access") {
  JumpTable t({1, 4}, 3);
  t.at(4, 2) = 1.5;
  CHECK(t(4, 2) == 1.5);
  CHECK(t.contains(1));
  CHECK_FALSE(t.contains(0));
  CHECK_THROWS_AS(t(0, 1), InvalidInput);
  CHECK_THROWS_AS(t(1, 4), InvalidInput);
}

TEST_CASE("structural first-jump orders") {
  const Digraph p4 = testsupport::path_graph(4);
  const DistanceTable d = all_pairs_distances(p4);
  const auto s = FailureScenario::unidirectional({1, 2}, 0.0);
  CHECK(first_jump_order(d, s, 3, 3) == 2);
  CHECK(first_jump_order(d, s, 2, 3) == 1);
  CHECK(first_jump_order(d, s, 1, 3) == 0);
  CHECK(first_jump_order(d, s, 3, 1) == 0);
  CHECK(onset_order(d, s, 3, 3) == 2);

  // With the shortcut 1->3, the tail of 1->2 is no farther from 3 than its head.
  const Digraph g(4, {{0, 1}, {1, 2}, {2, 3}, {1, 3}});
  const DistanceTable dg = all_pairs_distances(g);
  const auto off_path = FailureScenario::unidirectional({1, 2}, 0.0);
  CHECK(first_jump_order(dg, off_path, 3, 4) == 0); // dist(1,3) = 1, dist(2,3)+1 = 2
  CHECK(onset_order(dg, off_path, 3, 4) == 2);

  const Digraph k2 = Digraph::undirected(3, {{0, 1}, {1, 2}});
  const DistanceTable dk = all_pairs_distances(k2);
  const auto bid = FailureScenario::bidirectional({0, 1}, 0.0);
  CHECK(first_jump_order(dk, bid, 2, 3) == 2);
  CHECK(first_jump_order(dk, bid, 0, 3) == 1);
  CHECK(onset_order(dk, bid, 2, 3) == 2);

  const auto node = FailureScenario::node_incoming(1, 0.0);
  CHECK(first_jump_order(d, node, 3, 3) == 3);
  CHECK(first_jump_order(d, node, 0, 3) == 0);
}

TEST_CASE("state derivatives follow the recursion") {
  std::mt19937_64 rng(5);
  const Digraph g = testsupport::random_digraph(rng, 5, 0.5);
  const InWeighting a = testsupport::random_weights(rng, g);
  const InputSignal in = testsupport::random_input(rng, 5, 1);
  const Eigen::VectorXd x = testsupport::random_vector(rng, 5);
  const Eigen::MatrixXd d = state_derivatives(a, in, x, 0.7, 3);
  CHECK(d.col(0).isApprox(x));
  const Eigen::VectorXd d1 = a.matrix() * x + in.forcing(0, 0.7);
  const Eigen::VectorXd d2 = a.matrix() * d1 + in.forcing(1, 0.7);
  CHECK((d.col(1) - d1).norm() < 1e-12);
  CHECK((d.col(2) - d2).norm() < 1e-12);
}
