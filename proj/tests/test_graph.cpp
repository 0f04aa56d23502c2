#include <doctest.h>

#include <sstream>

#include "linkfdi/error.hpp"
#include "linkfdi/graph.hpp"
#include "linkfdi/graph_io.hpp"
#include "support.hpp"

using namespace linkfdi;

TEST_CASE("digraph construction and queries") {
  const Digraph g(3, {{0, 1}, {1, 2}, {2, 1}, {1, 1}}, {{1, 2}});
  CHECK(g.size() == 3);
  CHECK(g.edge_count() == 4);
  CHECK(g.has_edge(0, 1));
  CHECK_FALSE(g.has_edge(1, 0));
  CHECK(g.is_bidirectional({1, 2}));
  CHECK(g.is_bidirectional({2, 1}));
  CHECK_FALSE(g.is_bidirectional({0, 1}));
  CHECK(g.self_loops().size() == 1);
  CHECK(g.in_edges(1).size() == 3);

  const Digraph h = g.without(std::vector<Edge>{{1, 2}});
  CHECK_FALSE(h.has_edge(1, 2));
  CHECK_FALSE(h.is_bidirectional({2, 1}));
}

TEST_CASE("digraph rejects bad input") {
  CHECK_THROWS_AS(Digraph(2, {{0, 2}}), InvalidInput);
  CHECK_THROWS_AS(Digraph(2, {{0, 1}, {0, 1}}), InvalidInput);
  CHECK_THROWS_AS(Digraph(2, {{0, 1}}, {{0, 1}}), InvalidInput);
  CHECK_THROWS_AS(Digraph(2, {{0, 0}}, {{0, 0}}), InvalidInput);
}

TEST_CASE("in-weighting sparsity") {
  const Digraph g(2, {{0, 1}});
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  a(1, 0) = 2.0;
  CHECK_NOTHROW(InWeighting(g, a));
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(InWeighting(g, a), InvalidInput);
  CHECK_THROWS_AS(InWeighting(g, Eigen::MatrixXd::Zero(3, 3)), InvalidInput);

  const Digraph looped = with_consensus_self_loops(Digraph::undirected(3, {{0, 1}, {1, 2}}));
  const InWeighting c = InWeighting::consensus(looped);
  CHECK(c.has_zero_row_sums());
  CHECK(c(1, 1) == doctest::Approx(-2.0));
}

TEST_CASE("BFS distances agree with Floyd-Warshall") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const Digraph g = testsupport::random_digraph(rng, 2 + trial % 9, 0.25, 0.3, 0.2);
    const DistanceTable d = all_pairs_distances(g);
    const auto fw = testsupport::floyd_warshall(g);
    for (int u = 0; u < g.size(); ++u) {
      for (int v = 0; v < g.size(); ++v) {
        const int expected = fw[u][v] == testsupport::kUnreachable ? DistanceTable::kInfinity : fw[u][v];
        REQUIRE(d(u, v) == expected);
      }
    }
  }
}

TEST_CASE("diameter") {
  CHECK(diameter(testsupport::cycle_graph(5)).value == 4);
  CHECK_FALSE(diameter(testsupport::cycle_graph(5)).has_unreachable_pairs);
  const Diameter p = diameter(testsupport::path_graph(4));
  CHECK(p.value == 3);
  CHECK(p.has_unreachable_pairs);
  CHECK(diameter(Digraph(1, {})).value == 0);
  CHECK_THROWS(diameter(Digraph(0, {})));
}

TEST_CASE("walk sums: matrix power equals enumeration") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Digraph g = testsupport::random_digraph(rng, 5, 0.4, 0.0, 0.3);
    const InWeighting a = testsupport::random_weights(rng, g, 0.5, 1.5, true);
    for (int k = 0; k <= 5; ++k) {
      for (int q = 0; q < 5; ++q) {
        for (int p = 0; p < 5; ++p) {
          REQUIRE(phi_matrix(a, k, q, p) == doctest::Approx(phi_enumerate(g, a, k, q, p)).epsilon(1e-12));
        }
      }
    }
  }
  const Digraph big = testsupport::path_graph(13);
  CHECK_THROWS_AS(phi_enumerate(big, InWeighting::unit(big), 2, 0, 1), OracleScaleExceeded);
}

TEST_CASE("walk sum on P3 by hand") {
  const Digraph g = testsupport::path_graph(3);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
  a(1, 0) = 2.0;
  a(2, 1) = 3.0;
  const InWeighting w(g, a);
  CHECK(phi_matrix(w, 2, 0, 2) == doctest::Approx(6.0));
  CHECK(phi_matrix(w, 1, 0, 2) == doctest::Approx(0.0));
  CHECK(phi_matrix(w, 0, 1, 1) == doctest::Approx(1.0));
}

TEST_CASE("shortest-walk weight check") {
  // Two shortest walks 0->3 of length 2 with weights +1 and -1 cancel.
  const Digraph g(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
  a(1, 0) = 1.0;
  a(2, 0) = 1.0;
  a(3, 1) = 1.0;
  a(3, 2) = -1.0;
  const auto violations = check_assumption1(g, InWeighting(g, a));
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].from == 0);
  CHECK(violations[0].to == 3);
  CHECK(violations[0].distance == 2);
  CHECK(check_assumption1(g, InWeighting::unit(g)).empty());
}

TEST_CASE("edge-list round trip") {
  std::istringstream in("# demo\nn 3\n1 2 0.5\n2 3 1.5 b\n3 2 2.5 b\n");
  const Network net = read_edge_list(in);
  CHECK(net.graph.size() == 3);
  CHECK(net.graph.is_bidirectional({1, 2}));
  CHECK(net.weights(1, 0) == doctest::Approx(0.5));
  CHECK(net.weights(1, 2) == doctest::Approx(2.5));

  std::ostringstream out;
  write_edge_list(out, net);
  std::istringstream again(out.str());
  const Network back = read_edge_list(again);
  CHECK(back.graph == net.graph);
  CHECK(back.weights.matrix().isApprox(net.weights.matrix()));
}

TEST_CASE("edge-list errors carry line numbers") {
  auto line_of = [](const std::string& text) -> long {
    std::istringstream in(text);
    try {
      read_edge_list(in);
    } catch (const ParseError& e) {
      return static_cast<long>(e.line());
    }
    return -1;
  };
  CHECK(line_of("n 2\n1 3 1\n") == 2);
  CHECK(line_of("n 2\n1 2 1\n1 2 1\n") == 3);
  CHECK(line_of("x 2\n") == 1);
  CHECK(line_of("n 2\n1 2 1 b\n") > 0);
  CHECK(line_of("n 2\n1 1 1 b\n") == 2);
  CHECK(line_of("n 2\n1 2 abc\n") == 2);
}
