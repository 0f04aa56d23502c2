#include <doctest.h>

#include "linkfdi/error.hpp"
#include "linkfdi/failure.hpp"
#include "support.hpp"

using namespace linkfdi;

TEST_CASE("unidirectional failure zeroes one entry") {
  const Digraph g = testsupport::path_graph(3);
  const InWeighting a = InWeighting::unit(g);
  const FaultyNetwork f = apply_failure(g, a, FailureScenario::unidirectional({0, 1}, 1.0));
  CHECK_FALSE(f.graph.has_edge(0, 1));
  CHECK(f.weights(1, 0) == 0.0);
  CHECK(f.weights(2, 1) == 1.0);
  CHECK(f.affected_rows == std::vector<NodeId>{1});
}

TEST_CASE("row rebalance keeps consensus row sums") {
  const Digraph g = with_consensus_self_loops(Digraph::undirected(3, {{0, 1}, {1, 2}}));
  const InWeighting a = InWeighting::consensus(g);
  const FaultyNetwork f = apply_failure(g, a, FailureScenario::bidirectional({0, 1}, 0.0));
  CHECK(f.weights.has_zero_row_sums());
  CHECK(f.weights(0, 0) == doctest::Approx(0.0));
  CHECK(f.weights(1, 1) == doctest::Approx(-1.0));
  CHECK(f.affected_rows == std::vector<NodeId>{0, 1});
}

TEST_CASE("rule selection and errors") {
  const Digraph g(3, {{0, 1}, {1, 2}, {2, 1}}, {{1, 2}});
  const InWeighting a = InWeighting::unit(g);
  CHECK(std::holds_alternative<ZeroOnly>(default_rule(a)));
  CHECK_THROWS_AS(apply_failure(g, a, FailureScenario::unidirectional({1, 0}, 0.0)), InvalidInput);
  CHECK_THROWS_AS(apply_failure(g, a, FailureScenario::unidirectional({1, 2}, 0.0)), InvalidInput);
  CHECK_THROWS_AS(apply_failure(g, a, FailureScenario::bidirectional({0, 1}, 0.0)), InvalidInput);
  CHECK_THROWS_AS(apply_failure(g, a, FailureScenario::unidirectional({0, 1}, 0.0, RowRebalance{})), InvalidInput);

  ExplicitRows ex;
  ex.rows[1] = Eigen::Vector3d(0.0, 0.0, 2.0);
  const FaultyNetwork f = apply_failure(g, a, FailureScenario::unidirectional({0, 1}, 0.0, ex));
  CHECK(f.weights(1, 2) == doctest::Approx(2.0));
  ex.rows[1] = Eigen::Vector3d(1.0, 0.0, 0.0);
  CHECK_THROWS_AS(apply_failure(g, a, FailureScenario::unidirectional({0, 1}, 0.0, ex)), InvalidInput);
}

TEST_CASE("node failure removes in-edges but keeps the self-loop") {
  const Digraph g(3, {{0, 2}, {1, 2}, {2, 2}, {2, 0}});
  const auto removed = node_failure_edge_map(g, 2);
  CHECK(removed == std::vector<Edge>{{0, 2}, {1, 2}});
  const FaultyNetwork f = apply_failure(g, InWeighting::unit(g), FailureScenario::node_incoming(2, 0.0));
  CHECK(f.graph.has_edge(2, 2));
  CHECK(f.graph.has_edge(2, 0));
  CHECK_FALSE(f.graph.has_edge(0, 2));
}

TEST_CASE("perturbation check flags orthogonal states") {
  const Digraph g = testsupport::path_graph(3);
  const InWeighting a = InWeighting::unit(g);
  const FaultyNetwork f = apply_failure(g, a, FailureScenario::unidirectional({0, 1}, 0.0));
  const auto ok = check_assumption2(a, f.weights, Eigen::Vector3d(1.0, 0.0, 0.0), f.affected_rows);
  CHECK(ok[0].holds);
  CHECK(ok[0].value == doctest::Approx(-1.0));
  const auto bad = check_assumption2(a, f.weights, Eigen::Vector3d(0.0, 1.0, 1.0), f.affected_rows);
  CHECK_FALSE(bad[0].holds);
}

TEST_CASE("scenario JSON round trip") {
  ExplicitRows ex;
  ex.rows[1] = Eigen::Vector3d(0.0, 0.5, 0.0);
  for (const FailureScenario& s :
       {FailureScenario::unidirectional({0, 1}, 0.25), FailureScenario::bidirectional({1, 2}, 1.0, RowRebalance{}),
        FailureScenario::node_incoming(2, 3.0, ZeroOnly{}), FailureScenario::unidirectional({0, 1}, 0.0, ex)}) {
    const FailureScenario back = scenario_from_json(scenario_to_json(s));
    CHECK(back.kind == s.kind);
    CHECK(back.t_f == s.t_f);
    CHECK(back.rule == s.rule);
    if (s.kind != FailureKind::NodeIncoming) {
      CHECK(back.edge == s.edge);
    } else {
      CHECK(back.node == s.node);
    }
  }
  CHECK_THROWS_AS(scenario_from_json(nlohmann::json{{"kind", "sideways"}, {"t_f", 0}}), InvalidInput);
  CHECK_THROWS_AS(scenario_from_json(nlohmann::json{{"kind", "unidirectional"}}), InvalidInput);
  CHECK_THROWS_AS(scenario_from_json(nlohmann::json::parse(R"({"kind":"unidirectional","edges":[[1,2]],"t_f":0,"rule":"odd"})")),
                  InvalidInput);
}
