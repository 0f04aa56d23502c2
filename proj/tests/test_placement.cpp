#include <doctest.h>

#include <cmath>

#include "linkfdi/error.hpp"
#include "linkfdi/placement.hpp"
#include "linkfdi/randgraphs.hpp"
#include "support.hpp"

using namespace linkfdi;

TEST_CASE("greedy detection on P4 and C5") {
  const DetectionResult p4 = greedy_detection(RelationIndex(testsupport::path_graph(4), 3));
  REQUIRE(p4.feasible);
  CHECK(p4.set.sensors == std::vector<NodeId>{3});
  CHECK(p4.set.residuals == std::vector<std::size_t>{0});

  const DetectionResult c5 = greedy_detection(RelationIndex(testsupport::cycle_graph(5), 4));
  REQUIRE(c5.feasible);
  CHECK(c5.set.sensors == std::vector<NodeId>{0, 1});
  CHECK(c5.set.residuals == std::vector<std::size_t>{1, 0});
}

TEST_CASE("detection infeasibility guard") {
  // A table where one class relates to no node cannot come from a graph
  // (every class relates to its own head), so it is built directly.
  const std::vector<EdgeClass> classes{{0, {{0, 1}}}, {1, {{1, 2}}}};
  const RelationIndex idx(3, classes, {0, 0, 0, 1, 0, 0}, 2);
  const DetectionResult r = greedy_detection(idx);
  CHECK_FALSE(r.feasible);
  CHECK(r.set.sensors.empty());
  CHECK(r.undetectable == std::vector<ClassId>{0});
  CHECK_FALSE(exhaustive_detection(idx).has_value());
}

TEST_CASE("every class of a real graph is detectable at its head") {
  std::mt19937_64 rng(30);
  for (int trial = 0; trial < 30; ++trial) {
    const Digraph g = testsupport::random_digraph(rng, 6, 0.3, 0.5);
    CHECK(greedy_detection(RelationIndex(g, 1)).feasible);
  }
}

TEST_CASE("greedy isolation") {
  const RelationIndex p4(testsupport::path_graph(4), 3);
  const IsolationResult r = greedy_isolation(p4, greedy_detection(p4).set);
  CHECK(r.feasible);
  CHECK(r.set.sensors == std::vector<NodeId>{3});
  CHECK(r.residual_all == 0);

  const RelationIndex empty(Digraph(3, {}), 1);
  const IsolationResult e = greedy_isolation(empty, greedy_detection(empty).set);
  CHECK(e.feasible);
  CHECK(e.set.sensors.empty());

  // Two sources feeding one head look alike from everywhere.
  const RelationIndex fork(Digraph(3, {{0, 2}, {1, 2}}), 2);
  const IsolationResult f = greedy_isolation(fork, greedy_detection(fork).set);
  CHECK_FALSE(f.feasible);
  CHECK(f.set.sensors.empty());
  CHECK(f.residual_all == 2);
  CHECK(f.best_effort.final_residual() == 2);
}

TEST_CASE("all-bidirectional graphs are isolable with every node observed") {
  // Order 1 appears exactly at the two endpoints of a bidirectional class.
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Digraph geo = geometric_with_edge_count(50, 200, 1.0, seed).graph;
    const RelationIndex gi(geo, default_z(geo));
    const IsolationResult g = greedy_isolation(gi, greedy_detection(gi).set);
    CHECK(g.feasible);
    CHECK(g.residual_all == 0);
  }
}

TEST_CASE("isolation may need steps with no immediate gain") {
  // Four classes; no single sensor singles any of them out, two together do.
  std::vector<EdgeClass> classes;
  for (int c = 0; c < 4; ++c) {
    classes.push_back({c, {{c, c + 1}}});
  }
  const std::vector<int> table{1, 1, 2, 2,  // node 0
                               1, 2, 1, 2,  // node 1
                               1, 1, 1, 1,  // node 2
                               1, 1, 1, 1,  // node 3
                               1, 1, 1, 1}; // node 4
  const RelationIndex idx(5, classes, table, 2);
  const IsolationResult r = greedy_isolation(idx, {});
  CHECK(r.feasible);
  CHECK(r.set.sensors == std::vector<NodeId>{0, 1});
  CHECK(r.set.residuals == std::vector<std::size_t>{4, 0});
}

TEST_CASE("exhaustive optima") {
  CHECK(exhaustive_detection(RelationIndex(testsupport::path_graph(4), 3))->size() == 1);
  CHECK(exhaustive_detection(RelationIndex(testsupport::cycle_graph(5), 4))->size() == 2);
  const Digraph k3 = Digraph::undirected(3, {{0, 1}, {0, 2}, {1, 2}});
  const auto k3_opt = exhaustive_detection(RelationIndex(k3, 2));
  REQUIRE(k3_opt.has_value());
  CHECK(k3_opt->size() == 2);
  CHECK(*k3_opt == std::vector<NodeId>{0, 1});
  CHECK_THROWS_AS(exhaustive_detection(RelationIndex(testsupport::path_graph(17), 2)), OracleScaleExceeded);
}

TEST_CASE("approximation report") {
  const ApproximationReport r = approximation_report(2, 2, 5);
  CHECK(r.ratio == 1.0);
  CHECK(r.bound == doctest::Approx(1.0 + std::log(5.0)));
  CHECK_FALSE(r.violated);
  CHECK(approximation_report(9, 2, 3).violated);
  CHECK(approximation_report(0, 0, 0).ratio == 1.0);
}

TEST_CASE("placement JSON uses 1-based ids") {
  const RelationIndex p4(testsupport::path_graph(4), 3);
  const nlohmann::json j = detection_to_json(greedy_detection(p4), p4, ratio_bound(3));
  CHECK(j["sensors"] == nlohmann::json::array({4}));
  CHECK(j["feasible"] == true);
  CHECK(j["z"] == 3);
  CHECK(j.contains("residuals"));
  CHECK(j.contains("ratio_bound"));
}

TEST_CASE("greedy is deterministic") {
  std::mt19937_64 rng(31);
  const Digraph g = testsupport::random_digraph(rng, 9, 0.3, 0.3);
  const RelationIndex idx(g, default_z(g));
  CHECK(greedy_detection(idx).set.sensors == greedy_detection(idx).set.sensors);
}
