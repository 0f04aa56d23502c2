#include "linkfdi/failure.hpp"

#include <algorithm>
#include <string>

#include "linkfdi/error.hpp"

namespace linkfdi {

namespace {

std::string edge_str(const Edge& e) {
  return "(" + std::to_string(e.tail + 1) + "," + std::to_string(e.head + 1) + ")";
}

void require_edge(const Digraph& g, const Edge& e) {
  if (!g.has_edge(e)) {
    throw InvalidInput("edge " + edge_str(e) + " is not in the graph");
  }
  if (e.is_self_loop()) {
    throw InvalidInput("self-loop " + edge_str(e) + " is not a failure target");
  }
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

PerturbationRule default_rule(const InWeighting& a) {
  if (a.size() > 0 && a.has_zero_row_sums()) {
    return RowRebalance{};
  }
  return ZeroOnly{};
}

FailureScenario FailureScenario::unidirectional(Edge e, double t_f, std::optional<PerturbationRule> rule) {
  return {FailureKind::Unidirectional, e, e.head, t_f, std::move(rule)};
}

FailureScenario FailureScenario::bidirectional(Edge e, double t_f, std::optional<PerturbationRule> rule) {
  return {FailureKind::Bidirectional, e, e.head, t_f, std::move(rule)};
}

FailureScenario FailureScenario::node_incoming(NodeId v, double t_f, std::optional<PerturbationRule> rule) {
  return {FailureKind::NodeIncoming, Edge{v, v}, v, t_f, std::move(rule)};
}

std::vector<Edge> FailureScenario::removed_edges(const Digraph& g) const {
  switch (kind) {
  case FailureKind::Unidirectional:
    require_edge(g, edge);
    if (g.is_bidirectional(edge)) {
      throw InvalidInput("edge " + edge_str(edge) + " is bidirectional; it can only fail with its reverse");
    }
    return {edge};
  case FailureKind::Bidirectional:
    require_edge(g, edge);
    if (!g.is_bidirectional(edge)) {
      throw InvalidInput("edge " + edge_str(edge) + " is not bidirectional");
    }
    return {edge, edge.reversed()};
  case FailureKind::NodeIncoming:
    if (node < 0 || node >= g.size()) {
      throw InvalidInput("node id " + std::to_string(node + 1) + " out of range");
    }
    return node_failure_edge_map(g, node);
  }
  return {};
}

std::vector<NodeId> FailureScenario::affected_rows() const {
  switch (kind) {
  case FailureKind::Unidirectional:
    return {edge.head};
  case FailureKind::Bidirectional:
    return {std::min(edge.tail, edge.head), std::max(edge.tail, edge.head)};
  case FailureKind::NodeIncoming:
    return {node};
  }
  return {};
}

std::vector<Edge> node_failure_edge_map(const Digraph& g, NodeId v) {
  std::vector<Edge> edges = g.in_edges(v);
  std::erase_if(edges, [](const Edge& e) { return e.is_self_loop(); });
  return edges;
}

FaultyNetwork apply_failure(const Digraph& g, const InWeighting& a, const FailureScenario& s) {
  if (a.size() != g.size()) {
    throw InvalidInput("in-weighting does not match the graph");
  }
  const std::vector<Edge> removed = s.removed_edges(g);
  const std::vector<NodeId> rows = s.affected_rows();
  Digraph faulty = g.without(removed);

  Eigen::MatrixXd abar = a.matrix();
  for (const Edge& e : removed) {
    abar(e.head, e.tail) = 0.0;
  }

  const PerturbationRule rule = s.rule ? *s.rule : default_rule(a);
  std::visit(overloaded{
                 [](const ZeroOnly&) {},
                 [&](const RowRebalance&) {
                   for (NodeId r : rows) {
                     double moved = 0.0;
                     for (const Edge& e : removed) {
                       if (e.head == r) {
                         moved += a(r, e.tail);
                       }
                     }
                     if (moved == 0.0) {
                       continue;
                     }
                     if (!faulty.has_edge(r, r)) {
                       throw InvalidInput("row rebalancing needs a self-loop on node " + std::to_string(r + 1));
                     }
                     abar(r, r) += moved;
                   }
                 },
                 [&](const ExplicitRows& ex) {
                   for (const auto& [r, values] : ex.rows) {
                     if (std::find(rows.begin(), rows.end(), r) == rows.end()) {
                       throw InvalidInput("explicit row " + std::to_string(r + 1) + " is not affected by the failure");
                     }
                     if (values.size() != g.size()) {
                       throw InvalidInput("explicit row " + std::to_string(r + 1) + " has the wrong length");
                     }
                     for (NodeId q = 0; q < g.size(); ++q) {
                       if (values(q) != 0.0 && !faulty.has_edge(q, r)) {
                         throw InvalidInput("explicit row " + std::to_string(r + 1) + " puts weight on missing edge " +
                                            edge_str({q, r}));
                       }
                     }
                     abar.row(r) = values.transpose();
                   }
                 },
             },
             rule);

  InWeighting perturbed(faulty, std::move(abar));
  return {std::move(faulty), std::move(perturbed), removed, rows};
}

std::vector<PerturbationCheck> check_assumption2(const InWeighting& a, const InWeighting& abar,
                                                 const Eigen::VectorXd& x_tf,
                                                 const std::vector<NodeId>& affected_rows, double tol) {
  if (a.size() != abar.size() || x_tf.size() != a.size()) {
    throw InvalidInput("matrix and state dimensions disagree");
  }
  std::vector<PerturbationCheck> report;
  report.reserve(affected_rows.size());
  for (NodeId r : affected_rows) {
    const double value = (abar.matrix().row(r) - a.matrix().row(r)).dot(x_tf);
    report.push_back({r, value, std::abs(value) > tol});
  }
  return report;
}

namespace {

const char* kind_name(FailureKind k) {
  switch (k) {
  case FailureKind::Unidirectional:
    return "unidirectional";
  case FailureKind::Bidirectional:
    return "bidirectional";
  case FailureKind::NodeIncoming:
    return "node";
  }
  return "?";
}

nlohmann::json edge_json(const Edge& e) { return nlohmann::json::array({e.tail + 1, e.head + 1}); }

Edge edge_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw InvalidInput("edge must be a [tail, head] pair of 1-based ids");
  }
  return {j[0].get<int>() - 1, j[1].get<int>() - 1};
}

} // namespace

nlohmann::json scenario_to_json(const FailureScenario& s) {
  nlohmann::json j;
  j["kind"] = kind_name(s.kind);
  if (s.kind == FailureKind::NodeIncoming) {
    j["node"] = s.node + 1;
    j["edges"] = nlohmann::json::array();
  } else if (s.kind == FailureKind::Bidirectional) {
    j["edges"] = nlohmann::json::array({edge_json(s.edge), edge_json(s.edge.reversed())});
  } else {
    j["edges"] = nlohmann::json::array({edge_json(s.edge)});
  }
  j["t_f"] = s.t_f;
  if (!s.rule) {
    j["rule"] = "default";
  } else {
    std::visit(overloaded{
                   [&](const ZeroOnly&) { j["rule"] = "zero_only"; },
                   [&](const RowRebalance&) { j["rule"] = "row_rebalance"; },
                   [&](const ExplicitRows& ex) {
                     nlohmann::json rows = nlohmann::json::object();
                     for (const auto& [r, values] : ex.rows) {
                       rows[std::to_string(r + 1)] = std::vector<double>(values.data(), values.data() + values.size());
                     }
                     j["rule"] = {{"explicit_rows", rows}};
                   },
               },
               *s.rule);
  }
  return j;
}

FailureScenario scenario_from_json(const nlohmann::json& j) {
  try {
    FailureScenario s;
    const std::string kind = j.at("kind").get<std::string>();
    s.t_f = j.at("t_f").get<double>();
    if (kind == "unidirectional" || kind == "bidirectional") {
      const auto& edges = j.at("edges");
      if (!edges.is_array() || edges.empty()) {
        throw InvalidInput("\"edges\" must list the failed edge");
      }
      s.kind = kind == "unidirectional" ? FailureKind::Unidirectional : FailureKind::Bidirectional;
      s.edge = edge_from_json(edges[0]);
      s.node = s.edge.head;
      if (s.kind == FailureKind::Unidirectional && edges.size() != 1) {
        throw InvalidInput("a unidirectional failure names exactly one edge");
      }
      if (s.kind == FailureKind::Bidirectional && edges.size() == 2 && edge_from_json(edges[1]) != s.edge.reversed()) {
        throw InvalidInput("a bidirectional failure names two mutually reverse edges");
      }
    } else if (kind == "node") {
      s.kind = FailureKind::NodeIncoming;
      s.node = j.at("node").get<int>() - 1;
      s.edge = {s.node, s.node};
    } else {
      throw InvalidInput("unknown failure kind \"" + kind + "\"");
    }

    if (j.contains("rule")) {
      const auto& rule = j["rule"];
      if (rule.is_string()) {
        const std::string name = rule.get<std::string>();
        if (name == "zero_only") {
          s.rule = ZeroOnly{};
        } else if (name == "row_rebalance") {
          s.rule = RowRebalance{};
        } else if (name != "default") {
          throw InvalidInput("unknown perturbation rule \"" + name + "\"");
        }
      } else if (rule.is_object() && rule.contains("explicit_rows")) {
        ExplicitRows ex;
        for (const auto& [key, values] : rule["explicit_rows"].items()) {
          const auto v = values.get<std::vector<double>>();
          ex.rows[std::stoi(key) - 1] = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
        }
        s.rule = std::move(ex);
      } else {
        throw InvalidInput("malformed perturbation rule");
      }
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed failure scenario: ") + e.what());
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const InvalidInput*>(&e) != nullptr) {
      throw;
    }
    throw InvalidInput(std::string("malformed failure scenario: ") + e.what());
  }
}

} // namespace linkfdi
