#pragma once

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "linkfdi/graph.hpp"

namespace linkfdi {

enum class FailureKind {
  Unidirectional, ///< one directed edge j -> i
  Bidirectional,  ///< both orientations of a bidirectional pair
  NodeIncoming,   ///< every incoming edge of one node (self-loop kept)
};

/// Failed entries are zeroed; nothing else changes.
struct ZeroOnly {
  friend bool operator==(const ZeroOnly&, const ZeroOnly&) = default;
};

/// Failed entries are zeroed and the weight moves onto the diagonal so each
/// affected row keeps its sum. Needs a self-loop on the affected node.
struct RowRebalance {
  friend bool operator==(const RowRebalance&, const RowRebalance&) = default;
};

/// Caller-supplied replacement rows, keyed by affected row. Affected rows not
/// listed fall back to ZeroOnly.
struct ExplicitRows {
  std::map<NodeId, Eigen::VectorXd> rows;

  friend bool operator==(const ExplicitRows& a, const ExplicitRows& b) {
    if (a.rows.size() != b.rows.size()) {
      return false;
    }
    for (auto ia = a.rows.begin(), ib = b.rows.begin(); ia != a.rows.end(); ++ia, ++ib) {
      if (ia->first != ib->first || ia->second != ib->second) {
        return false;
      }
    }
    return true;
  }
};

using PerturbationRule = std::variant<ZeroOnly, RowRebalance, ExplicitRows>;

/// RowRebalance for zero-row-sum (consensus-type) weightings, else ZeroOnly.
PerturbationRule default_rule(const InWeighting& a);

struct FailureScenario {
  FailureKind kind = FailureKind::Unidirectional;
  Edge edge;             ///< failed edge (j, i); for Bidirectional either orientation
  NodeId node = 0;       ///< failed node for NodeIncoming
  double t_f = 0.0;
  std::optional<PerturbationRule> rule; ///< empty selects default_rule

  static FailureScenario unidirectional(Edge e, double t_f, std::optional<PerturbationRule> rule = {});
  static FailureScenario bidirectional(Edge e, double t_f, std::optional<PerturbationRule> rule = {});
  static FailureScenario node_incoming(NodeId v, double t_f, std::optional<PerturbationRule> rule = {});

  /// Edges removed from g by this scenario.
  std::vector<Edge> removed_edges(const Digraph& g) const;

  /// Rows of the in-weighting the scenario may change: {i}, or {i, j}.
  std::vector<NodeId> affected_rows() const;
};

struct FaultyNetwork {
  Digraph graph;
  InWeighting weights;
  std::vector<Edge> removed;
  std::vector<NodeId> affected_rows;
};

/// Faulty digraph and perturbed in-weighting for a scenario.
///
/// Throws InvalidInput on a missing edge, a bidirectional scenario on an edge
/// outside the bidirectional set (or a unidirectional one inside it), a
/// self-loop target, RowRebalance without a self-loop to absorb the weight,
/// or explicit rows that break the faulty digraph's sparsity.
FaultyNetwork apply_failure(const Digraph& g, const InWeighting& a, const FailureScenario& s);

/// In-edges of v, excluding its self-loop.
std::vector<Edge> node_failure_edge_map(const Digraph& g, NodeId v);

struct PerturbationCheck {
  NodeId row = 0;
  double value = 0.0; ///< sum_q (abar(row, q) - a(row, q)) x_q(t_f)
  bool holds = false; ///< |value| > tol
};

/// Genericity of the failure instant, one entry per affected row.
std::vector<PerturbationCheck> check_assumption2(const InWeighting& a, const InWeighting& abar,
                                                 const Eigen::VectorXd& x_tf,
                                                 const std::vector<NodeId>& affected_rows,
                                                 double tol = kDefaultTolerance);

/// JSON form {kind, edges, t_f, rule}; node ids are 1-based.
nlohmann::json scenario_to_json(const FailureScenario& s);
/// Throws InvalidInput on malformed documents.
FailureScenario scenario_from_json(const nlohmann::json& j);

} // namespace linkfdi
