#include "linkfdi/placement.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "linkfdi/error.hpp"

namespace linkfdi {

namespace {

std::vector<NodeId> all_nodes(const RelationIndex& idx) {
  std::vector<NodeId> v(static_cast<std::size_t>(idx.node_count()));
  for (NodeId p = 0; p < idx.node_count(); ++p) {
    v[static_cast<std::size_t>(p)] = p;
  }
  return v;
}

template <class State>
NodeId best_candidate(const State& state, const std::vector<bool>& chosen, std::size_t* residual) {
  NodeId best = -1;
  std::size_t best_residual = std::numeric_limits<std::size_t>::max();
  for (std::size_t v = 0; v < chosen.size(); ++v) {
    if (chosen[v]) {
      continue;
    }
    const std::size_t r = state.residual_with(static_cast<NodeId>(v));
    if (r < best_residual) {
      best_residual = r;
      best = static_cast<NodeId>(v);
    }
  }
  *residual = best_residual;
  return best;
}

} // namespace

DetectionResult greedy_detection(const RelationIndex& idx) {
  DetectionResult result;
  const std::vector<NodeId> everyone = all_nodes(idx);
  result.undetectable = undetected_classes(idx, everyone);
  if (!result.undetectable.empty()) {
    return result;
  }

  DetectionCover cover(idx);
  std::vector<bool> chosen(static_cast<std::size_t>(idx.node_count()), false);
  while (cover.residual() > 0) {
    std::size_t r = 0;
    const NodeId v = best_candidate(cover, chosen, &r);
    if (v < 0 || r == cover.residual()) {
      // Unreachable when every class is detectable somewhere; kept as a guard.
      result.undetectable = undetected_classes(idx, result.set.sensors);
      result.set = {};
      return result;
    }
    cover.add(v);
    chosen[static_cast<std::size_t>(v)] = true;
    result.set.sensors.push_back(v);
    result.set.residuals.push_back(cover.residual());
  }
  result.feasible = true;
  return result;
}

IsolationResult greedy_isolation(const RelationIndex& idx, const SensorSet& seed) {
  IsolationResult result;
  const std::vector<NodeId> everyone = all_nodes(idx);
  result.unresolved_all = unresolved_classes(idx, everyone);
  result.residual_all = result.unresolved_all.size();

  SignaturePartition partition(idx);
  std::vector<bool> chosen(static_cast<std::size_t>(idx.node_count()), false);
  SensorSet grown;
  for (NodeId v : seed.sensors) {
    if (v < 0 || v >= idx.node_count()) {
      throw InvalidInput("seed sensor " + std::to_string(v + 1) + " out of range");
    }
    if (chosen[static_cast<std::size_t>(v)]) {
      continue;
    }
    partition.add(v);
    chosen[static_cast<std::size_t>(v)] = true;
    grown.sensors.push_back(v);
    grown.residuals.push_back(partition.residual());
  }

  while (partition.residual() > result.residual_all) {
    std::size_t r = 0;
    const NodeId v = best_candidate(partition, chosen, &r);
    partition.add(v);
    chosen[static_cast<std::size_t>(v)] = true;
    grown.sensors.push_back(v);
    grown.residuals.push_back(partition.residual());
  }

  result.feasible = result.residual_all == 0;
  if (result.feasible) {
    result.set = grown;
  }
  result.best_effort = std::move(grown);
  return result;
}

namespace {

// Visits k-subsets of 0..n-1 in lexicographic order until `accept` holds.
template <class Accept>
std::optional<std::vector<NodeId>> first_subset(int n, Accept accept) {
  for (int k = 0; k <= n; ++k) {
    std::vector<NodeId> subset(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      subset[static_cast<std::size_t>(i)] = i;
    }
    while (true) {
      if (accept(subset)) {
        return subset;
      }
      int i = k - 1;
      while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - k + i) {
        --i;
      }
      if (i < 0) {
        break;
      }
      ++subset[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) {
        subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
      }
    }
  }
  return std::nullopt;
}

void check_scale(const RelationIndex& idx) {
  if (idx.node_count() > kExhaustiveMaxNodes) {
    throw OracleScaleExceeded("exhaustive placement limited to " + std::to_string(kExhaustiveMaxNodes) +
                              " nodes, got " + std::to_string(idx.node_count()));
  }
}

} // namespace

std::optional<std::vector<NodeId>> exhaustive_detection(const RelationIndex& idx) {
  check_scale(idx);
  return first_subset(idx.node_count(),
                      [&](const std::vector<NodeId>& s) { return detection_residual(idx, s) == 0; });
}

std::optional<std::vector<NodeId>> exhaustive_isolation(const RelationIndex& idx) {
  check_scale(idx);
  return first_subset(idx.node_count(),
                      [&](const std::vector<NodeId>& s) {
                        return detection_residual(idx, s) == 0 && isolation_residual(idx, s) == 0;
                      });
}

double ratio_bound(std::size_t edge_count) {
  return edge_count == 0 ? 1.0 : 1.0 + std::log(static_cast<double>(edge_count));
}

ApproximationReport approximation_report(std::size_t greedy_size, std::size_t optimal_size,
                                         std::size_t edge_count) {
  ApproximationReport rep;
  rep.greedy_size = greedy_size;
  rep.optimal_size = optimal_size;
  rep.bound = ratio_bound(edge_count);
  if (optimal_size == 0) {
    rep.ratio = greedy_size == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  } else {
    rep.ratio = static_cast<double>(greedy_size) / static_cast<double>(optimal_size);
  }
  rep.violated = rep.ratio > rep.bound;
  return rep;
}

namespace {

nlohmann::json one_based(const std::vector<NodeId>& nodes) {
  nlohmann::json out = nlohmann::json::array();
  for (NodeId v : nodes) {
    out.push_back(v + 1);
  }
  return out;
}

nlohmann::json class_list(const RelationIndex& idx, const std::vector<ClassId>& ids) {
  nlohmann::json out = nlohmann::json::array();
  for (ClassId c : ids) {
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : idx.classes()[static_cast<std::size_t>(c)].members) {
      edges.push_back({e.tail + 1, e.head + 1});
    }
    out.push_back({{"class_id", c + 1}, {"edges", edges}});
  }
  return out;
}

} // namespace

nlohmann::json placement_to_json(const SensorSet& set, bool feasible, double bound, int z) {
  return {{"sensors", one_based(set.sensors)},
          {"residuals", set.residuals},
          {"feasible", feasible},
          {"ratio_bound", bound},
          {"z", z}};
}

nlohmann::json detection_to_json(const DetectionResult& r, const RelationIndex& idx, double bound) {
  nlohmann::json j = placement_to_json(r.set, r.feasible, bound, idx.z());
  j["objective"] = "detection";
  if (!r.feasible) {
    j["undetectable"] = class_list(idx, r.undetectable);
  }
  return j;
}

nlohmann::json isolation_to_json(const IsolationResult& r, const RelationIndex& idx, double bound) {
  nlohmann::json j = placement_to_json(r.set, r.feasible, bound, idx.z());
  j["objective"] = "isolation";
  j["residual_all"] = r.residual_all;
  if (!r.feasible) {
    j["best_effort_sensors"] = one_based(r.best_effort.sensors);
    j["best_effort_residual"] = r.best_effort.final_residual();
    j["unresolved"] = class_list(idx, r.unresolved_all);
  }
  return j;
}

} // namespace linkfdi
