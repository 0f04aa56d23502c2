#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "linkfdi/relations.hpp"

namespace linkfdi {

/// Sensors in the order they were chosen; residuals[i] is the set-function
/// value after sensors[0..i].
struct SensorSet {
  std::vector<NodeId> sensors;
  std::vector<std::size_t> residuals;

  std::size_t size() const noexcept { return sensors.size(); }
  std::size_t final_residual() const noexcept { return residuals.empty() ? 0 : residuals.back(); }
};

struct DetectionResult {
  bool feasible = false;
  SensorSet set;                        ///< empty when infeasible
  std::vector<ClassId> undetectable;    ///< classes no sensor set can detect
};

struct IsolationResult {
  bool feasible = false;
  SensorSet set;               ///< empty when infeasible
  SensorSet best_effort;       ///< greedy prefix that reaches the residual floor
  std::size_t residual_all = 0; ///< unresolved classes with every node observed
  std::vector<ClassId> unresolved_all;
};

/// Greedy detection cover. Each step adds the node with the largest drop in
/// undetected classes, smallest id first on ties.
DetectionResult greedy_detection(const RelationIndex& idx);

/// Greedy isolation starting from `seed`. Each step adds the node leaving the
/// fewest unresolved classes, smallest id first on ties, until none remain or
/// the floor set by observing every node is reached. Steps with no immediate
/// gain are taken when the floor is still below the current residual.
IsolationResult greedy_isolation(const RelationIndex& idx, const SensorSet& seed);

/// Smallest-cardinality sets by subset enumeration. Empty optional when no
/// subset works. An isolating set must also detect every class. Throw OracleScaleExceeded above kExhaustiveMaxNodes nodes.
inline constexpr int kExhaustiveMaxNodes = 16;
std::optional<std::vector<NodeId>> exhaustive_detection(const RelationIndex& idx);
std::optional<std::vector<NodeId>> exhaustive_isolation(const RelationIndex& idx);

struct ApproximationReport {
  std::size_t greedy_size = 0;
  std::size_t optimal_size = 0;
  double ratio = 1.0;
  double bound = 1.0; ///< 1 + ln(edge_count)
  bool violated = false;
};

ApproximationReport approximation_report(std::size_t greedy_size, std::size_t optimal_size,
                                         std::size_t edge_count);

/// 1 + ln(edge_count), or 1 for an empty edge set.
double ratio_bound(std::size_t edge_count);

/// {sensors, residuals, feasible, ratio_bound, z}, node ids 1-based.
nlohmann::json placement_to_json(const SensorSet& set, bool feasible, double bound, int z);
nlohmann::json detection_to_json(const DetectionResult& r, const RelationIndex& idx, double bound);
/// Adds best_effort_sensors, best_effort_residual and residual_all.
nlohmann::json isolation_to_json(const IsolationResult& r, const RelationIndex& idx, double bound);

} // namespace linkfdi
