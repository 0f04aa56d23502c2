#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "linkfdi/jumps.hpp"
#include "linkfdi/relations.hpp"
#include "linkfdi/simulate.hpp"

namespace linkfdi {

inline constexpr double kDefaultThreshold = 1e-4;

/// First jump order per sensor (0 when no jump is seen up to z), all taken at
/// one instant.
struct ObservedSignature {
  std::vector<NodeId> sensors; ///< sorted, unique
  std::vector<int> orders;     ///< parallel to sensors
  double t = 0.0;

  bool all_zero() const;
  int order_at(NodeId p) const;
};

enum class Verdict { NoFailure, Detected, Isolated };

const char* verdict_name(Verdict v);

struct Diagnosis {
  Verdict verdict = Verdict::NoFailure;
  std::vector<ClassId> candidates;
  /// On an all-zero observation: classes whose failure would look the same.
  std::vector<ClassId> silent;
  ObservedSignature signature;
};

/// Per sensor, the smallest k in 1..z with |jumps(p, k)| > threshold, else 0.
ObservedSignature extract_signature(const JumpTable& jumps, std::span<const NodeId> sensors, int z,
                                    double threshold, double t = 0.0);

/// Classes whose relation orders over the observed sensors equal the
/// observation. All-zero observations give NoFailure, with any all-zero
/// classes listed as silent. A nonzero observation matching no class throws
/// InconsistentObservation.
Diagnosis match(const RelationIndex& idx, const ObservedSignature& sig);

/// Live monitoring over a sampled trajectory.
///
/// At each sample the output derivatives of orders 1..z are evaluated in
/// closed form under the regime on either side of the sample (A before the
/// failure, `abar` after). A jump above threshold at any sensor yields one
/// event. `abar` may be empty when the trajectory has no post-failure part.
std::vector<Diagnosis> monitor(const Trajectory& traj, std::span<const NodeId> sensors, const RelationIndex& idx,
                               const InWeighting& a, const std::optional<InWeighting>& abar,
                               const InputSignal& input, double threshold = kDefaultThreshold);

/// {t_f, verdict, candidates:[{class_id, edges}], signature:[{node, k}], silent}.
nlohmann::json diagnosis_to_json(const Diagnosis& d, const RelationIndex& idx);
void write_events(std::ostream& out, const std::vector<Diagnosis>& events, const RelationIndex& idx);

} // namespace linkfdi
