#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "linkfdi/graph.hpp"

namespace linkfdi {

using ClassId = int;

/// One failure target: a single edge, or both orientations of a bidirectional
/// pair. Members are sorted; the first is the representative.
struct EdgeClass {
  ClassId id = 0;
  std::vector<Edge> members;

  const Edge& representative() const { return members.front(); }
  bool bidirectional() const noexcept { return members.size() == 2; }

  friend bool operator==(const EdgeClass&, const EdgeClass&) = default;
};

/// Partition of the non-self-loop edges, ordered by representative.
std::vector<EdgeClass> build_classes(const Digraph& g);

/// Relation order k in {0, 1, .., z} for every (node, class) pair.
///
/// A unidirectional edge (q, r) has order k at p when dist(q, p) = k and
/// dist(r, p) = k - 1 with k <= z. A bidirectional class takes k when either
/// orientation satisfies that. Everything else is 0.
class RelationIndex {
public:
  RelationIndex() = default;
  RelationIndex(const Digraph& g, int z);
  RelationIndex(const DistanceTable& dist, std::vector<EdgeClass> classes, int z);

  /// Raw table, row-major by node: table[p * classes.size() + c]. Entries must
  /// lie in 0..z. Used for deserialization and synthetic cases.
  RelationIndex(int n, std::vector<EdgeClass> classes, std::vector<int> table, int z);

  int node_count() const noexcept { return n_; }
  int z() const noexcept { return z_; }
  std::span<const EdgeClass> classes() const noexcept { return classes_; }
  std::size_t class_count() const noexcept { return classes_.size(); }

  int operator()(NodeId p, ClassId c) const {
    return table_[static_cast<std::size_t>(p) * classes_.size() + static_cast<std::size_t>(c)];
  }

  std::optional<ClassId> class_of(const Edge& e) const;

private:
  int n_ = 0;
  int z_ = 0;
  std::vector<EdgeClass> classes_;
  std::vector<int> table_;
};

/// Table of onset orders: for each class, min over its head nodes r of
/// dist(r, p) + 1 when that is <= z, else 0. This is the order at which a
/// generic failure of the class first shows up at p, whether or not the
/// tail lies on a shortest path. Pass it to match() for an onset-based
/// diagnosis.
RelationIndex onset_relations(const DistanceTable& dist, std::vector<EdgeClass> classes, int z);
RelationIndex onset_relations(const Digraph& g, int z);

/// diam + 1 when the diameter is finite, n otherwise.
int default_z(const DistanceTable& dist);
int default_z(const Digraph& g);

struct SignatureEntry {
  int k = 0;
  NodeId p = 0;

  friend auto operator<=>(const SignatureEntry&, const SignatureEntry&) = default;
};

/// {(k, p) : p in sensors, rel(p, c) = k}, including k = 0, sorted by p.
using Signature = std::vector<SignatureEntry>;

Signature signature(const RelationIndex& idx, std::span<const NodeId> sensors, ClassId c);

/// Classes with order 0 at every sensor.
std::vector<ClassId> undetected_classes(const RelationIndex& idx, std::span<const NodeId> sensors);
/// Number of undetected classes (the detection set function).
std::size_t detection_residual(const RelationIndex& idx, std::span<const NodeId> sensors);

/// Classes whose signature over the sensors equals that of some other class.
/// Comparing against other edges outside the class is the same as comparing
/// against other classes, since both members of a class share one signature.
std::vector<ClassId> unresolved_classes(const RelationIndex& idx, std::span<const NodeId> sensors);
/// Number of unresolved classes (the isolation set function).
std::size_t isolation_residual(const RelationIndex& idx, std::span<const NodeId> sensors);

/// Classes with a unique but all-zero signature: counted as isolated, yet
/// their failure looks exactly like no failure at these sensors.
std::vector<ClassId> silently_unique(const RelationIndex& idx, std::span<const NodeId> sensors);

/// Incremental form of detection_residual for greedy search.
class DetectionCover {
public:
  explicit DetectionCover(const RelationIndex& idx);

  std::size_t residual() const noexcept { return uncovered_; }
  std::size_t residual_with(NodeId v) const;
  void add(NodeId v);

private:
  const RelationIndex* idx_;
  std::vector<bool> covered_;
  std::size_t uncovered_;
};

/// Incremental form of isolation_residual: classes grouped by their signature
/// over the sensors added so far.
class SignaturePartition {
public:
  explicit SignaturePartition(const RelationIndex& idx);

  std::size_t residual() const noexcept { return residual_; }
  std::size_t residual_with(NodeId v) const;
  void add(NodeId v);

private:
  std::vector<int> refine(NodeId v, std::size_t* residual) const;

  const RelationIndex* idx_;
  std::vector<int> block_;
  std::size_t residual_;
};

/// CSV: class_id, tail, head, bidirectional, v1..vn (orders). Ids 1-based.
void write_relation_csv(std::ostream& out, const RelationIndex& idx);

} // namespace linkfdi
