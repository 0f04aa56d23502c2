#include "linkfdi/relations.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>

#include "linkfdi/error.hpp"

namespace linkfdi {

std::vector<EdgeClass> build_classes(const Digraph& g) {
  std::vector<EdgeClass> classes;
  for (const Edge& e : g.edges()) {
    if (e.is_self_loop()) {
      continue;
    }
    if (g.is_bidirectional(e)) {
      // The pair is emitted once, from its lexicographically smaller member.
      if (e.reversed() < e) {
        continue;
      }
      classes.push_back({0, {e, e.reversed()}});
    } else {
      classes.push_back({0, {e}});
    }
  }
  for (std::size_t c = 0; c < classes.size(); ++c) {
    classes[c].id = static_cast<ClassId>(c);
  }
  return classes;
}

namespace {

constexpr int kInf = DistanceTable::kInfinity;

int edge_order(const DistanceTable& dist, const Edge& e, NodeId p, int z) {
  const int dq = dist(e.tail, p);
  const int dr = dist(e.head, p);
  if (dq == kInf || dr == kInf) {
    return 0;
  }
  return dq == dr + 1 && dq <= z ? dq : 0;
}

} // namespace

RelationIndex::RelationIndex(const DistanceTable& dist, std::vector<EdgeClass> classes, int z)
    : n_(dist.size()), z_(z), classes_(std::move(classes)) {
  if (z < 1) {
    throw InvalidInput("z must be at least 1");
  }
  table_.assign(static_cast<std::size_t>(n_) * classes_.size(), 0);
  for (NodeId p = 0; p < n_; ++p) {
    for (const EdgeClass& cls : classes_) {
      int k = 0;
      for (const Edge& e : cls.members) {
        k = std::max(k, edge_order(dist, e, p, z));
      }
      table_[static_cast<std::size_t>(p) * classes_.size() + static_cast<std::size_t>(cls.id)] = k;
    }
  }
}

RelationIndex::RelationIndex(const Digraph& g, int z) : RelationIndex(all_pairs_distances(g), build_classes(g), z) {}

RelationIndex::RelationIndex(int n, std::vector<EdgeClass> classes, std::vector<int> table, int z)
    : n_(n), z_(z), classes_(std::move(classes)), table_(std::move(table)) {
  if (z < 1) {
    throw InvalidInput("z must be at least 1");
  }
  if (table_.size() != static_cast<std::size_t>(n) * classes_.size()) {
    throw InvalidInput("relation table has the wrong size");
  }
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    if (classes_[c].id != static_cast<ClassId>(c) || classes_[c].members.empty()) {
      throw InvalidInput("edge classes must be numbered 0..C-1 and non-empty");
    }
  }
  if (std::any_of(table_.begin(), table_.end(), [z](int k) { return k < 0 || k > z; })) {
    throw InvalidInput("relation order outside 0..z");
  }
}

std::optional<ClassId> RelationIndex::class_of(const Edge& e) const {
  for (const EdgeClass& cls : classes_) {
    if (std::find(cls.members.begin(), cls.members.end(), e) != cls.members.end()) {
      return cls.id;
    }
  }
  return std::nullopt;
}

RelationIndex onset_relations(const DistanceTable& dist, std::vector<EdgeClass> classes, int z) {
  const int n = dist.size();
  std::vector<int> table(static_cast<std::size_t>(n) * classes.size(), 0);
  for (NodeId p = 0; p < n; ++p) {
    for (const EdgeClass& cls : classes) {
      int nearest = kInf;
      for (const Edge& e : cls.members) {
        nearest = std::min(nearest, dist(e.head, p));
      }
      if (nearest != kInf && nearest + 1 <= z) {
        table[static_cast<std::size_t>(p) * classes.size() + static_cast<std::size_t>(cls.id)] = nearest + 1;
      }
    }
  }
  return RelationIndex(n, std::move(classes), std::move(table), z);
}

RelationIndex onset_relations(const Digraph& g, int z) { return onset_relations(all_pairs_distances(g), build_classes(g), z); }

int default_z(const DistanceTable& dist) {
  const Diameter d = diameter(dist);
  return d.finite() ? d.value + 1 : std::max(dist.size(), 1);
}

int default_z(const Digraph& g) { return default_z(all_pairs_distances(g)); }

namespace {

void check_sensors(const RelationIndex& idx, std::span<const NodeId> sensors) {
  for (NodeId p : sensors) {
    if (p < 0 || p >= idx.node_count()) {
      throw InvalidInput("sensor id " + std::to_string(p + 1) + " out of range");
    }
  }
}

std::vector<NodeId> sorted_unique(std::span<const NodeId> sensors) {
  std::vector<NodeId> s(sensors.begin(), sensors.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

} // namespace

Signature signature(const RelationIndex& idx, std::span<const NodeId> sensors, ClassId c) {
  check_sensors(idx, sensors);
  if (c < 0 || static_cast<std::size_t>(c) >= idx.class_count()) {
    throw InvalidInput("class id out of range");
  }
  Signature sig;
  for (NodeId p : sorted_unique(sensors)) {
    sig.push_back({idx(p, c), p});
  }
  return sig;
}

std::vector<ClassId> undetected_classes(const RelationIndex& idx, std::span<const NodeId> sensors) {
  check_sensors(idx, sensors);
  std::vector<ClassId> out;
  for (const EdgeClass& cls : idx.classes()) {
    if (std::all_of(sensors.begin(), sensors.end(), [&](NodeId p) { return idx(p, cls.id) == 0; })) {
      out.push_back(cls.id);
    }
  }
  return out;
}

std::size_t detection_residual(const RelationIndex& idx, std::span<const NodeId> sensors) {
  return undetected_classes(idx, sensors).size();
}

namespace {

// Class ids grouped by identical order vectors over the sensors.
std::vector<std::vector<ClassId>> signature_groups(const RelationIndex& idx, std::span<const NodeId> sensors) {
  const std::vector<NodeId> s = sorted_unique(sensors);
  std::map<std::vector<int>, std::vector<ClassId>> groups;
  for (const EdgeClass& cls : idx.classes()) {
    std::vector<int> key;
    key.reserve(s.size());
    for (NodeId p : s) {
      key.push_back(idx(p, cls.id));
    }
    groups[key].push_back(cls.id);
  }
  std::vector<std::vector<ClassId>> out;
  for (auto& [key, members] : groups) {
    out.push_back(std::move(members));
  }
  return out;
}

} // namespace

std::vector<ClassId> unresolved_classes(const RelationIndex& idx, std::span<const NodeId> sensors) {
  check_sensors(idx, sensors);
  std::vector<ClassId> out;
  for (const auto& group : signature_groups(idx, sensors)) {
    if (group.size() > 1) {
      out.insert(out.end(), group.begin(), group.end());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t isolation_residual(const RelationIndex& idx, std::span<const NodeId> sensors) {
  return unresolved_classes(idx, sensors).size();
}

std::vector<ClassId> silently_unique(const RelationIndex& idx, std::span<const NodeId> sensors) {
  check_sensors(idx, sensors);
  std::vector<ClassId> out;
  for (const auto& group : signature_groups(idx, sensors)) {
    const ClassId c = group.front();
    if (group.size() == 1 &&
        std::all_of(sensors.begin(), sensors.end(), [&](NodeId p) { return idx(p, c) == 0; })) {
      out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

DetectionCover::DetectionCover(const RelationIndex& idx)
    : idx_(&idx), covered_(idx.class_count(), false), uncovered_(idx.class_count()) {}

std::size_t DetectionCover::residual_with(NodeId v) const {
  std::size_t newly = 0;
  for (std::size_t c = 0; c < covered_.size(); ++c) {
    if (!covered_[c] && (*idx_)(v, static_cast<ClassId>(c)) != 0) {
      ++newly;
    }
  }
  return uncovered_ - newly;
}

void DetectionCover::add(NodeId v) {
  for (std::size_t c = 0; c < covered_.size(); ++c) {
    if (!covered_[c] && (*idx_)(v, static_cast<ClassId>(c)) != 0) {
      covered_[c] = true;
      --uncovered_;
    }
  }
}

SignaturePartition::SignaturePartition(const RelationIndex& idx)
    : idx_(&idx), block_(idx.class_count(), 0), residual_(idx.class_count() > 1 ? idx.class_count() : 0) {}

std::vector<int> SignaturePartition::refine(NodeId v, std::size_t* residual) const {
  const std::size_t count = block_.size();
  const auto stride = static_cast<std::int64_t>(idx_->z()) + 1;
  std::vector<std::pair<std::int64_t, int>> keyed(count);
  for (std::size_t c = 0; c < count; ++c) {
    keyed[c] = {block_[c] * stride + (*idx_)(v, static_cast<ClassId>(c)), static_cast<int>(c)};
  }
  std::sort(keyed.begin(), keyed.end());

  std::vector<int> refined(count);
  std::size_t unresolved = 0;
  int next_block = -1;
  for (std::size_t start = 0; start < count;) {
    std::size_t end = start;
    while (end < count && keyed[end].first == keyed[start].first) {
      ++end;
    }
    ++next_block;
    for (std::size_t i = start; i < end; ++i) {
      refined[static_cast<std::size_t>(keyed[i].second)] = next_block;
    }
    if (end - start > 1) {
      unresolved += end - start;
    }
    start = end;
  }
  *residual = unresolved;
  return refined;
}

std::size_t SignaturePartition::residual_with(NodeId v) const {
  std::size_t r = 0;
  refine(v, &r);
  return r;
}

void SignaturePartition::add(NodeId v) { block_ = refine(v, &residual_); }

void write_relation_csv(std::ostream& out, const RelationIndex& idx) {
  out << "class_id,tail,head,bidirectional";
  for (NodeId p = 0; p < idx.node_count(); ++p) {
    out << ",v" << p + 1;
  }
  out << '\n';
  for (const EdgeClass& cls : idx.classes()) {
    const Edge& e = cls.representative();
    out << cls.id + 1 << ',' << e.tail + 1 << ',' << e.head + 1 << ',' << (cls.bidirectional() ? 1 : 0);
    for (NodeId p = 0; p < idx.node_count(); ++p) {
      out << ',' << idx(p, cls.id);
    }
    out << '\n';
  }
}

} // namespace linkfdi
