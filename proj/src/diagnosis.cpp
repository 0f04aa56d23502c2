#include "linkfdi/diagnosis.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "linkfdi/error.hpp"

namespace linkfdi {

bool ObservedSignature::all_zero() const {
  return std::all_of(orders.begin(), orders.end(), [](int k) { return k == 0; });
}

int ObservedSignature::order_at(NodeId p) const {
  const auto it = std::lower_bound(sensors.begin(), sensors.end(), p);
  if (it == sensors.end() || *it != p) {
    throw InvalidInput("node " + std::to_string(p + 1) + " is not a sensor");
  }
  return orders[static_cast<std::size_t>(it - sensors.begin())];
}

const char* verdict_name(Verdict v) {
  switch (v) {
  case Verdict::NoFailure:
    return "no_failure";
  case Verdict::Detected:
    return "detected";
  case Verdict::Isolated:
    return "isolated";
  }
  return "?";
}

namespace {

std::vector<NodeId> sorted_sensors(std::span<const NodeId> sensors) {
  std::vector<NodeId> s(sensors.begin(), sensors.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

} // namespace

ObservedSignature extract_signature(const JumpTable& jumps, std::span<const NodeId> sensors, int z,
                                    double threshold, double t) {
  if (z > jumps.z()) {
    throw InvalidInput("jump table stops at order " + std::to_string(jumps.z()));
  }
  ObservedSignature sig;
  sig.t = t;
  sig.sensors = sorted_sensors(sensors);
  for (NodeId p : sig.sensors) {
    int first = 0;
    for (int k = 1; k <= z; ++k) {
      if (std::abs(jumps(p, k)) > threshold) {
        first = k;
        break;
      }
    }
    sig.orders.push_back(first);
  }
  return sig;
}

Diagnosis match(const RelationIndex& idx, const ObservedSignature& sig) {
  if (sig.sensors.size() != sig.orders.size()) {
    throw InvalidInput("signature sensors and orders differ in length");
  }
  for (NodeId p : sig.sensors) {
    if (p < 0 || p >= idx.node_count()) {
      throw InvalidInput("sensor " + std::to_string(p + 1) + " out of range");
    }
  }
  Diagnosis d;
  d.signature = sig;
  std::vector<ClassId> hits;
  for (const EdgeClass& cls : idx.classes()) {
    bool same = true;
    for (std::size_t i = 0; i < sig.sensors.size() && same; ++i) {
      same = idx(sig.sensors[i], cls.id) == sig.orders[i];
    }
    if (same) {
      hits.push_back(cls.id);
    }
  }

  if (sig.all_zero()) {
    d.verdict = Verdict::NoFailure;
    d.silent = std::move(hits);
    return d;
  }
  if (hits.empty()) {
    std::string desc;
    for (std::size_t i = 0; i < sig.sensors.size(); ++i) {
      desc += (i ? " " : "") + std::to_string(sig.sensors[i] + 1) + ":" + std::to_string(sig.orders[i]);
    }
    throw InconsistentObservation("no edge class has signature {" + desc + "}");
  }
  d.verdict = hits.size() == 1 ? Verdict::Isolated : Verdict::Detected;
  d.candidates = std::move(hits);
  return d;
}

std::vector<Diagnosis> monitor(const Trajectory& traj, std::span<const NodeId> sensors, const RelationIndex& idx,
                               const InWeighting& a, const std::optional<InWeighting>& abar,
                               const InputSignal& input, double threshold) {
  const int z = idx.z();
  const std::vector<NodeId> s = sorted_sensors(sensors);
  std::vector<Diagnosis> events;
  if (traj.samples() < 2) {
    return events;
  }
  if (traj.failure_index && !abar) {
    throw InvalidInput("trajectory has a failure but no post-failure weighting was given");
  }
  auto regime = [&](std::size_t sample) -> const InWeighting& {
    return traj.post_failure(sample) ? *abar : a;
  };
  for (std::size_t i = 0; i + 1 < traj.samples(); ++i) {
    const InWeighting& left = regime(i);
    const InWeighting& right = regime(i + 1);
    if (&left == &right) {
      continue;
    }
    const Eigen::MatrixXd before = state_derivatives(left, input, traj.x[i], traj.t[i], z);
    const Eigen::MatrixXd after = state_derivatives(right, input, traj.x[i], traj.t[i], z);
    JumpTable jumps(s, z);
    for (NodeId p : s) {
      for (int k = 1; k <= z; ++k) {
        jumps.at(p, k) = after(p, k) - before(p, k);
      }
    }
    const ObservedSignature sig = extract_signature(jumps, s, z, threshold, traj.t[i]);
    if (!sig.all_zero()) {
      events.push_back(match(idx, sig));
    }
  }
  return events;
}

nlohmann::json diagnosis_to_json(const Diagnosis& d, const RelationIndex& idx) {
  auto classes = [&](const std::vector<ClassId>& ids) {
    nlohmann::json out = nlohmann::json::array();
    for (ClassId c : ids) {
      nlohmann::json edges = nlohmann::json::array();
      for (const Edge& e : idx.classes()[static_cast<std::size_t>(c)].members) {
        edges.push_back({e.tail + 1, e.head + 1});
      }
      out.push_back({{"class_id", c + 1}, {"edges", edges}});
    }
    return out;
  };
  nlohmann::json sig = nlohmann::json::array();
  for (std::size_t i = 0; i < d.signature.sensors.size(); ++i) {
    sig.push_back({{"node", d.signature.sensors[i] + 1}, {"k", d.signature.orders[i]}});
  }
  nlohmann::json j = {{"t_f", d.signature.t},
                      {"verdict", verdict_name(d.verdict)},
                      {"candidates", classes(d.candidates)},
                      {"signature", sig}};
  if (!d.silent.empty()) {
    j["silent"] = classes(d.silent);
  }
  return j;
}

void write_events(std::ostream& out, const std::vector<Diagnosis>& events, const RelationIndex& idx) {
  for (const Diagnosis& d : events) {
    out << diagnosis_to_json(d, idx).dump() << '\n';
  }
}

} // namespace linkfdi
