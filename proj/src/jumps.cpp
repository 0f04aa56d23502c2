#include "linkfdi/jumps.hpp"

#include <algorithm>
#include <string>

#include "linkfdi/error.hpp"

namespace linkfdi {

JumpTable::JumpTable(std::vector<NodeId> nodes, int z) : nodes_(std::move(nodes)), z_(z) {
  if (z < 0) {
    throw InvalidInput("z must be nonnegative");
  }
  values_.assign(nodes_.size() * static_cast<std::size_t>(z + 1), 0.0);
}

bool JumpTable::contains(NodeId p) const { return std::find(nodes_.begin(), nodes_.end(), p) != nodes_.end(); }

std::size_t JumpTable::slot(NodeId p, int k) const {
  const auto it = std::find(nodes_.begin(), nodes_.end(), p);
  if (it == nodes_.end()) {
    throw InvalidInput("node " + std::to_string(p + 1) + " is not in the jump table");
  }
  if (k < 0 || k > z_) {
    throw InvalidInput("order " + std::to_string(k) + " outside 0.." + std::to_string(z_));
  }
  return static_cast<std::size_t>(it - nodes_.begin()) * static_cast<std::size_t>(z_ + 1) +
         static_cast<std::size_t>(k);
}

double JumpTable::operator()(NodeId p, int k) const { return values_[slot(p, k)]; }

double& JumpTable::at(NodeId p, int k) { return values_[slot(p, k)]; }

namespace {

void check_shapes(const InWeighting& a, const InWeighting& abar, const InputSignal& input, const Eigen::VectorXd& x) {
  if (a.size() != abar.size() || x.size() != a.size() || input.state_dimension() != a.size()) {
    throw InvalidInput("dimension mismatch between A, Abar, B and x");
  }
}

// Row p of (Abar^m - A^m) for m = 0..k.
std::vector<Eigen::RowVectorXd> power_row_differences(const InWeighting& a, const InWeighting& abar, NodeId p,
                                                      int k) {
  const int n = a.size();
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Unit(n, p);
  Eigen::RowVectorXd row_bar = row;
  std::vector<Eigen::RowVectorXd> diffs;
  diffs.reserve(static_cast<std::size_t>(k) + 1);
  for (int m = 0; m <= k; ++m) {
    if (m > 0) {
      row = row * a.matrix();
      row_bar = row_bar * abar.matrix();
    }
    diffs.push_back(row_bar - row);
  }
  return diffs;
}

double jump_from_differences(const std::vector<Eigen::RowVectorXd>& diffs, const std::vector<Eigen::VectorXd>& forcing,
                             const Eigen::VectorXd& x_tf, int k) {
  double jump = diffs[static_cast<std::size_t>(k)].dot(x_tf);
  for (int m = 0; m <= k - 1; ++m) {
    jump += diffs[static_cast<std::size_t>(m)].dot(forcing[static_cast<std::size_t>(k - 1 - m)]);
  }
  return jump;
}

} // namespace

double oracle_jump(const InWeighting& a, const InWeighting& abar, const InputSignal& input,
                   const Eigen::VectorXd& x_tf, double t_f, NodeId p, int k) {
  check_shapes(a, abar, input, x_tf);
  if (k < 1) {
    throw InvalidInput("jump order must be at least 1");
  }
  if (p < 0 || p >= a.size()) {
    throw InvalidInput("node id out of range");
  }
  std::vector<Eigen::VectorXd> forcing;
  for (int order = 0; order < k; ++order) {
    forcing.push_back(input.forcing(order, t_f));
  }
  return jump_from_differences(power_row_differences(a, abar, p, k), forcing, x_tf, k);
}

JumpTable oracle_jump_table(const InWeighting& a, const InWeighting& abar, const InputSignal& input,
                            const Eigen::VectorXd& x_tf, double t_f, std::span<const NodeId> nodes, int z) {
  check_shapes(a, abar, input, x_tf);
  JumpTable table(std::vector<NodeId>(nodes.begin(), nodes.end()), z);
  std::vector<Eigen::VectorXd> forcing;
  for (int order = 0; order < z; ++order) {
    forcing.push_back(input.forcing(order, t_f));
  }
  for (NodeId p : nodes) {
    if (p < 0 || p >= a.size()) {
      throw InvalidInput("node id out of range");
    }
    const auto diffs = power_row_differences(a, abar, p, z);
    for (int k = 1; k <= z; ++k) {
      table.at(p, k) = jump_from_differences(diffs, forcing, x_tf, k);
    }
  }
  return table;
}

double predict_jump_theorem1(const DistanceTable& dist, const InWeighting& a, const InWeighting& abar,
                             const Eigen::VectorXd& x_tf, Edge failed, NodeId p, int k) {
  if (a.size() != abar.size() || x_tf.size() != a.size() || dist.size() != a.size()) {
    throw InvalidInput("dimension mismatch between distances, A, Abar and x");
  }
  if (k < 0) {
    throw InvalidInput("jump order must be nonnegative");
  }
  if (k == 0) {
    return 0.0;
  }
  const int reach = dist(failed.tail, p);
  if (reach != DistanceTable::kInfinity && k > reach) {
    throw UncharacterizedOrder("order " + std::to_string(k) + " exceeds dist(tail, p) = " + std::to_string(reach));
  }
  if (k < reach) {
    return 0.0;
  }
  const NodeId i = failed.head;
  const double injected = (abar.matrix().row(i) - a.matrix().row(i)).dot(x_tf);
  return phi_matrix(a, k - 1, i, p) * injected;
}

double predict_jump_theorem1(const Digraph& g, const InWeighting& a, const InWeighting& abar,
                             const Eigen::VectorXd& x_tf, Edge failed, NodeId p, int k) {
  if (!g.has_edge(failed)) {
    throw InvalidInput("failed edge is not in the graph");
  }
  return predict_jump_theorem1(all_pairs_distances(g), a, abar, x_tf, failed, p, k);
}

namespace {

bool finite(int d) { return d != DistanceTable::kInfinity; }

} // namespace

int first_jump_order(const DistanceTable& dist, const FailureScenario& s, NodeId p, int z) {
  if (p < 0 || p >= dist.size()) {
    throw InvalidInput("node id " + std::to_string(p + 1) + " out of range");
  }
  switch (s.kind) {
  case FailureKind::Unidirectional: {
    const int di = dist(s.edge.head, p);
    const int dj = dist(s.edge.tail, p);
    return finite(di) && finite(dj) && di + 1 == dj && dj <= z ? dj : 0;
  }
  case FailureKind::Bidirectional: {
    const int du = dist(s.edge.tail, p);
    const int dv = dist(s.edge.head, p);
    if (!finite(du) || !finite(dv)) {
      return 0;
    }
    const int hi = std::max(du, dv);
    return hi - std::min(du, dv) == 1 && hi <= z ? hi : 0;
  }
  case FailureKind::NodeIncoming: {
    const int di = dist(s.node, p);
    return finite(di) && di + 1 <= z ? di + 1 : 0;
  }
  }
  return 0;
}

int first_jump_order(const Digraph& g, const FailureScenario& s, NodeId p, int z) {
  return first_jump_order(all_pairs_distances(g), s, p, z);
}

int onset_order(const DistanceTable& dist, const FailureScenario& s, NodeId p, int z) {
  if (p < 0 || p >= dist.size()) {
    throw InvalidInput("node id " + std::to_string(p + 1) + " out of range");
  }
  int nearest = DistanceTable::kInfinity;
  for (NodeId r : s.affected_rows()) {
    nearest = std::min(nearest, dist(r, p));
  }
  return finite(nearest) && nearest + 1 <= z ? nearest + 1 : 0;
}

Eigen::MatrixXd state_derivatives(const InWeighting& a, const InputSignal& input, const Eigen::VectorXd& x,
                                  double t, int z) {
  if (x.size() != a.size() || input.state_dimension() != a.size()) {
    throw InvalidInput("dimension mismatch between A, B and x");
  }
  if (z < 0) {
    throw InvalidInput("derivative order must be nonnegative");
  }
  // x^(k) = A x^(k-1) + B w^(k-1)
  Eigen::MatrixXd out(a.size(), z + 1);
  out.col(0) = x;
  for (int k = 1; k <= z; ++k) {
    out.col(k) = a.matrix() * out.col(k - 1) + input.forcing(k - 1, t);
  }
  return out;
}

} // namespace linkfdi
