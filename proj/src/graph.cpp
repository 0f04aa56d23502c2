#include "linkfdi/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <string>

#include "linkfdi/error.hpp"

namespace linkfdi {

namespace {

std::string edge_str(const Edge& e) {
  return "(" + std::to_string(e.tail + 1) + "," + std::to_string(e.head + 1) + ")";
}

} // namespace

Digraph::Digraph(int n, std::vector<Edge> edges, const std::vector<Edge>& bidirectional) : n_(n) {
  if (n < 0) {
    throw InvalidInput("node count must be nonnegative");
  }
  marks_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), kNone);
  out_.resize(static_cast<std::size_t>(n));

  for (const Edge& e : edges) {
    check_node(e.tail);
    check_node(e.head);
    auto& m = marks_[slot(e.tail, e.head)];
    if (m != kNone) {
      throw InvalidInput("duplicate edge " + edge_str(e));
    }
    m = kEdge;
  }
  for (const Edge& e : bidirectional) {
    check_node(e.tail);
    check_node(e.head);
    if (e.is_self_loop()) {
      throw InvalidInput("self-loop " + edge_str(e) + " cannot be bidirectional");
    }
    if (marks_[slot(e.tail, e.head)] == kNone || marks_[slot(e.head, e.tail)] == kNone) {
      throw InvalidInput("bidirectional edge " + edge_str(e) + " needs both orientations present");
    }
    marks_[slot(e.tail, e.head)] = kBidirectional;
    marks_[slot(e.head, e.tail)] = kBidirectional;
  }

  std::sort(edges.begin(), edges.end());
  edges_ = std::move(edges);
  for (const Edge& e : edges_) {
    out_[static_cast<std::size_t>(e.tail)].push_back(e.head);
  }
}

Digraph Digraph::undirected(int n, const std::vector<Edge>& pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size() * 2);
  for (const Edge& e : pairs) {
    edges.push_back(e);
    edges.push_back(e.reversed());
  }
  return Digraph(n, std::move(edges), pairs);
}

void Digraph::check_node(NodeId v) const {
  if (v < 0 || v >= n_) {
    throw InvalidInput("node id " + std::to_string(v + 1) + " out of range 1.." + std::to_string(n_));
  }
}

bool Digraph::has_edge(NodeId tail, NodeId head) const {
  if (tail < 0 || tail >= n_ || head < 0 || head >= n_) {
    return false;
  }
  return marks_[slot(tail, head)] != kNone;
}

bool Digraph::is_bidirectional(const Edge& e) const {
  return has_edge(e) && marks_[slot(e.tail, e.head)] == kBidirectional;
}

std::span<const NodeId> Digraph::out_neighbors(NodeId v) const {
  check_node(v);
  return out_[static_cast<std::size_t>(v)];
}

std::vector<Edge> Digraph::in_edges(NodeId v) const {
  check_node(v);
  std::vector<Edge> result;
  for (const Edge& e : edges_) {
    if (e.head == v) {
      result.push_back(e);
    }
  }
  return result;
}

std::vector<Edge> Digraph::bidirectional_edges() const {
  std::vector<Edge> result;
  for (const Edge& e : edges_) {
    if (marks_[slot(e.tail, e.head)] == kBidirectional) {
      result.push_back(e);
    }
  }
  return result;
}

std::vector<Edge> Digraph::self_loops() const {
  std::vector<Edge> result;
  for (const Edge& e : edges_) {
    if (e.is_self_loop()) {
      result.push_back(e);
    }
  }
  return result;
}

bool Digraph::is_undirected() const {
  return std::all_of(edges_.begin(), edges_.end(),
                     [&](const Edge& e) { return e.is_self_loop() || is_bidirectional(e); });
}

Digraph Digraph::without(std::span<const Edge> removed) const {
  std::vector<Edge> kept;
  kept.reserve(edges_.size());
  for (const Edge& e : edges_) {
    if (std::find(removed.begin(), removed.end(), e) == removed.end()) {
      kept.push_back(e);
    }
  }
  std::vector<Edge> bidir;
  for (const Edge& e : kept) {
    if (is_bidirectional(e) && std::find(removed.begin(), removed.end(), e.reversed()) == removed.end()) {
      bidir.push_back(e);
    }
  }
  return Digraph(n_, std::move(kept), bidir);
}

Digraph Digraph::with_bidirectional(const std::vector<Edge>& bidirectional) const {
  return Digraph(n_, edges_, bidirectional);
}

InWeighting::InWeighting(const Digraph& g, Eigen::MatrixXd a) : a_(std::move(a)) {
  if (a_.rows() != g.size() || a_.cols() != g.size()) {
    throw InvalidInput("in-weighting shape " + std::to_string(a_.rows()) + "x" + std::to_string(a_.cols()) +
                       " does not match " + std::to_string(g.size()) + " nodes");
  }
  if (!is_consistent_with(g)) {
    throw InvalidInput("in-weighting has a nonzero entry on a missing edge");
  }
}

InWeighting InWeighting::unit(const Digraph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.size(), g.size());
  for (const Edge& e : g.edges()) {
    a(e.head, e.tail) = 1.0;
  }
  return InWeighting(g, std::move(a));
}

InWeighting InWeighting::consensus(const Digraph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.size(), g.size());
  for (const Edge& e : g.edges()) {
    if (!e.is_self_loop()) {
      a(e.head, e.tail) = 1.0;
      a(e.head, e.head) -= 1.0;
    }
  }
  return InWeighting(g, std::move(a));
}

bool InWeighting::has_zero_row_sums(double tol) const {
  for (Eigen::Index p = 0; p < a_.rows(); ++p) {
    if (std::abs(a_.row(p).sum()) > tol) {
      return false;
    }
  }
  return true;
}

bool InWeighting::is_consistent_with(const Digraph& g) const {
  if (a_.rows() != g.size() || a_.cols() != g.size()) {
    return false;
  }
  for (NodeId p = 0; p < g.size(); ++p) {
    for (NodeId q = 0; q < g.size(); ++q) {
      if (a_(p, q) != 0.0 && !g.has_edge(q, p)) {
        return false;
      }
    }
  }
  return true;
}

Digraph with_consensus_self_loops(const Digraph& g) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  std::vector<bool> has_in(static_cast<std::size_t>(g.size()), false);
  for (const Edge& e : edges) {
    if (!e.is_self_loop()) {
      has_in[static_cast<std::size_t>(e.head)] = true;
    }
  }
  for (NodeId v = 0; v < g.size(); ++v) {
    if (has_in[static_cast<std::size_t>(v)] && !g.has_edge(v, v)) {
      edges.push_back({v, v});
    }
  }
  return Digraph(g.size(), std::move(edges), g.bidirectional_edges());
}

DistanceTable all_pairs_distances(const Digraph& g) {
  const int n = g.size();
  DistanceTable dist(n);
  std::deque<NodeId> queue;
  for (NodeId s = 0; s < n; ++s) {
    dist.at(s, s) = 0;
    queue.assign(1, s);
    while (!queue.empty()) {
      const NodeId u = queue.front();
      queue.pop_front();
      for (NodeId v : g.out_neighbors(u)) {
        if (!dist.reachable(s, v)) {
          dist.at(s, v) = dist(s, u) + 1;
          queue.push_back(v);
        }
      }
    }
  }
  return dist;
}

Diameter diameter(const DistanceTable& dist) {
  if (dist.size() == 0) {
    throw InvalidInput("diameter of an empty graph is undefined");
  }
  Diameter d;
  for (NodeId q = 0; q < dist.size(); ++q) {
    for (NodeId p = 0; p < dist.size(); ++p) {
      if (dist.reachable(q, p)) {
        d.value = std::max(d.value, dist(q, p));
      } else {
        d.has_unreachable_pairs = true;
      }
    }
  }
  return d;
}

Diameter diameter(const Digraph& g) {
  if (g.size() == 0) {
    throw InvalidInput("diameter of an empty graph is undefined");
  }
  return diameter(all_pairs_distances(g));
}

MatrixPowers::MatrixPowers(const Eigen::MatrixXd& a, int max_power) {
  if (max_power < 0) {
    throw InvalidInput("max_power must be nonnegative");
  }
  powers_.reserve(static_cast<std::size_t>(max_power) + 1);
  powers_.push_back(Eigen::MatrixXd::Identity(a.rows(), a.cols()));
  for (int k = 1; k <= max_power; ++k) {
    powers_.push_back(a * powers_.back());
  }
}

double phi_matrix(const InWeighting& a, int k, NodeId q, NodeId p) {
  if (k < 0) {
    throw InvalidInput("walk length must be nonnegative");
  }
  const int n = a.size();
  if (q < 0 || q >= n || p < 0 || p >= n) {
    throw InvalidInput("node id out of range");
  }
  // Column q of A^k, one multiplication per step.
  Eigen::VectorXd v = Eigen::VectorXd::Unit(n, q);
  for (int step = 0; step < k; ++step) {
    v = a.matrix() * v;
  }
  return v(p);
}

double phi_enumerate(const Digraph& g, const InWeighting& a, int k, NodeId q, NodeId p) {
  constexpr int kMaxLength = 12;
  constexpr int kMaxNodes = 12;
  if (k > kMaxLength || g.size() > kMaxNodes) {
    throw OracleScaleExceeded("walk enumeration is limited to k <= 12 and n <= 12");
  }
  if (k < 0) {
    throw InvalidInput("walk length must be nonnegative");
  }
  if (q < 0 || q >= g.size() || p < 0 || p >= g.size()) {
    throw InvalidInput("node id out of range");
  }

  double total = 0.0;
  std::function<void(NodeId, int, double)> extend = [&](NodeId at, int remaining, double weight) {
    if (remaining == 0) {
      if (at == p) {
        total += weight;
      }
      return;
    }
    for (NodeId next : g.out_neighbors(at)) {
      extend(next, remaining - 1, weight * a(next, at));
    }
  };
  extend(q, k, 1.0);
  return total;
}

std::vector<WalkSumViolation> check_assumption1(const Digraph& g, const InWeighting& a,
                                                const DistanceTable& dist, double tol) {
  const int n = g.size();
  std::vector<WalkSumViolation> violations;
  for (NodeId q = 0; q < n; ++q) {
    int farthest = 0;
    for (NodeId p = 0; p < n; ++p) {
      if (dist.reachable(q, p)) {
        farthest = std::max(farthest, dist(q, p));
      }
    }
    Eigen::VectorXd column = Eigen::VectorXd::Unit(n, q);
    for (int m = 0; m <= farthest; ++m) {
      if (m > 0) {
        column = a.matrix() * column;
      }
      for (NodeId p = 0; p < n; ++p) {
        if (dist(q, p) == m && std::abs(column(p)) <= tol) {
          violations.push_back({q, p, m, column(p)});
        }
      }
    }
  }
  return violations;
}

std::vector<WalkSumViolation> check_assumption1(const Digraph& g, const InWeighting& a, double tol) {
  return check_assumption1(g, a, all_pairs_distances(g), tol);
}

} // namespace linkfdi
