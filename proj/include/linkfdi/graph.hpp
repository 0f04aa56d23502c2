#pragma once

#include <compare>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace linkfdi {

/// Zero-based node index. Files, JSON and CSV use 1-based ids; conversion
/// happens only at the I/O boundary.
using NodeId = int;

/// Default tolerance for walk-sum and genericity checks.
inline constexpr double kDefaultTolerance = 1e-9;

/// Directed edge tail -> head. The weight of this edge lives at a(head, tail).
struct Edge {
  NodeId tail = 0;
  NodeId head = 0;

  bool is_self_loop() const noexcept { return tail == head; }
  Edge reversed() const noexcept { return {head, tail}; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable digraph with an optional set of bidirectional edges.
///
/// Edges are kept sorted and unique. A bidirectional edge always has its
/// reverse present and flagged too; self-loops are never bidirectional.
class Digraph {
public:
  Digraph() = default;

  /// Throws InvalidInput on out-of-range ids, duplicate edges, a
  /// bidirectional edge whose reverse is missing, or a bidirectional self-loop.
  /// Listing only one orientation of a bidirectional pair is accepted.
  Digraph(int n, std::vector<Edge> edges, const std::vector<Edge>& bidirectional = {});

  /// Every unordered pair becomes two mutually reverse bidirectional edges.
  static Digraph undirected(int n, const std::vector<Edge>& pairs);

  int size() const noexcept { return n_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  bool has_edge(NodeId tail, NodeId head) const;
  bool has_edge(const Edge& e) const { return has_edge(e.tail, e.head); }
  bool is_bidirectional(const Edge& e) const;

  std::span<const NodeId> out_neighbors(NodeId v) const;
  std::vector<Edge> in_edges(NodeId v) const;
  std::vector<Edge> bidirectional_edges() const;
  std::vector<Edge> self_loops() const;

  /// True when every non-self-loop edge is bidirectional.
  bool is_undirected() const;

  /// Copy with the given edges removed. A bidirectional edge whose partner is
  /// removed loses its flag.
  Digraph without(std::span<const Edge> removed) const;

  /// Copy with the bidirectional flags replaced (edges unchanged).
  Digraph with_bidirectional(const std::vector<Edge>& bidirectional) const;

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.marks_ == b.marks_;
  }

private:
  enum : unsigned char { kNone = 0, kEdge = 1, kBidirectional = 2 };

  std::size_t slot(NodeId tail, NodeId head) const {
    return static_cast<std::size_t>(tail) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(head);
  }
  void check_node(NodeId v) const;

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<unsigned char> marks_;
  std::vector<std::vector<NodeId>> out_;
};

/// Dense in-weighting: entry (p, q) weights edge q -> p and must be zero when
/// that edge is absent.
class InWeighting {
public:
  InWeighting() = default;

  /// Throws InvalidInput on a shape mismatch or a nonzero entry off the edge set.
  InWeighting(const Digraph& g, Eigen::MatrixXd a);

  /// Unit weight on every edge.
  static InWeighting unit(const Digraph& g);

  /// Consensus weighting -L: a(p, q) = 1 on each edge q -> p, a(p, p) = -indegree.
  /// Nodes with positive in-degree need a self-loop in g.
  static InWeighting consensus(const Digraph& g);

  int size() const noexcept { return static_cast<int>(a_.rows()); }
  const Eigen::MatrixXd& matrix() const noexcept { return a_; }
  double operator()(NodeId p, NodeId q) const { return a_(p, q); }

  /// True when every row sums to zero within tol.
  bool has_zero_row_sums(double tol = kDefaultTolerance) const;

  /// Sparsity check against another digraph.
  bool is_consistent_with(const Digraph& g) const;

private:
  Eigen::MatrixXd a_;
};

/// A digraph together with an in-weighting on it.
struct Network {
  Digraph graph;
  InWeighting weights;
};

/// Copy of g with a self-loop on every node of positive in-degree, so a
/// consensus weighting fits its sparsity.
Digraph with_consensus_self_loops(const Digraph& g);

/// Hop distances between all ordered node pairs.
class DistanceTable {
public:
  static constexpr int kInfinity = std::numeric_limits<int>::max();

  DistanceTable() = default;
  explicit DistanceTable(int n) : n_(n), d_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), kInfinity) {}

  int size() const noexcept { return n_; }

  /// Length of a shortest from -> to walk, or kInfinity.
  int operator()(NodeId from, NodeId to) const { return d_[index(from, to)]; }
  int& at(NodeId from, NodeId to) { return d_[index(from, to)]; }
  bool reachable(NodeId from, NodeId to) const { return (*this)(from, to) != kInfinity; }

  friend bool operator==(const DistanceTable&, const DistanceTable&) = default;

private:
  std::size_t index(NodeId from, NodeId to) const {
    return static_cast<std::size_t>(from) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(to);
  }

  int n_ = 0;
  std::vector<int> d_;
};

/// BFS from every node on the unweighted digraph.
DistanceTable all_pairs_distances(const Digraph& g);

struct Diameter {
  int value = 0;                   ///< largest finite distance
  bool has_unreachable_pairs = false;

  /// Diameter in the strict sense (infinite when some pair is unreachable).
  bool finite() const noexcept { return !has_unreachable_pairs; }
};

/// Throws InvalidInput for the empty graph.
Diameter diameter(const Digraph& g);
Diameter diameter(const DistanceTable& dist);

/// Powers A^0 .. A^max of a dense matrix, built by repeated multiplication.
class MatrixPowers {
public:
  MatrixPowers(const Eigen::MatrixXd& a, int max_power);

  int max_power() const noexcept { return static_cast<int>(powers_.size()) - 1; }
  const Eigen::MatrixXd& operator[](int k) const { return powers_.at(static_cast<std::size_t>(k)); }

private:
  std::vector<Eigen::MatrixXd> powers_;
};

/// [A^k](p, q): the summed weight of all length-k walks q -> p.
double phi_matrix(const InWeighting& a, int k, NodeId q, NodeId p);

/// Brute-force walk enumeration; same quantity as phi_matrix.
/// Throws OracleScaleExceeded when k > 12 or n > 12.
double phi_enumerate(const Digraph& g, const InWeighting& a, int k, NodeId q, NodeId p);

struct WalkSumViolation {
  NodeId from = 0;
  NodeId to = 0;
  int distance = 0;
  double walk_sum = 0.0;
};

/// Reachable pairs whose shortest-walk weight sum has magnitude <= tol.
/// An empty result means the in-weighting is generic in this sense.
std::vector<WalkSumViolation> check_assumption1(const Digraph& g, const InWeighting& a,
                                                const DistanceTable& dist,
                                                double tol = kDefaultTolerance);
std::vector<WalkSumViolation> check_assumption1(const Digraph& g, const InWeighting& a,
                                                double tol = kDefaultTolerance);

} // namespace linkfdi
