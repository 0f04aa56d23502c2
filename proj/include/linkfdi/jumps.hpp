#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "linkfdi/failure.hpp"
#include "linkfdi/graph.hpp"
#include "linkfdi/signal.hpp"

namespace linkfdi {

/// Jump tolerance for values computed from the exact matrix-power expression.
inline constexpr double kOracleJumpTolerance = 1e-7;
/// Jump tolerance for values derived from a simulated state.
inline constexpr double kSimulatedJumpTolerance = 1e-4;

/// Jumps Delta(p, k) of the k-th output derivative for a set of observed
/// nodes and orders 0..z. Order 0 is always zero (states are continuous).
class JumpTable {
public:
  JumpTable() = default;
  JumpTable(std::vector<NodeId> nodes, int z);

  int z() const noexcept { return z_; }
  std::span<const NodeId> nodes() const noexcept { return nodes_; }
  bool contains(NodeId p) const;

  /// Throws InvalidInput for an unobserved node or an order outside 0..z.
  double operator()(NodeId p, int k) const;
  double& at(NodeId p, int k);

private:
  std::size_t slot(NodeId p, int k) const;

  std::vector<NodeId> nodes_;
  int z_ = 0;
  std::vector<double> values_;
};

/// Exact jump in the k-th derivative of x_p at t_f:
///
///   e_p' (Abar^k - A^k) x(t_f) + sum_{m=0}^{k-1} e_p' (Abar^m - A^m) B w^(k-1-m)(t_f)
///
/// evaluated with row vectors e_p' A^m, so walks that cannot reach the changed
/// rows cancel exactly. Throws InvalidInput for k < 1 or mismatched sizes.
double oracle_jump(const InWeighting& a, const InWeighting& abar, const InputSignal& input,
                   const Eigen::VectorXd& x_tf, double t_f, NodeId p, int k);

/// oracle_jump for every node in `nodes` and every order 0..z.
JumpTable oracle_jump_table(const InWeighting& a, const InWeighting& abar, const InputSignal& input,
                            const Eigen::VectorXd& x_tf, double t_f, std::span<const NodeId> nodes, int z);

/// Walk-sum prediction for the failure of edge (j, i):
///   [A^(k-1)](p, i) * sum_q (abar(i, q) - a(i, q)) x_q(t_f)   at k = dist(j, p),
///   0                                                         for k < dist(j, p).
/// k = 0 returns 0. Orders above dist(j, p) throw UncharacterizedOrder.
double predict_jump_theorem1(const Digraph& g, const InWeighting& a, const InWeighting& abar,
                             const Eigen::VectorXd& x_tf, Edge failed, NodeId p, int k);
double predict_jump_theorem1(const DistanceTable& dist, const InWeighting& a, const InWeighting& abar,
                             const Eigen::VectorXd& x_tf, Edge failed, NodeId p, int k);

/// Structural first-jump order at p, 0 meaning "none predicted up to z".
///
/// Unidirectional (j, i): dist(i, p) + 1 when that equals dist(j, p) and is <= z.
/// Bidirectional {i, j}: the larger endpoint distance when the two differ by
/// exactly one and the larger is <= z. NodeIncoming i: dist(i, p) + 1 when <= z.
/// Distances are those of the pre-failure digraph.
int first_jump_order(const DistanceTable& dist, const FailureScenario& s, NodeId p, int z);
int first_jump_order(const Digraph& g, const FailureScenario& s, NodeId p, int z);

/// Order at which the jump at p first appears in the dynamics for generic
/// weights and states: min over changed rows r of dist(r, p) + 1, or 0 when
/// that exceeds z or no changed row reaches p. Unlike first_jump_order this
/// does not require the tail to lie on a shortest path.
int onset_order(const DistanceTable& dist, const FailureScenario& s, NodeId p, int z);

/// Output derivatives x^(k)(t) for k = 0..z under x' = A x + B w, evaluated in
/// closed form at state x. Column k holds the k-th derivative of every node.
Eigen::MatrixXd state_derivatives(const InWeighting& a, const InputSignal& input, const Eigen::VectorXd& x,
                                  double t, int z);

} // namespace linkfdi
