#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "linkfdi/failure.hpp"
#include "linkfdi/graph.hpp"
#include "linkfdi/signal.hpp"

namespace linkfdi {

/// Sampled state trajectory. When a failure was injected, `failure_index`
/// names the sample taken at t_f; samples after it run under the perturbed
/// matrix.
struct Trajectory {
  std::vector<double> t;
  std::vector<Eigen::VectorXd> x;
  std::optional<std::size_t> failure_index;

  std::size_t samples() const noexcept { return t.size(); }
  bool post_failure(std::size_t s) const noexcept { return failure_index && s > *failure_index; }
  double failure_time() const;
  const Eigen::VectorXd& state_at_failure() const;
};

inline constexpr double kDefaultStep = 1e-3;

/// Fixed-step RK4 on x' = A x + B w before t_f and x' = Abar x + B w after.
///
/// t_f is snapped to the nearest grid point t0 + m * step and recorded as a
/// sample; the state is carried across it unchanged. Without a scenario the
/// whole run uses A. Throws InvalidInput on bad times or shapes and
/// SimulationDiverged on a non-finite state.
Trajectory simulate(const Digraph& g, const InWeighting& a, const InputSignal& input, const Eigen::VectorXd& x0,
                    double t0, const std::optional<FailureScenario>& scenario, double t_end,
                    double step = kDefaultStep);

/// Jump in the k-th derivative of x_p at the trajectory's failure sample,
/// from the closed-form derivative expressions on each side of t_f.
/// A trajectory without failure gives 0. Throws InvalidInput for k < 1 or
/// when the input lacks the needed derivatives.
double numeric_jump_estimate(const Trajectory& traj, const InWeighting& a, const InWeighting& abar,
                             const InputSignal& input, NodeId p, int k);

/// CSV with columns t, x1..xn, post_failure.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
/// Throws ParseError with the offending line.
Trajectory read_trajectory_csv(std::istream& in);

} // namespace linkfdi
