#include "linkfdi/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>

#include "linkfdi/error.hpp"
#include "linkfdi/jumps.hpp"

namespace linkfdi {

double Trajectory::failure_time() const {
  if (!failure_index) {
    throw InvalidInput("trajectory has no failure");
  }
  return t[*failure_index];
}

const Eigen::VectorXd& Trajectory::state_at_failure() const {
  if (!failure_index) {
    throw InvalidInput("trajectory has no failure");
  }
  return x[*failure_index];
}

namespace {

Eigen::VectorXd rk4_step(const Eigen::MatrixXd& a, const InputSignal& input, const Eigen::VectorXd& x, double t,
                         double h) {
  auto f = [&](double tau, const Eigen::VectorXd& y) -> Eigen::VectorXd { return a * y + input.forcing(0, tau); };
  const Eigen::VectorXd k1 = f(t, x);
  const Eigen::VectorXd k2 = f(t + h / 2, x + h / 2 * k1);
  const Eigen::VectorXd k3 = f(t + h / 2, x + h / 2 * k2);
  const Eigen::VectorXd k4 = f(t + h, x + h * k3);
  return x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
}

} // namespace

Trajectory simulate(const Digraph& g, const InWeighting& a, const InputSignal& input, const Eigen::VectorXd& x0,
                    double t0, const std::optional<FailureScenario>& scenario, double t_end, double step) {
  const int n = g.size();
  if (a.size() != n || x0.size() != n || input.state_dimension() != n) {
    throw InvalidInput("dimension mismatch between graph, A, B and x0");
  }
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw InvalidInput("step must be positive");
  }
  if (!(t_end > t0)) {
    throw InvalidInput("t_end must exceed t0");
  }
  const auto steps = static_cast<std::size_t>(std::llround((t_end - t0) / step));
  if (steps == 0) {
    throw InvalidInput("time span shorter than one step");
  }

  std::optional<std::size_t> failure_index;
  Eigen::MatrixXd post = a.matrix();
  if (scenario) {
    if (!(scenario->t_f > t0 && scenario->t_f < t_end)) {
      throw InvalidInput("failure time must lie strictly inside (t0, t_end)");
    }
    const auto m = static_cast<std::size_t>(std::llround((scenario->t_f - t0) / step));
    failure_index = std::clamp<std::size_t>(m, 1, steps - 1);
    post = apply_failure(g, a, *scenario).weights.matrix();
  }

  Trajectory traj;
  traj.failure_index = failure_index;
  traj.t.reserve(steps + 1);
  traj.x.reserve(steps + 1);
  traj.t.push_back(t0);
  traj.x.push_back(x0);
  for (std::size_t s = 0; s < steps; ++s) {
    const double t = t0 + static_cast<double>(s) * step;
    const bool failed = failure_index && s >= *failure_index;
    Eigen::VectorXd next = rk4_step(failed ? post : a.matrix(), input, traj.x.back(), t, step);
    if (!next.allFinite()) {
      throw SimulationDiverged(t + step, "state became non-finite at t = " + std::to_string(t + step));
    }
    traj.t.push_back(t0 + static_cast<double>(s + 1) * step);
    traj.x.push_back(std::move(next));
  }
  return traj;
}

double numeric_jump_estimate(const Trajectory& traj, const InWeighting& a, const InWeighting& abar,
                             const InputSignal& input, NodeId p, int k) {
  if (k < 1) {
    throw InvalidInput("jump order must be at least 1");
  }
  if (k - 1 > input.differentiability()) {
    throw InvalidInput("input has only " + std::to_string(input.differentiability()) +
                       " derivatives; order " + std::to_string(k) + " needs " + std::to_string(k - 1));
  }
  if (p < 0 || p >= a.size()) {
    throw InvalidInput("node id out of range");
  }
  if (!traj.failure_index) {
    return 0.0;
  }
  const double t_f = traj.failure_time();
  const Eigen::VectorXd& x = traj.state_at_failure();
  const Eigen::MatrixXd before = state_derivatives(a, input, x, t_f, k);
  const Eigen::MatrixXd after = state_derivatives(abar, input, x, t_f, k);
  return after(p, k) - before(p, k);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const Eigen::Index n = traj.x.empty() ? 0 : traj.x.front().size();
  out << "t";
  for (Eigen::Index i = 0; i < n; ++i) {
    out << ",x" << i + 1;
  }
  out << ",post_failure\n";
  out << std::setprecision(17);
  for (std::size_t s = 0; s < traj.samples(); ++s) {
    out << traj.t[s];
    for (Eigen::Index i = 0; i < n; ++i) {
      out << ',' << traj.x[s](i);
    }
    out << ',' << (traj.post_failure(s) ? 1 : 0) << '\n';
  }
}

Trajectory read_trajectory_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) {
    throw ParseError(1, "empty trajectory file");
  }
  ++line_no;
  std::vector<std::string> header;
  {
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      if (!cell.empty() && cell.back() == '\r') {
        cell.pop_back();
      }
      header.push_back(cell);
    }
  }
  if (header.size() < 3 || header.front() != "t" || header.back() != "post_failure") {
    throw ParseError(line_no, "expected header t,x1..xn,post_failure");
  }
  const std::size_t n = header.size() - 2;

  Trajectory traj;
  std::vector<int> flags;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") {
      continue;
    }
    std::istringstream cells(line);
    std::string cell;
    std::vector<double> values;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw ParseError(line_no, "non-numeric cell \"" + cell + "\"");
      }
    }
    if (values.size() != n + 2) {
      throw ParseError(line_no, "expected " + std::to_string(n + 2) + " columns");
    }
    if (!traj.t.empty() && !(values.front() > traj.t.back())) {
      throw ParseError(line_no, "sample times must increase strictly");
    }
    const double flag = values.back();
    if (flag != 0.0 && flag != 1.0) {
      throw ParseError(line_no, "post_failure must be 0 or 1");
    }
    if (!flags.empty() && flags.back() == 1 && flag == 0.0) {
      throw ParseError(line_no, "post_failure cannot return to 0");
    }
    traj.t.push_back(values.front());
    traj.x.push_back(Eigen::Map<const Eigen::VectorXd>(values.data() + 1, static_cast<Eigen::Index>(n)));
    flags.push_back(static_cast<int>(flag));
  }
  for (std::size_t s = 1; s < flags.size(); ++s) {
    if (flags[s] == 1 && flags[s - 1] == 0) {
      traj.failure_index = s - 1;
      break;
    }
  }
  if (!flags.empty() && flags.front() == 1) {
    throw ParseError(2, "trajectory must start before the failure");
  }
  return traj;
}

} // namespace linkfdi
