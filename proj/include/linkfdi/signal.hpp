#pragma once

#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace linkfdi {

/// One scalar input channel: c0 + c1 t + c2 t^2 + ... + amplitude * sin(omega t + phase).
/// Every derivative is evaluated in closed form.
struct SignalChannel {
  std::vector<double> poly;
  double amplitude = 0.0;
  double omega = 0.0;
  double phase = 0.0;

  double derivative(int order, double t) const;
};

/// Exogenous input B w(t) with w built from closed-form channels.
class InputSignal {
public:
  static constexpr int kUnlimited = std::numeric_limits<int>::max();

  InputSignal() = default;

  /// Throws InvalidInput when b has a column count different from channels.size().
  InputSignal(Eigen::MatrixXd b, std::vector<SignalChannel> channels, int differentiability = kUnlimited);

  /// No input acting on an n-node network.
  static InputSignal none(int n);

  int state_dimension() const noexcept { return static_cast<int>(b_.rows()); }
  int input_dimension() const noexcept { return static_cast<int>(b_.cols()); }
  const Eigen::MatrixXd& b() const noexcept { return b_; }
  const std::vector<SignalChannel>& channels() const noexcept { return channels_; }

  /// Highest derivative order of w the caller vouches for.
  int differentiability() const noexcept { return differentiability_; }

  /// w^(order)(t). Throws InvalidInput beyond differentiability().
  Eigen::VectorXd w(int order, double t) const;

  /// B w^(order)(t), an n-vector.
  Eigen::VectorXd forcing(int order, double t) const;

private:
  Eigen::MatrixXd b_;
  std::vector<SignalChannel> channels_;
  int differentiability_ = kUnlimited;
};

/// {"b": [[...]], "w": [{"poly": [...], "amplitude": a, "omega": f, "phase": p}], "differentiability": d}
InputSignal input_from_json(const nlohmann::json& j);
nlohmann::json input_to_json(const InputSignal& in);

} // namespace linkfdi
