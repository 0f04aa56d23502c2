#include "linkfdi/signal.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "linkfdi/error.hpp"

namespace linkfdi {

double SignalChannel::derivative(int order, double t) const {
  if (order < 0) {
    throw InvalidInput("derivative order must be nonnegative");
  }
  double value = 0.0;
  // Horner over the differentiated coefficients c_i * i! / (i - order)!.
  for (std::size_t i = poly.size(); i-- > static_cast<std::size_t>(order);) {
    double falling = 1.0;
    for (int f = 0; f < order; ++f) {
      falling *= static_cast<double>(i) - f;
    }
    value = value * t + poly[i] * falling;
  }
  if (amplitude != 0.0) {
    value += amplitude * std::pow(omega, order) * std::sin(omega * t + phase + order * std::numbers::pi / 2.0);
  }
  return value;
}

InputSignal::InputSignal(Eigen::MatrixXd b, std::vector<SignalChannel> channels, int differentiability)
    : b_(std::move(b)), channels_(std::move(channels)), differentiability_(differentiability) {
  if (b_.cols() != static_cast<Eigen::Index>(channels_.size())) {
    throw InvalidInput("input matrix has " + std::to_string(b_.cols()) + " columns but " +
                       std::to_string(channels_.size()) + " channels were given");
  }
  if (differentiability_ < 0) {
    throw InvalidInput("differentiability must be nonnegative");
  }
}

InputSignal InputSignal::none(int n) { return InputSignal(Eigen::MatrixXd::Zero(n, 0), {}); }

Eigen::VectorXd InputSignal::w(int order, double t) const {
  if (order > differentiability_) {
    throw InvalidInput("input derivative of order " + std::to_string(order) + " requested; only " +
                       std::to_string(differentiability_) + " available");
  }
  Eigen::VectorXd out(input_dimension());
  for (int c = 0; c < input_dimension(); ++c) {
    out(c) = channels_[static_cast<std::size_t>(c)].derivative(order, t);
  }
  return out;
}

Eigen::VectorXd InputSignal::forcing(int order, double t) const {
  if (input_dimension() == 0) {
    if (order > differentiability_) {
      throw InvalidInput("input derivative of order " + std::to_string(order) + " requested; only " +
                         std::to_string(differentiability_) + " available");
    }
    return Eigen::VectorXd::Zero(state_dimension());
  }
  return b_ * w(order, t);
}

InputSignal input_from_json(const nlohmann::json& j) {
  try {
    const auto rows = j.at("b").get<std::vector<std::vector<double>>>();
    std::vector<SignalChannel> channels;
    for (const auto& c : j.at("w")) {
      SignalChannel ch;
      ch.poly = c.value("poly", std::vector<double>{});
      ch.amplitude = c.value("amplitude", 0.0);
      ch.omega = c.value("omega", 0.0);
      ch.phase = c.value("phase", 0.0);
      channels.push_back(std::move(ch));
    }
    Eigen::MatrixXd b(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(channels.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != channels.size()) {
        throw InvalidInput("row " + std::to_string(r + 1) + " of b has the wrong length");
      }
      for (std::size_t c = 0; c < channels.size(); ++c) {
        b(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
      }
    }
    return InputSignal(std::move(b), std::move(channels), j.value("differentiability", InputSignal::kUnlimited));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed input signal: ") + e.what());
  }
}

nlohmann::json input_to_json(const InputSignal& in) {
  nlohmann::json j;
  auto rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < in.b().rows(); ++r) {
    auto row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < in.b().cols(); ++c) {
      row.push_back(in.b()(r, c));
    }
    rows.push_back(row);
  }
  j["b"] = rows;
  j["w"] = nlohmann::json::array();
  for (const auto& ch : in.channels()) {
    j["w"].push_back({{"poly", ch.poly}, {"amplitude", ch.amplitude}, {"omega", ch.omega}, {"phase", ch.phase}});
  }
  if (in.differentiability() != InputSignal::kUnlimited) {
    j["differentiability"] = in.differentiability();
  }
  return j;
}

} // namespace linkfdi
