#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace linkfdi {

/// Malformed or inconsistent caller input (bad graph, missing edge, bad scenario).
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A text document could not be parsed. Carries the 1-based offending line.
class ParseError : public InvalidInput {
public:
  ParseError(std::size_t line, const std::string& what)
      : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// A brute-force routine was asked to run beyond the size it guards.
class OracleScaleExceeded : public std::runtime_error {
public:
  explicit OracleScaleExceeded(const std::string& what)
      : std::runtime_error("oracle scale exceeded: " + what) {}
};

/// A jump prediction was requested outside the range the theory characterizes.
class UncharacterizedOrder : public std::domain_error {
public:
  explicit UncharacterizedOrder(const std::string& what)
      : std::domain_error("uncharacterized order: " + what) {}
};

/// The integrator produced a non-finite state.
class SimulationDiverged : public std::runtime_error {
public:
  SimulationDiverged(double t, const std::string& what)
      : std::runtime_error(what), time_(t) {}

  double time() const noexcept { return time_; }

private:
  double time_;
};

/// An observed jump signature matches no edge class.
class InconsistentObservation : public std::runtime_error {
public:
  explicit InconsistentObservation(const std::string& what)
      : std::runtime_error("inconsistent observation: " + what) {}
};

} // namespace linkfdi
