#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "linkfdi/graph.hpp"
#include "linkfdi/randgraphs.hpp"

namespace linkfdi {

inline constexpr const char* kSweepSchema = "linkfdi.sweep.v1";
inline constexpr const char* kSummarySchema = "linkfdi.summary.v1";

enum class Family { ErdosRenyi, Geometric, WattsStrogatz };

/// How edges of the generated graph are treated.
enum class Variant {
  Directed,   ///< directed Erdos-Renyi draw (ER only)
  Undirected, ///< every link bidirectional
  Oriented,   ///< undirected draw, each link given one random direction
  Split,      ///< undirected draw, each link split into two independent edges
};

struct SweepConfig {
  Family family = Family::ErdosRenyi;
  Variant variant = Variant::Directed;
  std::string param = "n"; ///< swept parameter name
  std::vector<double> values;
  int instances = 50;
  std::uint64_t seed_base = 1;
  std::optional<int> fixed_z; ///< empty selects diam + 1 per instance
  bool isolation = true;
  WeightRule weights = WeightRule::Unit;

  // Values for the parameters that are not swept.
  int n = 50;
  double p = 0.1;
  int d = 4;
  double rewire_p = 0.1;
  double radius = 0.2;
  int edges = 0; ///< geometric only: when > 0, choose the radius giving this many links
  double side = 1.0;
};

/// Throws InvalidInput on unknown names, an empty or non-increasing value
/// list, or instances < 1.
SweepConfig sweep_config_from_json(const nlohmann::json& j);
nlohmann::json sweep_config_to_json(const SweepConfig& cfg);
void validate(const SweepConfig& cfg);

/// Placement statistics for one graph.
struct InstanceMetrics {
  int n = 0;
  std::size_t edges = 0;   ///< non-self-loop edges
  std::size_t classes = 0;
  int diameter = 0;        ///< largest finite distance
  bool strongly_connected = false;
  int z = 0;
  bool detection_feasible = false;
  std::size_t md_size = 0;
  bool isolation_computed = false;
  bool isolation_feasible = false;
  std::size_t mi_size = 0;        ///< greedy isolation set, or its best-effort prefix
  std::size_t fi_residual_md = 0; ///< unresolved classes observing the detection set
  std::size_t fi_residual_all = 0;
};

InstanceMetrics evaluate_instance(const Digraph& g, std::optional<int> fixed_z, bool isolation);

/// The graph a sweep generates for one parameter value and seed.
Digraph sweep_graph(const SweepConfig& cfg, double value, std::uint64_t seed);

struct SweepRow {
  double param_value = 0.0;
  int instance = 0;
  std::uint64_t seed = 0;
  InstanceMetrics metrics;
};

/// Instance i at every value uses seed_base + i.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

const char* family_name(Family f);
const char* variant_name(Variant v);

/// Per-instance CSV, preceded by a "# schema=" line.
void write_sweep_csv(std::ostream& out, const SweepConfig& cfg, const std::vector<SweepRow>& rows);
/// Mean and sample standard deviation per swept value.
void write_summary_csv(std::ostream& out, const SweepConfig& cfg, const std::vector<SweepRow>& rows);

struct TreatmentReport {
  std::string name;
  InstanceMetrics metrics;
};

struct DemoReport {
  std::uint64_t seed = 0;
  double radius = 0.0;
  std::vector<TreatmentReport> treatments; ///< bidirectional, unidirectional_pairs, random_orientation
};

/// One geometric instance (n nodes, `edges` links) under three treatments.
DemoReport demo_geometric(std::uint64_t seed, int n = 50, int edges = 200, double side = 1.0);
nlohmann::json demo_to_json(const DemoReport& r);

} // namespace linkfdi
