#include "linkfdi/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <ostream>

#include "linkfdi/error.hpp"
#include "linkfdi/placement.hpp"
#include "linkfdi/relations.hpp"

namespace linkfdi {

const char* family_name(Family f) {
  switch (f) {
  case Family::ErdosRenyi:
    return "erdos_renyi";
  case Family::Geometric:
    return "geometric";
  case Family::WattsStrogatz:
    return "watts_strogatz";
  }
  return "?";
}

const char* variant_name(Variant v) {
  switch (v) {
  case Variant::Directed:
    return "directed";
  case Variant::Undirected:
    return "undirected";
  case Variant::Oriented:
    return "oriented";
  case Variant::Split:
    return "split";
  }
  return "?";
}

namespace {

Family family_from(const std::string& s) {
  for (Family f : {Family::ErdosRenyi, Family::Geometric, Family::WattsStrogatz}) {
    if (s == family_name(f)) {
      return f;
    }
  }
  throw InvalidInput("unknown family \"" + s + "\"");
}

Variant variant_from(const std::string& s) {
  for (Variant v : {Variant::Directed, Variant::Undirected, Variant::Oriented, Variant::Split}) {
    if (s == variant_name(v)) {
      return v;
    }
  }
  throw InvalidInput("unknown variant \"" + s + "\"");
}

const std::map<Family, std::vector<std::string>>& sweepable() {
  static const std::map<Family, std::vector<std::string>> table = {
      {Family::ErdosRenyi, {"n", "p"}},
      {Family::Geometric, {"n", "radius", "edges"}},
      {Family::WattsStrogatz, {"n", "d", "rewire_p"}},
  };
  return table;
}

} // namespace

void validate(const SweepConfig& cfg) {
  const auto& names = sweepable().at(cfg.family);
  if (std::find(names.begin(), names.end(), cfg.param) == names.end()) {
    throw InvalidInput("parameter \"" + cfg.param + "\" cannot be swept for " + family_name(cfg.family));
  }
  if (cfg.values.empty()) {
    throw InvalidInput("sweep needs at least one value");
  }
  for (std::size_t i = 1; i < cfg.values.size(); ++i) {
    if (!(cfg.values[i] > cfg.values[i - 1])) {
      throw InvalidInput("swept values must be strictly increasing");
    }
  }
  if (cfg.instances < 1) {
    throw InvalidInput("instances must be at least 1");
  }
  if (cfg.variant == Variant::Directed && cfg.family != Family::ErdosRenyi) {
    throw InvalidInput("the directed variant applies to erdos_renyi only");
  }
  if (cfg.fixed_z && *cfg.fixed_z < 1) {
    throw InvalidInput("z must be at least 1");
  }
}

SweepConfig sweep_config_from_json(const nlohmann::json& j) {
  try {
    SweepConfig cfg;
    cfg.family = family_from(j.at("family").get<std::string>());
    cfg.variant = cfg.family == Family::ErdosRenyi ? Variant::Directed : Variant::Undirected;
    if (j.contains("variant")) {
      cfg.variant = variant_from(j["variant"].get<std::string>());
    }
    cfg.param = j.at("param").get<std::string>();
    cfg.values = j.at("values").get<std::vector<double>>();
    cfg.instances = j.value("instances", cfg.instances);
    cfg.seed_base = j.value("seed_base", cfg.seed_base);
    if (j.contains("z")) {
      const auto& z = j["z"];
      if (z.is_string()) {
        if (z.get<std::string>() != "diam+1") {
          throw InvalidInput("z must be \"diam+1\" or an integer");
        }
      } else {
        cfg.fixed_z = z.get<int>();
      }
    }
    cfg.isolation = j.value("isolation", cfg.isolation);
    if (j.contains("weights")) {
      cfg.weights = weight_rule_from_string(j["weights"].get<std::string>());
    }
    if (j.contains("fixed")) {
      const auto& f = j["fixed"];
      cfg.n = f.value("n", cfg.n);
      cfg.p = f.value("p", cfg.p);
      cfg.d = f.value("d", cfg.d);
      cfg.rewire_p = f.value("rewire_p", cfg.rewire_p);
      cfg.radius = f.value("radius", cfg.radius);
      cfg.edges = f.value("edges", cfg.edges);
      cfg.side = f.value("side", cfg.side);
    }
    validate(cfg);
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed sweep config: ") + e.what());
  }
}

nlohmann::json sweep_config_to_json(const SweepConfig& cfg) {
  nlohmann::json j = {{"family", family_name(cfg.family)},
                      {"variant", variant_name(cfg.variant)},
                      {"param", cfg.param},
                      {"values", cfg.values},
                      {"instances", cfg.instances},
                      {"seed_base", cfg.seed_base},
                      {"isolation", cfg.isolation},
                      {"weights", weight_rule_name(cfg.weights)},
                      {"fixed",
                       {{"n", cfg.n},
                        {"p", cfg.p},
                        {"d", cfg.d},
                        {"rewire_p", cfg.rewire_p},
                        {"radius", cfg.radius},
                        {"edges", cfg.edges},
                        {"side", cfg.side}}}};
  if (cfg.fixed_z) {
    j["z"] = *cfg.fixed_z;
  } else {
    j["z"] = "diam+1";
  }
  return j;
}

InstanceMetrics evaluate_instance(const Digraph& g, std::optional<int> fixed_z, bool isolation) {
  InstanceMetrics m;
  const DistanceTable dist = all_pairs_distances(g);
  m.n = g.size();
  m.edges = g.edge_count() - g.self_loops().size();
  if (g.size() > 0) {
    const Diameter diam = diameter(dist);
    m.diameter = diam.value;
    m.strongly_connected = !diam.has_unreachable_pairs;
  }
  m.z = fixed_z ? *fixed_z : (g.size() > 0 ? default_z(dist) : 1);
  const RelationIndex idx(dist, build_classes(g), m.z);
  m.classes = idx.class_count();

  const DetectionResult det = greedy_detection(idx);
  m.detection_feasible = det.feasible;
  m.md_size = det.set.size();
  m.fi_residual_md = isolation_residual(idx, det.set.sensors);
  if (isolation) {
    const IsolationResult iso = greedy_isolation(idx, det.set);
    m.isolation_computed = true;
    m.isolation_feasible = iso.feasible;
    m.mi_size = iso.best_effort.size();
    m.fi_residual_all = iso.residual_all;
  }
  return m;
}

namespace {

Digraph shape(const Digraph& undirected, Variant v, std::uint64_t seed) {
  switch (v) {
  case Variant::Undirected:
  case Variant::Directed:
    return undirected;
  case Variant::Oriented:
    return random_orientation(undirected, seed);
  case Variant::Split:
    return split_bidirectional(undirected);
  }
  return undirected;
}

int as_count(double v, const char* name) {
  if (v < 0 || v != std::floor(v)) {
    throw InvalidInput(std::string(name) + " must be a nonnegative integer");
  }
  return static_cast<int>(v);
}

} // namespace

Digraph sweep_graph(const SweepConfig& cfg, double value, std::uint64_t seed) {
  SweepConfig c = cfg;
  if (cfg.param == "n") {
    c.n = as_count(value, "n");
  } else if (cfg.param == "p") {
    c.p = value;
  } else if (cfg.param == "d") {
    c.d = as_count(value, "d");
  } else if (cfg.param == "rewire_p") {
    c.rewire_p = value;
  } else if (cfg.param == "radius") {
    c.radius = value;
  } else if (cfg.param == "edges") {
    c.edges = as_count(value, "edges");
  }

  Digraph base;
  switch (c.family) {
  case Family::ErdosRenyi:
    base = erdos_renyi_graph(c.n, c.p, c.variant == Variant::Directed, seed);
    break;
  case Family::Geometric:
    base = c.edges > 0 ? geometric_with_edge_count(c.n, c.edges, c.side, seed).graph
                       : geometric_graph(random_points(c.n, c.side, seed), c.radius);
    break;
  case Family::WattsStrogatz:
    base = watts_strogatz_graph(c.n, c.d, c.rewire_p, seed);
    break;
  }
  return apply_weights(shape(base, c.variant, seed), c.weights, seed).graph;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  validate(cfg);
  std::vector<SweepRow> rows;
  for (double value : cfg.values) {
    for (int i = 0; i < cfg.instances; ++i) {
      const std::uint64_t seed = cfg.seed_base + static_cast<std::uint64_t>(i);
      rows.push_back({value, i, seed, evaluate_instance(sweep_graph(cfg, value, seed), cfg.fixed_z, cfg.isolation)});
    }
  }
  return rows;
}

namespace {

const char* feasibility(const InstanceMetrics& m) {
  if (!m.detection_feasible) {
    return "none";
  }
  if (!m.isolation_computed) {
    return "detection";
  }
  return m.isolation_feasible ? "isolation" : "detection";
}

} // namespace

void write_sweep_csv(std::ostream& out, const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
  out << "# schema=" << kSweepSchema << " variant=" << variant_name(cfg.variant) << '\n';
  out << "family,param_name,param_value,instance,seed,n,edges,diameter,z,md_size,mi_size,fi_residual_mi,"
         "fi_residual_all,feasible,strongly_connected\n";
  for (const SweepRow& r : rows) {
    const InstanceMetrics& m = r.metrics;
    out << family_name(cfg.family) << ',' << cfg.param << ',' << r.param_value << ',' << r.instance << ',' << r.seed
        << ',' << m.n << ',' << m.edges << ',' << m.diameter << ',' << m.z << ',' << m.md_size << ',';
    if (m.isolation_computed) {
      out << m.mi_size << ',' << m.fi_residual_md << ',' << m.fi_residual_all;
    } else {
      out << ",,";
    }
    out << ',' << feasibility(m) << ',' << (m.strongly_connected ? 1 : 0) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
  out << "# schema=" << kSummarySchema << " variant=" << variant_name(cfg.variant) << '\n';
  out << "family,param_name,param_value,statistic,instances,edges,diameter,z,md_size,mi_size,fi_residual_mi,"
         "fi_residual_all,isolation_feasible,strongly_connected\n";
  constexpr std::size_t kColumns = 9;
  for (double value : cfg.values) {
    std::vector<std::array<double, kColumns>> samples;
    for (const SweepRow& r : rows) {
      if (r.param_value != value) {
        continue;
      }
      const InstanceMetrics& m = r.metrics;
      samples.push_back({static_cast<double>(m.edges), static_cast<double>(m.diameter), static_cast<double>(m.z),
                         static_cast<double>(m.md_size), static_cast<double>(m.mi_size),
                         static_cast<double>(m.fi_residual_md), static_cast<double>(m.fi_residual_all),
                         m.isolation_feasible ? 1.0 : 0.0, m.strongly_connected ? 1.0 : 0.0});
    }
    if (samples.empty()) {
      continue;
    }
    const double count = static_cast<double>(samples.size());
    std::array<double, kColumns> mean{};
    std::array<double, kColumns> sd{};
    for (const auto& s : samples) {
      for (std::size_t c = 0; c < kColumns; ++c) {
        mean[c] += s[c] / count;
      }
    }
    if (samples.size() > 1) {
      for (const auto& s : samples) {
        for (std::size_t c = 0; c < kColumns; ++c) {
          sd[c] += (s[c] - mean[c]) * (s[c] - mean[c]);
        }
      }
      for (double& v : sd) {
        v = std::sqrt(v / (count - 1.0));
      }
    }
    for (const auto& [label, stats] : {std::pair{"mean", mean}, std::pair{"sd", sd}}) {
      out << family_name(cfg.family) << ',' << cfg.param << ',' << value << ',' << label << ',' << samples.size();
      for (double v : stats) {
        out << ',' << v;
      }
      out << '\n';
    }
  }
}

DemoReport demo_geometric(std::uint64_t seed, int n, int edges, double side) {
  const GeometricInstance inst = geometric_with_edge_count(n, edges, side, seed);
  DemoReport rep;
  rep.seed = seed;
  rep.radius = inst.radius;
  rep.treatments.push_back({"bidirectional", evaluate_instance(inst.graph, std::nullopt, true)});
  rep.treatments.push_back(
      {"unidirectional_pairs", evaluate_instance(split_bidirectional(inst.graph), std::nullopt, true)});
  rep.treatments.push_back(
      {"random_orientation", evaluate_instance(random_orientation(inst.graph, seed), std::nullopt, true)});
  return rep;
}

nlohmann::json demo_to_json(const DemoReport& r) {
  nlohmann::json treatments = nlohmann::json::array();
  for (const TreatmentReport& t : r.treatments) {
    const InstanceMetrics& m = t.metrics;
    treatments.push_back({{"treatment", t.name},
                          {"edges", m.edges},
                          {"classes", m.classes},
                          {"diameter", m.diameter},
                          {"strongly_connected", m.strongly_connected},
                          {"z", m.z},
                          {"md_size", m.md_size},
                          {"mi_size", m.mi_size},
                          {"isolation_feasible", m.isolation_feasible},
                          {"fi_residual_md", m.fi_residual_md},
                          {"unresolved_all", m.fi_residual_all},
                          {"isolated_all", m.classes - m.fi_residual_all}});
  }
  return {{"seed", r.seed}, {"radius", r.radius}, {"treatments", treatments}};
}

} // namespace linkfdi
