#include "linkfdi/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "linkfdi/diagnosis.hpp"
#include "linkfdi/error.hpp"
#include "linkfdi/experiments.hpp"
#include "linkfdi/failure.hpp"
#include "linkfdi/graph_io.hpp"
#include "linkfdi/placement.hpp"
#include "linkfdi/simulate.hpp"

namespace linkfdi {

namespace {

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInput("cannot open " + path);
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

// Writes to --out when given, else to the command's output stream.
class Sink {
public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) {
        throw InvalidInput("cannot write " + path);
      }
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::vector<NodeId> parse_node_list(const std::string& text, int n) {
  std::vector<NodeId> nodes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int id = std::stoi(item, &used);
      if (used != item.size()) {
        throw std::invalid_argument(item);
      }
      nodes.push_back(id - 1);
    } catch (const std::logic_error&) {
      throw InvalidInput("bad node id \"" + item + "\"");
    }
  }
  for (NodeId v : nodes) {
    if (v < 0 || v >= n) {
      throw InvalidInput("node id " + std::to_string(v + 1) + " out of range 1.." + std::to_string(n));
    }
  }
  return nodes;
}

// Either a comma list of 1-based ids or a JSON file with a "sensors" array.
std::vector<NodeId> load_sensors(const std::string& spec, int n) {
  if (!spec.empty() && std::all_of(spec.begin(), spec.end(), [](char c) { return std::isdigit(c) || c == ','; })) {
    return parse_node_list(spec, n);
  }
  const nlohmann::json j = read_json_file(spec);
  if (!j.contains("sensors") || !j["sensors"].is_array()) {
    throw InvalidInput(spec + ": expected a \"sensors\" array");
  }
  std::string joined;
  for (const auto& v : j["sensors"]) {
    if (!v.is_number_integer()) {
      throw InvalidInput(spec + ": sensor ids must be integers");
    }
    joined += (joined.empty() ? "" : ",") + std::to_string(v.get<int>());
  }
  return joined.empty() ? std::vector<NodeId>{} : parse_node_list(joined, n);
}

InputSignal load_input(const std::string& path, int n) {
  if (path.empty()) {
    return InputSignal::none(n);
  }
  InputSignal in = input_from_json(read_json_file(path));
  if (in.state_dimension() != n) {
    throw InvalidInput(path + ": input matrix has " + std::to_string(in.state_dimension()) + " rows, graph has " +
                       std::to_string(n) + " nodes");
  }
  return in;
}

struct PlaceArgs {
  std::string graph;
  std::string objective = "detection";
  int z = 0;
  double tol = kDefaultTolerance;
  std::string out;
};

int cmd_place(const PlaceArgs& a, std::ostream& out, std::ostream& err) {
  const Network net = read_edge_list_file(a.graph);
  const DistanceTable dist = all_pairs_distances(net.graph);
  const int z = a.z > 0 ? a.z : default_z(dist);
  for (const WalkSumViolation& v : check_assumption1(net.graph, net.weights, dist, a.tol)) {
    err << "warning: shortest-walk weight sum from " << v.from + 1 << " to " << v.to + 1 << " is " << v.walk_sum
        << "\n";
  }
  const RelationIndex idx(dist, build_classes(net.graph), z);
  const double bound = ratio_bound(net.graph.edge_count() - net.graph.self_loops().size());
  const DetectionResult det = greedy_detection(idx);
  nlohmann::json doc;
  bool feasible = det.feasible;
  if (a.objective == "detection") {
    doc = detection_to_json(det, idx, bound);
  } else {
    const IsolationResult iso = greedy_isolation(idx, det.set);
    doc = isolation_to_json(iso, idx, bound);
    feasible = iso.feasible;
  }
  Sink sink(a.out, out);
  sink.get() << doc.dump(2) << '\n';
  return feasible ? kExitOk : kExitInfeasible;
}

struct SimulateArgs {
  std::string graph;
  std::string scenario;
  std::string input;
  std::string x0;
  std::uint64_t seed = 1;
  double t0 = 0.0;
  double t_end = 2.0;
  double step = kDefaultStep;
  double tol = kDefaultTolerance;
  std::string out;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  const Network net = read_edge_list_file(a.graph);
  const int n = net.graph.size();
  const InputSignal input = load_input(a.input, n);

  Eigen::VectorXd x0(n);
  if (!a.x0.empty()) {
    std::vector<double> values;
    std::stringstream ss(a.x0);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        values.push_back(std::stod(item));
      } catch (const std::logic_error&) {
        throw InvalidInput("bad initial state entry \"" + item + "\"");
      }
    }
    if (static_cast<int>(values.size()) != n) {
      throw InvalidInput("initial state needs " + std::to_string(n) + " entries");
    }
    x0 = Eigen::Map<Eigen::VectorXd>(values.data(), n);
  } else {
    std::mt19937_64 rng(a.seed);
    std::uniform_real_distribution<double> draw(-1.0, 1.0);
    for (int i = 0; i < n; ++i) {
      x0(i) = draw(rng);
    }
  }

  std::optional<FailureScenario> scenario;
  if (!a.scenario.empty()) {
    scenario = scenario_from_json(read_json_file(a.scenario));
  }
  const Trajectory traj = simulate(net.graph, net.weights, input, x0, a.t0, scenario, a.t_end, a.step);
  if (scenario) {
    const FaultyNetwork faulty = apply_failure(net.graph, net.weights, *scenario);
    for (const PerturbationCheck& c :
         check_assumption2(net.weights, faulty.weights, traj.state_at_failure(), faulty.affected_rows, a.tol)) {
      if (!c.holds) {
        err << "warning: perturbation of row " << c.row + 1 << " is orthogonal to the state at t_f (" << c.value
            << "); the failure may go unseen\n";
      }
    }
  }
  Sink sink(a.out, out);
  write_trajectory_csv(sink.get(), traj);
  return kExitOk;
}

struct DiagnoseArgs {
  std::string graph;
  std::string sensors;
  std::string trajectory;
  std::string plant_scenario;
  std::string input;
  std::string relations = "definition";
  int z = 0;
  double tol = kDefaultThreshold;
  std::string out;
};

int cmd_diagnose(const DiagnoseArgs& a, std::ostream& out, std::ostream&) {
  const Network net = read_edge_list_file(a.graph);
  const int n = net.graph.size();
  const std::vector<NodeId> sensors = load_sensors(a.sensors, n);
  std::ifstream tin(a.trajectory);
  if (!tin) {
    throw InvalidInput("cannot open " + a.trajectory);
  }
  const Trajectory traj = read_trajectory_csv(tin);
  if (!traj.x.empty() && traj.x.front().size() != n) {
    throw InvalidInput(a.trajectory + ": state width does not match the graph");
  }
  const InputSignal input = load_input(a.input, n);
  const DistanceTable dist = all_pairs_distances(net.graph);
  const int z = a.z > 0 ? a.z : default_z(dist);
  const RelationIndex idx = a.relations == "onset" ? onset_relations(dist, build_classes(net.graph), z)
                                                   : RelationIndex(dist, build_classes(net.graph), z);
  std::optional<InWeighting> abar;
  if (!a.plant_scenario.empty()) {
    abar = apply_failure(net.graph, net.weights, scenario_from_json(read_json_file(a.plant_scenario))).weights;
  }
  const std::vector<Diagnosis> events = monitor(traj, sensors, idx, net.weights, abar, input, a.tol);
  Sink sink(a.out, out);
  write_events(sink.get(), events, idx);
  return kExitOk;
}

struct SweepArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  int z = 0;
  std::string out;
  std::string summary;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream&) {
  SweepConfig cfg = sweep_config_from_json(read_json_file(a.config));
  if (a.seed) {
    cfg.seed_base = *a.seed;
  }
  if (a.z > 0) {
    cfg.fixed_z = a.z;
  }
  const std::vector<SweepRow> rows = run_sweep(cfg);
  {
    Sink sink(a.out, out);
    write_sweep_csv(sink.get(), cfg, rows);
  }
  if (!a.summary.empty()) {
    Sink sink(a.summary, out);
    write_summary_csv(sink.get(), cfg, rows);
  }
  return kExitOk;
}

struct DemoArgs {
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_demo(const DemoArgs& a, std::ostream& out, std::ostream&) {
  Sink sink(a.out, out);
  sink.get() << demo_to_json(demo_geometric(a.seed)).dump(2) << '\n';
  return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Link-failure detection and isolation for networked linear dynamics", "linkfdi"};
  app.require_subcommand(1);

  PlaceArgs place;
  auto* p = app.add_subcommand("place", "Choose sensor nodes for a graph");
  p->add_option("graph", place.graph, "Edge-list file")->required();
  p->add_option("--objective", place.objective, "detection or isolation")
      ->check(CLI::IsMember({"detection", "isolation"}));
  p->add_option("--z", place.z, "Highest derivative order (default: diameter + 1)");
  p->add_option("--tol", place.tol, "Tolerance for the walk-weight check");
  p->add_option("--out", place.out, "Output file (default: stdout)");

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Simulate the network, optionally with a failure");
  s->add_option("graph", sim.graph, "Edge-list file")->required();
  s->add_option("--scenario", sim.scenario, "Failure scenario JSON");
  s->add_option("--input", sim.input, "Input signal JSON");
  s->add_option("--x0", sim.x0, "Initial state, comma separated (default: random)");
  s->add_option("--seed", sim.seed, "Seed for the random initial state");
  s->add_option("--t0", sim.t0, "Start time");
  s->add_option("--t-end", sim.t_end, "End time");
  s->add_option("--step", sim.step, "RK4 step");
  s->add_option("--tol", sim.tol, "Tolerance for the perturbation check");
  s->add_option("--out", sim.out, "Output CSV (default: stdout)");

  DiagnoseArgs diag;
  auto* d = app.add_subcommand("diagnose", "Diagnose a failure from a trajectory");
  d->add_option("graph", diag.graph, "Edge-list file")->required();
  d->add_option("--sensors", diag.sensors, "Sensor list (1,4,..) or placement JSON")->required();
  d->add_option("--trajectory", diag.trajectory, "Trajectory CSV")->required();
  d->add_option("--plant-scenario", diag.plant_scenario, "Scenario giving the post-failure weights");
  d->add_option("--input", diag.input, "Input signal JSON");
  d->add_option("--relations", diag.relations, "definition or onset")
      ->check(CLI::IsMember({"definition", "onset"}));
  d->add_option("--z", diag.z, "Highest derivative order (default: diameter + 1)");
  d->add_option("--tol", diag.tol, "Jump threshold");
  d->add_option("--out", diag.out, "Output file (default: stdout)");

  SweepArgs sweep;
  auto* w = app.add_subcommand("sweep", "Run a random-graph sweep");
  w->add_option("config", sweep.config, "Sweep config JSON")->required();
  w->add_option("--seed", sweep.seed, "Seed base override");
  w->add_option("--z", sweep.z, "Fixed z override");
  w->add_option("--out", sweep.out, "Per-instance CSV (default: stdout)");
  w->add_option("--summary", sweep.summary, "Summary CSV");

  DemoArgs demo;
  auto* g = app.add_subcommand("demo-geometric", "Compare link treatments on one geometric graph");
  g->add_option("--seed", demo.seed, "Instance seed");
  g->add_option("--out", demo.out, "Output file (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (p->parsed()) {
      return cmd_place(place, out, err);
    }
    if (s->parsed()) {
      return cmd_simulate(sim, out, err);
    }
    if (d->parsed()) {
      return cmd_diagnose(diag, out, err);
    }
    if (w->parsed()) {
      return cmd_sweep(sweep, out, err);
    }
    if (g->parsed()) {
      return cmd_demo(demo, out, err);
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const InconsistentObservation& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

} // namespace linkfdi
