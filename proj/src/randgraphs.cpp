#include "linkfdi/randgraphs.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "linkfdi/error.hpp"

namespace linkfdi {

namespace {

// Independent stream per purpose so that, e.g., weights do not shift when
// the topology draw changes.
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt)};
  return std::mt19937_64(seq);
}

constexpr std::uint64_t kTopologySalt = 1;
constexpr std::uint64_t kWeightSalt = 2;
constexpr std::uint64_t kOrientationSalt = 3;

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidInput("probability must lie in [0, 1]");
  }
}

void check_n(int n) {
  if (n < 0) {
    throw InvalidInput("node count must be nonnegative");
  }
}

} // namespace

WeightRule weight_rule_from_string(const std::string& name) {
  if (name == "unit") {
    return WeightRule::Unit;
  }
  if (name == "laplacian") {
    return WeightRule::Laplacian;
  }
  if (name == "uniform") {
    return WeightRule::Uniform;
  }
  throw InvalidInput("unknown weight rule \"" + name + "\"");
}

const char* weight_rule_name(WeightRule rule) {
  switch (rule) {
  case WeightRule::Unit:
    return "unit";
  case WeightRule::Laplacian:
    return "laplacian";
  case WeightRule::Uniform:
    return "uniform";
  }
  return "?";
}

Network apply_weights(const Digraph& g, WeightRule rule, std::uint64_t seed) {
  switch (rule) {
  case WeightRule::Unit:
    return {g, InWeighting::unit(g)};
  case WeightRule::Laplacian: {
    Digraph looped = with_consensus_self_loops(g);
    InWeighting w = InWeighting::consensus(looped);
    return {std::move(looped), std::move(w)};
  }
  case WeightRule::Uniform: {
    auto rng = stream(seed, kWeightSalt);
    std::uniform_real_distribution<double> draw(0.5, 1.5);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.size(), g.size());
    for (const Edge& e : g.edges()) {
      a(e.head, e.tail) = draw(rng);
    }
    return {g, InWeighting(g, std::move(a))};
  }
  }
  throw InvalidInput("unknown weight rule");
}

Digraph erdos_renyi_graph(int n, double p, bool directed, std::uint64_t seed) {
  check_n(n);
  check_probability(p);
  auto rng = stream(seed, kTopologySalt);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  if (directed) {
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = 0; v < n; ++v) {
        if (u != v && coin(rng)) {
          edges.push_back({u, v});
        }
      }
    }
    return Digraph(n, std::move(edges));
  }
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(rng)) {
        edges.push_back({u, v});
      }
    }
  }
  return Digraph::undirected(n, edges);
}

Network erdos_renyi(int n, double p, bool directed, std::uint64_t seed, WeightRule rule) {
  return apply_weights(erdos_renyi_graph(n, p, directed, seed), rule, seed);
}

std::vector<std::pair<double, double>> random_points(int n, double side, std::uint64_t seed) {
  check_n(n);
  if (!(side > 0.0)) {
    throw InvalidInput("square side must be positive");
  }
  auto rng = stream(seed, kTopologySalt);
  std::uniform_real_distribution<double> coord(0.0, side);
  std::vector<std::pair<double, double>> pts(static_cast<std::size_t>(n));
  for (auto& [x, y] : pts) {
    x = coord(rng);
    y = coord(rng);
  }
  return pts;
}

namespace {

double distance(const std::pair<double, double>& a, const std::pair<double, double>& b) {
  return std::hypot(a.first - b.first, a.second - b.second);
}

} // namespace

Digraph geometric_graph(const std::vector<std::pair<double, double>>& points, double radius) {
  if (!(radius > 0.0)) {
    throw InvalidInput("radius must be positive");
  }
  const int n = static_cast<int>(points.size());
  std::vector<Edge> pairs;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (distance(points[static_cast<std::size_t>(u)], points[static_cast<std::size_t>(v)]) <= radius) {
        pairs.push_back({u, v});
      }
    }
  }
  return Digraph::undirected(n, pairs);
}

Network random_geometric(int n, double radius, double side, std::uint64_t seed, WeightRule rule) {
  return apply_weights(geometric_graph(random_points(n, side, seed), radius), rule, seed);
}

GeometricInstance geometric_with_edge_count(int n, int edges, double side, std::uint64_t seed) {
  const auto pts = random_points(n, side, seed);
  std::vector<double> d;
  for (std::size_t u = 0; u < pts.size(); ++u) {
    for (std::size_t v = u + 1; v < pts.size(); ++v) {
      d.push_back(distance(pts[u], pts[v]));
    }
  }
  if (edges < 1 || static_cast<std::size_t>(edges) > d.size()) {
    throw InvalidInput("cannot place " + std::to_string(edges) + " edges on " + std::to_string(n) + " points");
  }
  std::sort(d.begin(), d.end());
  const double radius = d[static_cast<std::size_t>(edges - 1)];
  if (static_cast<std::size_t>(edges) < d.size() && d[static_cast<std::size_t>(edges)] == radius) {
    throw InvalidInput("distance tie at the requested edge count");
  }
  return {geometric_graph(pts, radius), radius};
}

Digraph random_orientation(const Digraph& g, std::uint64_t seed) {
  auto rng = stream(seed, kOrientationSalt);
  std::bernoulli_distribution coin(0.5);
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (e.is_self_loop()) {
      kept.push_back(e);
      continue;
    }
    if (!g.is_bidirectional(e)) {
      throw InvalidInput("random orientation needs every edge to be bidirectional");
    }
    if (e.tail < e.head) {
      kept.push_back(coin(rng) ? e : e.reversed());
    }
  }
  return Digraph(g.size(), std::move(kept));
}

Digraph split_bidirectional(const Digraph& g) {
  return Digraph(g.size(), std::vector<Edge>(g.edges().begin(), g.edges().end()));
}

Digraph watts_strogatz_graph(int n, int d, double rewire_p, std::uint64_t seed) {
  check_probability(rewire_p);
  if (d < 0 || d % 2 != 0 || d >= n) {
    throw InvalidInput("small-world degree must be even and below n");
  }
  std::vector<std::set<NodeId>> adj(static_cast<std::size_t>(n));
  auto link = [&](NodeId u, NodeId v) {
    adj[static_cast<std::size_t>(u)].insert(v);
    adj[static_cast<std::size_t>(v)].insert(u);
  };
  auto unlink = [&](NodeId u, NodeId v) {
    adj[static_cast<std::size_t>(u)].erase(v);
    adj[static_cast<std::size_t>(v)].erase(u);
  };
  for (NodeId q = 0; q < n; ++q) {
    for (int j = 1; j <= d / 2; ++j) {
      link(q, (q + j) % n);
    }
  }

  auto rng = stream(seed, kTopologySalt);
  std::bernoulli_distribution rewire(rewire_p);
  for (int j = 1; j <= d / 2; ++j) {
    for (NodeId q = 0; q < n; ++q) {
      const NodeId far = (q + j) % n;
      if (!rewire(rng)) {
        continue;
      }
      std::vector<NodeId> options;
      for (NodeId r = 0; r < n; ++r) {
        if (r != q && !adj[static_cast<std::size_t>(q)].contains(r)) {
          options.push_back(r);
        }
      }
      if (options.empty() || !adj[static_cast<std::size_t>(q)].contains(far)) {
        continue;
      }
      std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
      unlink(q, far);
      link(q, options[pick(rng)]);
    }
  }

  std::vector<Edge> pairs;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : adj[static_cast<std::size_t>(u)]) {
      if (u < v) {
        pairs.push_back({u, v});
      }
    }
  }
  return Digraph::undirected(n, pairs);
}

Network watts_strogatz(int n, int d, double rewire_p, std::uint64_t seed, WeightRule rule) {
  return apply_weights(watts_strogatz_graph(n, d, rewire_p, seed), rule, seed);
}

} // namespace linkfdi
