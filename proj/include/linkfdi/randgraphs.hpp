#pragma once

#include <cstdint>
#include <string>

#include "linkfdi/graph.hpp"

namespace linkfdi {

enum class WeightRule {
  Unit,      ///< 1 on every edge
  Laplacian, ///< -L with a self-loop on every node of positive in-degree
  Uniform,   ///< independent draws from [0.5, 1.5]
};

WeightRule weight_rule_from_string(const std::string& name);
const char* weight_rule_name(WeightRule rule);

/// Weights for g under `rule`. Laplacian adds the self-loops it needs, so the
/// returned graph may differ from g.
Network apply_weights(const Digraph& g, WeightRule rule, std::uint64_t seed);

/// Directed: every ordered pair independently with probability p.
/// Undirected: every unordered pair, added in both orientations and marked
/// bidirectional.
Digraph erdos_renyi_graph(int n, double p, bool directed, std::uint64_t seed);
Network erdos_renyi(int n, double p, bool directed, std::uint64_t seed, WeightRule rule = WeightRule::Unit);

/// n uniform points in [0, side]^2.
std::vector<std::pair<double, double>> random_points(int n, double side, std::uint64_t seed);

/// Undirected edge between points at Euclidean distance <= radius.
Digraph geometric_graph(const std::vector<std::pair<double, double>>& points, double radius);
Network random_geometric(int n, double radius, double side, std::uint64_t seed, WeightRule rule = WeightRule::Unit);

struct GeometricInstance {
  Digraph graph;
  double radius = 0.0;
};

/// Geometric graph with exactly `edges` undirected edges: the radius is the
/// edges-th smallest pairwise distance. Throws InvalidInput when the point
/// set has fewer pairs or a distance tie straddles the cut.
GeometricInstance geometric_with_edge_count(int n, int edges, double side, std::uint64_t seed);

/// One orientation of each bidirectional pair, chosen by a fair coin.
/// Throws InvalidInput unless every non-self-loop edge is bidirectional.
Digraph random_orientation(const Digraph& g, std::uint64_t seed);

/// Every bidirectional pair split into two independent directed edges.
Digraph split_bidirectional(const Digraph& g);

/// Ring lattice with d/2 neighbors per side, then each lattice edge (q, q+j)
/// is rewired with probability rewire_p to (q, r) for a uniformly chosen r not
/// adjacent to q. Undirected throughout.
Digraph watts_strogatz_graph(int n, int d, double rewire_p, std::uint64_t seed);
Network watts_strogatz(int n, int d, double rewire_p, std::uint64_t seed, WeightRule rule = WeightRule::Unit);

} // namespace linkfdi
