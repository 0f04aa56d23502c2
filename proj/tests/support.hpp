#pragma once

// Test-side oracles and fixtures. Nothing here calls into the library's
// algorithms except to construct inputs.

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "linkfdi/graph.hpp"
#include "linkfdi/signal.hpp"

namespace testsupport {

using linkfdi::Digraph;
using linkfdi::Edge;
using linkfdi::InWeighting;
using linkfdi::NodeId;

inline Digraph path_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) {
    e.push_back({i, i + 1});
  }
  return Digraph(n, e);
}

inline Digraph cycle_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) {
    e.push_back({i, (i + 1) % n});
  }
  return Digraph(n, e);
}

/// Random digraph: each ordered pair with probability p, a fraction of the
/// reciprocal pairs marked bidirectional, optional self-loops.
inline Digraph random_digraph(std::mt19937_64& rng, int n, double p, double bidir_p = 0.0, double loop_p = 0.0) {
  std::bernoulli_distribution edge(p);
  std::bernoulli_distribution bid(bidir_p);
  std::bernoulli_distribution loop(loop_p);
  std::vector<Edge> edges;
  std::vector<Edge> b;
  for (int u = 0; u < n; ++u) {
    if (loop(rng)) {
      edges.push_back({u, u});
    }
    for (int v = 0; v < n; ++v) {
      if (u != v && edge(rng)) {
        edges.push_back({u, v});
      }
    }
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const bool uv = std::find(edges.begin(), edges.end(), Edge{u, v}) != edges.end();
      const bool vu = std::find(edges.begin(), edges.end(), Edge{v, u}) != edges.end();
      if (uv && vu && bid(rng)) {
        b.push_back({u, v});
      }
    }
  }
  return Digraph(n, edges, b);
}

/// Weights uniform in [lo, hi] with random sign when `signed_weights`.
inline InWeighting random_weights(std::mt19937_64& rng, const Digraph& g, double lo = 0.5, double hi = 1.5,
                                  bool signed_weights = false) {
  std::uniform_real_distribution<double> mag(lo, hi);
  std::bernoulli_distribution neg(0.5);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.size(), g.size());
  for (const Edge& e : g.edges()) {
    double w = mag(rng);
    if (signed_weights && neg(rng)) {
      w = -w;
    }
    a(e.head, e.tail) = w;
  }
  return InWeighting(g, a);
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) {
    x(i) = d(rng);
  }
  return x;
}

constexpr int kUnreachable = std::numeric_limits<int>::max();

/// Floyd-Warshall hop distances, dist[from][to].
inline std::vector<std::vector<int>> floyd_warshall(const Digraph& g) {
  const int n = g.size();
  const long long inf = std::numeric_limits<long long>::max() / 4;
  std::vector<std::vector<long long>> d(n, std::vector<long long>(n, inf));
  for (int v = 0; v < n; ++v) {
    d[v][v] = 0;
  }
  for (const Edge& e : g.edges()) {
    if (!e.is_self_loop()) {
      d[e.tail][e.head] = 1;
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  }
  std::vector<std::vector<int>> out(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out[i][j] = d[i][j] >= inf ? kUnreachable : static_cast<int>(d[i][j]);
    }
  }
  return out;
}

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
inline Eigen::MatrixXd expm(const Eigen::MatrixXd& m) {
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  }
  const Eigen::MatrixXd scaled = m / std::pow(2.0, squarings);
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  Eigen::MatrixXd term = result;
  for (int k = 1; k <= 20; ++k) {
    term = term * scaled / static_cast<double>(k);
    result += term;
  }
  for (int i = 0; i < squarings; ++i) {
    result = result * result;
  }
  return result;
}

/// Jump at (p, k) from full dense derivative recursions on each side:
/// y_0 = x, y_j = M y_{j-1} + f_{j-1}, with M = A before and Abar after.
inline double dense_jump(const Eigen::MatrixXd& a, const Eigen::MatrixXd& abar, const std::vector<Eigen::VectorXd>& f,
                         const Eigen::VectorXd& x, int p, int k) {
  Eigen::VectorXd y = x;
  Eigen::VectorXd ybar = x;
  for (int j = 1; j <= k; ++j) {
    y = a * y + f[j - 1];
    ybar = abar * ybar + f[j - 1];
  }
  return ybar(p) - y(p);
}

/// A smooth nonzero input acting on `inputs` random channels.
inline linkfdi::InputSignal random_input(std::mt19937_64& rng, int n, int inputs) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Eigen::MatrixXd b(n, inputs);
  std::vector<linkfdi::SignalChannel> channels;
  for (int c = 0; c < inputs; ++c) {
    for (int i = 0; i < n; ++i) {
      b(i, c) = d(rng);
    }
    linkfdi::SignalChannel ch;
    ch.poly = {d(rng), d(rng), d(rng)};
    ch.amplitude = d(rng);
    ch.omega = 1.0 + std::abs(d(rng));
    ch.phase = d(rng);
    channels.push_back(ch);
  }
  return linkfdi::InputSignal(b, channels);
}

} // namespace testsupport
