#include "linkfdi/graph_io.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <vector>

#include "linkfdi/error.hpp"

namespace linkfdi {

namespace {

struct EdgeLine {
  Edge edge;
  double weight = 0.0;
  bool bidirectional = false;
  std::size_t line = 0;
};

bool blank_or_comment(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

} // namespace

Network read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  int n = -1;
  std::vector<EdgeLine> rows;
  std::map<Edge, std::size_t> seen;

  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) {
      continue;
    }
    std::istringstream tokens(line);
    if (n < 0) {
      std::string tag;
      long long count = -1;
      std::string extra;
      if (!(tokens >> tag >> count) || tag != "n" || (tokens >> extra)) {
        throw ParseError(line_no, "expected header \"n <count>\"");
      }
      if (count <= 0 || count > 1'000'000) {
        throw ParseError(line_no, "node count must be positive");
      }
      n = static_cast<int>(count);
      continue;
    }

    long long tail = 0;
    long long head = 0;
    double weight = 0.0;
    if (!(tokens >> tail >> head >> weight)) {
      throw ParseError(line_no, "expected \"tail head weight [b]\"");
    }
    std::string flag;
    std::string extra;
    bool bidirectional = false;
    if (tokens >> flag) {
      if (flag != "b" || (tokens >> extra)) {
        throw ParseError(line_no, "unexpected token \"" + flag + "\"");
      }
      bidirectional = true;
    }
    if (tail < 1 || tail > n || head < 1 || head > n) {
      throw ParseError(line_no, "node id out of range 1.." + std::to_string(n));
    }
    const Edge e{static_cast<NodeId>(tail - 1), static_cast<NodeId>(head - 1)};
    if (bidirectional && e.is_self_loop()) {
      throw ParseError(line_no, "a self-loop cannot be bidirectional");
    }
    if (!seen.emplace(e, line_no).second) {
      throw ParseError(line_no, "duplicate edge");
    }
    rows.push_back({e, weight, bidirectional, line_no});
  }
  if (n < 0) {
    throw ParseError(line_no == 0 ? 1 : line_no, "missing header \"n <count>\"");
  }

  std::map<Edge, bool> flags;
  for (const auto& r : rows) {
    flags[r.edge] = r.bidirectional;
  }
  std::vector<Edge> edges;
  std::vector<Edge> bidir;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& r : rows) {
    if (r.bidirectional) {
      const auto rev = flags.find(r.edge.reversed());
      if (rev == flags.end() || !rev->second) {
        throw ParseError(r.line, "bidirectional edge needs its reverse marked \"b\" as well");
      }
      bidir.push_back(r.edge);
    }
    edges.push_back(r.edge);
    a(r.edge.head, r.edge.tail) = r.weight;
  }
  Digraph g(n, std::move(edges), bidir);
  InWeighting w(g, std::move(a));
  return {std::move(g), std::move(w)};
}

Network read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInput("cannot open " + path);
  }
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Network& net) {
  const Digraph& g = net.graph;
  out << "n " << g.size() << '\n';
  out << std::setprecision(17);
  for (const Edge& e : g.edges()) {
    out << e.tail + 1 << ' ' << e.head + 1 << ' ' << net.weights(e.head, e.tail);
    if (g.is_bidirectional(e)) {
      out << " b";
    }
    out << '\n';
  }
}

} // namespace linkfdi
