#pragma once

#include <iosfwd>
#include <string>

#include "linkfdi/graph.hpp"

namespace linkfdi {

/// Plain-text edge list:
///
///     # comment
///     n 4
///     1 2 1.0
///     2 3 0.5 b
///     3 2 0.5 b
///
/// Ids are 1-based. A trailing "b" marks a bidirectional edge and must appear
/// on both orientations. Throws ParseError with the offending line.
Network read_edge_list(std::istream& in);
Network read_edge_list_file(const std::string& path);

void write_edge_list(std::ostream& out, const Network& net);

} // namespace linkfdi
