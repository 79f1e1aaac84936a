#pragma once

#include "cycleweave/graph.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace cycleweave {

/// Edge-list text format:
///   lines starting with '#' are comments
///   first data line: "n m"  (m is advisory; mismatch only warns)
///   then one "u v" per line
struct EdgeListReadResult {
    Graph graph;
    std::optional<std::string> warning; // set when the declared m disagrees
};

EdgeListReadResult read_edge_list(std::istream& in);
EdgeListReadResult read_edge_list_file(const std::string& path);

void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list_file(const std::string& path, const Graph& g);

} // namespace cycleweave
