#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fcds/graph.hpp"

namespace fcds {

// Edge-list text format:
//   n <count>
//   u v
//   ...
// Lines starting with '#' and blank lines are ignored.

/// Parses the edge-list format. Duplicate edges are dropped with a
/// message appended to `warnings` (when non-null). Throws GraphError.
Graph parse_graph(std::istream& in, std::vector<std::string>* warnings = nullptr);
Graph load_graph(const std::filesystem::path& path, std::vector<std::string>* warnings = nullptr);

void write_graph(const Graph& g, std::ostream& out);
void save_graph(const Graph& g, const std::filesystem::path& path);

}  // namespace fcds
