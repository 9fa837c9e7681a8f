#include "fcds/graph_io.hpp"

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

namespace fcds {

namespace {

bool parse_id(std::istringstream& fields, unsigned long long& out) {
  std::string token;
  if (!(fields >> token)) return false;
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) return false;
  try {
    out = std::stoull(token);
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

std::string at_line(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

}  // namespace

Graph parse_graph(std::istream& in, std::vector<std::string>* warnings) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    if (!n) {
      std::string keyword;
      unsigned long long count = 0;
      if (!(fields >> keyword) || keyword != "n" || !parse_id(fields, count)) {
        throw GraphError(at_line(line_no) + "expected header \"n <count>\"");
      }
      std::string rest;
      if (fields >> rest) throw GraphError(at_line(line_no) + "trailing data after header");
      n = static_cast<std::size_t>(count);
      continue;
    }
    unsigned long long u = 0, v = 0;
    std::string rest;
    if (!parse_id(fields, u) || !parse_id(fields, v) || (fields >> rest)) {
      throw GraphError(at_line(line_no) + "malformed edge line \"" + line + "\"");
    }
    if (u >= *n || v >= *n) throw GraphError(at_line(line_no) + "node id out of range");
    if (u == v) throw GraphError(at_line(line_no) + "self-loop at node " + std::to_string(u));
    Edge key{static_cast<RealNodeId>(std::min(u, v)), static_cast<RealNodeId>(std::max(u, v))};
    if (!seen.insert(key).second) {
      if (warnings) warnings->push_back(at_line(line_no) + "duplicate edge " + std::to_string(key.first) + " " + std::to_string(key.second));
      continue;
    }
    edges.push_back(key);
  }
  if (!n) throw GraphError("missing header \"n <count>\"");
  return Graph::from_edges(*n, edges);
}

Graph load_graph(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file " + path.string());
  return parse_graph(in, warnings);
}

void write_graph(const Graph& g, std::ostream& out) {
  out << "n " << g.node_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void save_graph(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write graph file " + path.string());
  write_graph(g, out);
  out.flush();
  if (!out) throw GraphError("write failed for " + path.string());
}

}  // namespace fcds
