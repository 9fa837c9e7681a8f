#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fcds {

using RealNodeId = std::uint32_t;
using Edge = std::pair<RealNodeId, RealNodeId>;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Undirected simple graph over node ids 0..n-1. Immutable once built.
class Graph {
 public:
  /// Builds a graph from an edge list. Duplicate edges (in either
  /// orientation) collapse to one. Throws GraphError on self-loops,
  /// ids >= n, or n == 0.
  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges);

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  /// Sorted ascending.
  std::span<const RealNodeId> neighbors(RealNodeId v) const { return adjacency_.at(v); }
  std::size_t degree(RealNodeId v) const { return adjacency_.at(v).size(); }
  bool has_edge(RealNodeId u, RealNodeId v) const;

  std::size_t max_degree() const;
  std::size_t min_degree() const;

  /// Each edge once as (u, v) with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::vector<RealNodeId>> adjacency_;
  std::size_t edge_count_ = 0;
};

inline constexpr std::size_t kInfiniteDiameter = std::numeric_limits<std::size_t>::max();
inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

struct GraphStats {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t max_degree = 0;
  std::size_t diameter = 0;  // kInfiniteDiameter when disconnected
  std::size_t vertex_connectivity = 0;

  bool operator==(const GraphStats&) const = default;
};

/// Hop distances from `source`; kUnreachable for other components.
std::vector<std::size_t> bfs_distances(const Graph& g, RealNodeId source);

bool is_connected(const Graph& g);

/// Max BFS eccentricity, or kInfiniteDiameter if g is disconnected.
std::size_t diameter(const Graph& g);

/// Maximum number of internally vertex-disjoint s-t paths for a
/// non-adjacent pair, computed by unit-capacity max-flow on the
/// split-vertex network. Stops early once `limit` paths are found.
std::size_t local_vertex_connectivity(const Graph& g, RealNodeId s, RealNodeId t,
                                      std::size_t limit = std::numeric_limits<std::size_t>::max());

/// Minimum number of vertices whose removal disconnects g (n-1 for
/// complete graphs, 0 for disconnected graphs).
std::size_t vertex_connectivity(const Graph& g);

GraphStats graph_stats(const Graph& g);

}  // namespace fcds
