#include "fcds/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

namespace fcds {

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges) {
  if (node_count == 0) throw GraphError("graph must have at least one node");
  Graph g;
  g.adjacency_.resize(node_count);
  for (auto [u, v] : edges) {
    if (u >= node_count || v >= node_count) {
      throw GraphError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") references a node id >= " + std::to_string(node_count));
    }
    if (u == v) throw GraphError("self-loop at node " + std::to_string(u));
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  for (auto& list : g.adjacency_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    g.edge_count_ += list.size();
  }
  g.edge_count_ /= 2;
  return g;
}

bool Graph::has_edge(RealNodeId u, RealNodeId v) const {
  if (u >= node_count() || v >= node_count()) return false;
  const auto& list = adjacency_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (const auto& list : adjacency_) best = std::max(best, list.size());
  return best;
}

std::size_t Graph::min_degree() const {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const auto& list : adjacency_) best = std::min(best, list.size());
  return adjacency_.empty() ? 0 : best;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (RealNodeId u = 0; u < node_count(); ++u) {
    for (RealNodeId v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<std::size_t> bfs_distances(const Graph& g, RealNodeId source) {
  std::vector<std::size_t> dist(g.node_count(), kUnreachable);
  std::queue<RealNodeId> frontier;
  dist.at(source) = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    RealNodeId u = frontier.front();
    frontier.pop();
    for (RealNodeId v : g.neighbors(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        frontier.push(v);
      }
    }
  }
  return dist;
}

bool is_connected(const Graph& g) {
  auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](std::size_t d) { return d == kUnreachable; });
}

std::size_t diameter(const Graph& g) {
  std::size_t best = 0;
  for (RealNodeId s = 0; s < g.node_count(); ++s) {
    for (std::size_t d : bfs_distances(g, s)) {
      if (d == kUnreachable) return kInfiniteDiameter;
      best = std::max(best, d);
    }
  }
  return best;
}

namespace {

// Unit-capacity residual network with vertex splitting: node v becomes
// v_in = 2v and v_out = 2v + 1 joined by an arc of capacity 1.
class SplitFlowNetwork {
 public:
  SplitFlowNetwork(const Graph& g, RealNodeId s, RealNodeId t) : head_(2 * g.node_count(), -1) {
    for (RealNodeId v = 0; v < g.node_count(); ++v) {
      int cap = (v == s || v == t) ? static_cast<int>(g.node_count()) : 1;
      add_arc(2 * v, 2 * v + 1, cap);
      for (RealNodeId w : g.neighbors(v)) add_arc(2 * v + 1, 2 * w, 1);
    }
  }

  // Finds one augmenting path by BFS and pushes a unit of flow along it.
  bool augment(int source, int sink) {
    std::vector<int> via(head_.size(), -1);
    std::vector<bool> seen(head_.size(), false);
    std::queue<int> frontier;
    frontier.push(source);
    seen[source] = true;
    while (!frontier.empty() && !seen[sink]) {
      int u = frontier.front();
      frontier.pop();
      for (int a = head_[u]; a != -1; a = next_[a]) {
        int v = to_[a];
        if (!seen[v] && cap_[a] > 0) {
          seen[v] = true;
          via[v] = a;
          frontier.push(v);
        }
      }
    }
    if (!seen[sink]) return false;
    for (int v = sink; v != source;) {
      int a = via[v];
      cap_[a] -= 1;
      cap_[a ^ 1] += 1;
      v = to_[a ^ 1];
    }
    return true;
  }

 private:
  void add_arc(int u, int v, int cap) {
    to_.push_back(v), cap_.push_back(cap), next_.push_back(head_[u]);
    head_[u] = static_cast<int>(to_.size()) - 1;
    to_.push_back(u), cap_.push_back(0), next_.push_back(head_[v]);
    head_[v] = static_cast<int>(to_.size()) - 1;
  }

  std::vector<int> head_, to_, cap_, next_;
};

}  // namespace

std::size_t local_vertex_connectivity(const Graph& g, RealNodeId s, RealNodeId t, std::size_t limit) {
  if (s == t || g.has_edge(s, t)) throw std::invalid_argument("local connectivity needs distinct non-adjacent nodes");
  SplitFlowNetwork net(g, s, t);
  std::size_t flow = 0;
  while (flow < limit && net.augment(2 * static_cast<int>(s) + 1, 2 * static_cast<int>(t))) ++flow;
  return flow;
}

std::size_t vertex_connectivity(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n < 2) return 0;
  std::size_t best = n - 1;
  // Even's scheme: some minimum separator misses one of the first best+1
  // vertices, so sources beyond that index never improve the bound.
  for (RealNodeId s = 0; s < n && s <= best; ++s) {
    for (RealNodeId t = s + 1; t < n; ++t) {
      if (g.has_edge(s, t)) continue;
      best = std::min(best, local_vertex_connectivity(g, s, t, best));
      if (best == 0) return 0;
    }
  }
  return best;
}

GraphStats graph_stats(const Graph& g) {
  GraphStats stats;
  stats.n = g.node_count();
  stats.m = g.edge_count();
  stats.max_degree = g.max_degree();
  stats.diameter = diameter(g);
  stats.vertex_connectivity = vertex_connectivity(g);
  return stats;
}

}  // namespace fcds
