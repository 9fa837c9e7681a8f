#include "fcds/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace fcds::oracle {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a), b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Closed real neighbourhood, ascending.
std::vector<RealNodeId> closed_neighbourhood(const Graph& g, RealNodeId v) {
  std::vector<RealNodeId> out(g.neighbors(v).begin(), g.neighbors(v).end());
  out.insert(std::lower_bound(out.begin(), out.end(), v), v);
  return out;
}

std::uint32_t old_end_slot(const VirtualGraph& vg, std::uint32_t layer) {
  if (layer < 1 || layer > 2 * vg.layers() + 1) throw std::out_of_range("layer out of range");
  return vg.first_slot(layer);
}

}  // namespace

std::uint32_t OldComponents::count(ClassId cls) const {
  auto it = counts.find(cls);
  return it == counts.end() ? 0 : it->second;
}

std::vector<ComponentIndex> OldComponents::ids(const ClassAssignment& assignment, ClassId cls) const {
  std::set<ComponentIndex> out;
  for (VirtualIndex idx = 0; idx < component_of.size(); ++idx) {
    if (component_of[idx] != kNoComponent && assignment.at(idx) == cls) out.insert(component_of[idx]);
  }
  return {out.begin(), out.end()};
}

OldComponents old_components(const VirtualGraph& vg, const ClassAssignment& assignment, std::uint32_t layer) {
  const std::uint32_t end = old_end_slot(vg, layer);
  const std::uint32_t copies = vg.copies_per_node();
  const Graph& g = vg.base();
  UnionFind uf(vg.size());
  // One representative per (real node, class): copies of a node are a clique.
  std::vector<std::map<ClassId, VirtualIndex>> rep(g.node_count());
  for (RealNodeId v = 0; v < g.node_count(); ++v) {
    for (std::uint32_t s = 0; s < end; ++s) {
      const VirtualIndex idx = v * copies + s;
      const ClassId cls = assignment.at(idx);
      if (cls == kUnassigned) continue;
      auto [it, fresh] = rep[v].try_emplace(cls, idx);
      if (!fresh) uf.unite(it->second, idx);
    }
  }
  for (const auto& [a, b] : g.edges()) {
    for (const auto& [cls, idx] : rep[a]) {
      if (auto it = rep[b].find(cls); it != rep[b].end()) uf.unite(idx, it->second);
    }
  }
  OldComponents out;
  out.layer = layer;
  out.component_of.assign(vg.size(), kNoComponent);
  std::map<ClassId, std::set<ComponentIndex>> seen;
  for (RealNodeId v = 0; v < g.node_count(); ++v) {
    for (std::uint32_t s = 0; s < end; ++s) {
      const VirtualIndex idx = v * copies + s;
      if (assignment.at(idx) == kUnassigned) continue;
      // The union keeps the smaller index as root, so the root is the minimum.
      out.component_of[idx] = static_cast<ComponentIndex>(uf.find(idx));
      seen[assignment.at(idx)].insert(out.component_of[idx]);
    }
  }
  for (const auto& [cls, ids] : seen) out.counts[cls] = static_cast<std::uint32_t>(ids.size());
  return out;
}

bool check_domination(const VirtualGraph& vg, const ClassAssignment& assignment, ClassId cls,
                      std::optional<std::uint32_t> up_to_layer) {
  const std::uint32_t end = old_end_slot(vg, up_to_layer.value_or(2 * vg.layers()) + 1);
  const Graph& g = vg.base();
  for (RealNodeId v = 0; v < g.node_count(); ++v) {
    bool hit = false;
    for (RealNodeId w : closed_neighbourhood(g, v)) {
      for (std::uint32_t s = 0; s < end && !hit; ++s) hit = assignment.at(w * vg.copies_per_node() + s) == cls;
      if (hit) break;
    }
    if (!hit) return false;
  }
  return true;
}

const char* to_string(ConnectivityReason reason) {
  switch (reason) {
    case ConnectivityReason::connected: return "connected";
    case ConnectivityReason::empty: return "empty";
    case ConnectivityReason::disconnected: return "disconnected";
  }
  return "?";
}

ConnectivityVerdict check_class_connected(const VirtualGraph& vg, const ClassAssignment& assignment, ClassId cls) {
  const Graph& g = vg.base();
  const std::uint32_t copies = vg.copies_per_node();
  std::vector<bool> seen(vg.size(), false);
  ConnectivityVerdict out;
  for (VirtualIndex start = 0; start < vg.size(); ++start) {
    if (seen[start] || assignment.at(start) != cls) continue;
    ++out.components;
    std::queue<VirtualIndex> q;
    q.push(start);
    seen[start] = true;
    while (!q.empty()) {
      const VirtualIndex a = q.front();
      q.pop();
      for (RealNodeId w : closed_neighbourhood(g, a / copies)) {
        for (VirtualIndex b = w * copies; b < (w + 1) * copies; ++b) {
          if (!seen[b] && assignment.at(b) == cls) {
            seen[b] = true;
            q.push(b);
          }
        }
      }
    }
  }
  out.connected = out.components == 1;
  out.reason = out.components == 0   ? ConnectivityReason::empty
               : out.components == 1 ? ConnectivityReason::connected
                                     : ConnectivityReason::disconnected;
  return out;
}

std::vector<ConnectorPath> enumerate_connector_paths(const VirtualGraph& vg, const ClassAssignment& assignment,
                                                     std::uint32_t layer, const OldComponents& comps,
                                                     ComponentIndex component) {
  if (!vg.is_upper(layer)) throw std::out_of_range("connector paths live on upper layers");
  if (comps.layer != layer) throw std::invalid_argument("components belong to another layer");
  const Graph& g = vg.base();
  const std::uint32_t copies = vg.copies_per_node();
  const std::uint32_t end = vg.first_slot(layer);
  const ClassId cls = assignment.at(component);

  // For each real node: smallest old class-cls neighbour per component.
  std::vector<std::map<ComponentIndex, VirtualIndex>> near(g.node_count());
  for (RealNodeId x = 0; x < g.node_count(); ++x) {
    for (RealNodeId y : closed_neighbourhood(g, x)) {
      for (std::uint32_t s = 0; s < end; ++s) {
        const VirtualIndex idx = y * copies + s;
        if (assignment.at(idx) != cls) continue;
        auto [it, fresh] = near[x].try_emplace(comps.component_of[idx], idx);
        if (!fresh) it->second = std::min(it->second, idx);
      }
    }
  }

  std::vector<ConnectorPath> out;
  for (RealNodeId x = 0; x < g.node_count(); ++x) {
    const auto& nx = near[x];
    auto sc = nx.find(component);
    if (sc == nx.end()) continue;
    const VirtualNodeId s = vg.from_index(sc->second);

    // Short: a type-1 copy next to C and some C'.
    const VirtualNodeId v1{x, layer, CopyKind::type1};
    for (const auto& [other, u] : nx) {
      if (other == component) continue;
      out.push_back({PathKind::short_path, s, {v1}, vg.from_index(u), component, other});
    }

    // Long: the type-2 copy sees only C, the type-1 copy w sees no C but some C'.
    if (nx.size() != 1) continue;
    const VirtualNodeId v2{x, layer, CopyKind::type2};
    for (RealNodeId y : closed_neighbourhood(g, x)) {
      const auto& ny = near[y];
      if (ny.count(component) != 0) continue;
      const VirtualNodeId w{y, layer, CopyKind::type1};
      for (const auto& [other, u] : ny) {
        out.push_back({PathKind::long_path, s, {v2, w}, vg.from_index(u), component, other});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Augmenting-path bipartite matching.
std::size_t bipartite_max_matching(const std::vector<std::vector<std::size_t>>& adj, std::size_t right_count) {
  std::vector<std::size_t> match_right(right_count, SIZE_MAX);
  std::vector<char> visited;
  std::function<bool(std::size_t)> augment = [&](std::size_t l) {
    for (std::size_t r : adj[l]) {
      if (visited[r]) continue;
      visited[r] = 1;
      if (match_right[r] == SIZE_MAX || augment(match_right[r])) {
        match_right[r] = l;
        return true;
      }
    }
    return false;
  };
  std::size_t size = 0;
  for (std::size_t l = 0; l < adj.size(); ++l) {
    visited.assign(right_count, 0);
    if (augment(l)) ++size;
  }
  return size;
}

}  // namespace

std::optional<std::size_t> max_disjoint_connector_paths(std::span<const ConnectorPath> paths, std::size_t cap) {
  if (paths.size() > cap) return std::nullopt;
  std::map<VirtualNodeId, std::size_t> right;
  std::map<std::pair<int, VirtualNodeId>, std::size_t> left;  // (0, type-2) or (1, stand-in keyed by type-1)
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& p : paths) {
    const VirtualNodeId w = p.internals.back();
    const std::size_t r = right.try_emplace(w, right.size()).first->second;
    const auto key = p.kind == PathKind::long_path ? std::make_pair(0, p.internals.front()) : std::make_pair(1, w);
    const std::size_t l = left.try_emplace(key, left.size()).first->second;
    edges.emplace(l, r);
  }
  std::vector<std::vector<std::size_t>> adj(left.size());
  for (const auto& [l, r] : edges) adj[l].push_back(r);
  return bipartite_max_matching(adj, right.size());
}

namespace {

class ExhaustiveMatcher {
 public:
  explicit ExhaustiveMatcher(std::vector<std::uint64_t> adj) : adj_(std::move(adj)) {}

  std::size_t solve(std::uint64_t mask) {
    if (mask == 0) return 0;
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    const int u = std::countr_zero(mask);
    const std::uint64_t rest = mask & (mask - 1);
    const std::size_t bound = static_cast<std::size_t>(std::popcount(mask)) / 2;
    std::size_t best = solve(rest);
    for (std::uint64_t nb = adj_[u] & rest; nb != 0 && best < bound; nb &= nb - 1) {
      const int v = std::countr_zero(nb);
      best = std::max(best, 1 + solve(rest & ~(1ULL << v)));
    }
    memo_.emplace(mask, best);
    return best;
  }

 private:
  std::vector<std::uint64_t> adj_;
  std::unordered_map<std::uint64_t, std::size_t> memo_;
};

}  // namespace

std::optional<std::size_t> exhaustive_maximum_matching(const HelperGraph& h, std::size_t cap) {
  if (cap > 64) throw std::invalid_argument("exhaustive matching cap must be at most 64");
  std::map<HelperVertex, std::size_t> id;
  for (const auto& e : h.edges()) {
    id.try_emplace(e.type2_vertex(), id.size());
    id.try_emplace(e.type1_vertex(), id.size());
  }
  std::vector<std::vector<std::size_t>> adj(id.size());
  for (const auto& e : h.edges()) {
    const std::size_t a = id.at(e.type2_vertex()), b = id.at(e.type1_vertex());
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<std::size_t> piece(id.size(), SIZE_MAX);
  std::size_t total = 0;
  for (std::size_t start = 0; start < id.size(); ++start) {
    if (piece[start] != SIZE_MAX) continue;
    std::vector<std::size_t> members{start};
    piece[start] = start;
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t nb : adj[members[i]]) {
        if (piece[nb] == SIZE_MAX) piece[nb] = start, members.push_back(nb);
      }
    }
    if (members.size() > cap) return std::nullopt;
    std::map<std::size_t, int> local;
    for (std::size_t m : members) local.emplace(m, static_cast<int>(local.size()));
    std::vector<std::uint64_t> bits(members.size(), 0);
    for (const auto& [m, lm] : local) {
      for (std::size_t nb : adj[m]) bits[lm] |= 1ULL << local.at(nb);
    }
    const std::uint64_t full = members.size() == 64 ? ~0ULL : (1ULL << members.size()) - 1;
    total += ExhaustiveMatcher(std::move(bits)).solve(full);
  }
  return total;
}

MatchingCheck check_matching(const HelperGraph& h, std::span<const HelperEdge> matching, std::size_t cap) {
  for (const auto& e : matching) {
    if (!std::binary_search(h.edges().begin(), h.edges().end(), e)) {
      throw std::invalid_argument("matching contains an edge outside the helper graph");
    }
  }
  MatchingCheck out;
  out.cls = h.cls();
  out.size = matching.size();
  std::set<HelperVertex> used;
  out.valid = true;
  for (const auto& e : matching) {
    out.valid = used.insert(e.type2_vertex()).second && out.valid;
    out.valid = used.insert(e.type1_vertex()).second && out.valid;
  }
  out.maximal = std::all_of(h.edges().begin(), h.edges().end(), [&](const HelperEdge& e) {
    return used.count(e.type2_vertex()) != 0 || used.count(e.type1_vertex()) != 0;
  });
  out.maximum = exhaustive_maximum_matching(h, cap);
  if (out.maximum) out.ratio_ok = out.size >= (*out.maximum + 1) / 2;
  return out;
}

HelperCheck check_helper_structure(const VirtualGraph& vg, std::uint32_t layer, const HelperGraph& h) {
  HelperCheck out;
  out.layer = layer;
  out.cls = h.cls();
  out.edges = h.edges().size();
  auto on_layer = [&](const VirtualNodeId& a, CopyKind kind) {
    return vg.valid(a) && a.layer == layer && a.kind == kind;
  };
  out.bipartite = true;
  for (const auto& x : h.type2_side()) out.bipartite = out.bipartite && on_layer(x.copy, CopyKind::type2);
  for (const auto& x : h.type1_side()) out.bipartite = out.bipartite && on_layer(x.copy, CopyKind::type1);
  for (const auto& e : h.edges()) {
    out.bipartite = out.bipartite && on_layer(e.type2, CopyKind::type2) && on_layer(e.type1, CopyKind::type1) &&
                    vg.is_adjacent(e.type2, e.type1) &&
                    std::binary_search(h.type2_side().begin(), h.type2_side().end(), e.type2_vertex()) &&
                    std::binary_search(h.type1_side().begin(), h.type1_side().end(), e.type1_vertex());
  }

  std::map<std::pair<VirtualNodeId, VirtualNodeId>, std::size_t> pair_uses;
  for (const auto& e : h.edges()) ++pair_uses[{e.type2, e.type1}];
  std::map<VirtualNodeId, std::size_t> type2_uses;
  for (const auto& x : h.type2_side()) ++type2_uses[x.copy];
  out.attribution_unique =
      std::all_of(pair_uses.begin(), pair_uses.end(), [](const auto& kv) { return kv.second == 1; }) &&
      std::all_of(type2_uses.begin(), type2_uses.end(), [](const auto& kv) { return kv.second == 1; });

  std::map<RealNodeId, std::size_t> type2_real, type1_real;
  for (const auto& x : h.type2_side()) ++type2_real[x.copy.real];
  for (const auto& x : h.type1_side()) ++type1_real[x.copy.real];
  out.type2_per_real = std::all_of(type2_real.begin(), type2_real.end(), [](const auto& kv) { return kv.second <= 1; });
  const std::size_t delta = vg.base().max_degree();
  out.type1_per_real =
      std::all_of(type1_real.begin(), type1_real.end(), [&](const auto& kv) { return kv.second <= delta; });
  return out;
}

bool helper_matches_paths(const VirtualGraph& vg, const HelperGraph& h, std::span<const ConnectorPath> paths) {
  std::set<std::tuple<VirtualNodeId, VirtualNodeId, VirtualNodeId>> from_paths, from_h;
  for (const auto& p : paths) {
    if (p.kind != PathKind::long_path) continue;
    from_paths.emplace(p.internals.front(), p.internals.back(), vg.from_index(p.component));
  }
  for (const auto& e : h.edges()) from_h.emplace(e.type2, e.type1, e.component);
  return from_paths == from_h;
}

PackingVerdict verify_packing(const FcdsPacking& packing, const VirtualGraph& vg, const ClassAssignment& assignment) {
  PackingVerdict out;
  const std::uint32_t copies = vg.copies_per_node();
  const std::size_t n = vg.base().node_count();
  out.denominators_ok = packing.denominator() == copies && packing.real_nodes() == n;
  out.sums_ok = out.denominators_ok;
  out.numerators_ok = out.denominators_ok && assignment.size() == vg.size();
  for (RealNodeId v = 0; v < n && out.numerators_ok; ++v) {
    std::map<ClassId, std::uint32_t> counted;
    for (std::uint32_t s = 0; s < copies; ++s) ++counted[assignment.at(v * copies + s)];
    std::uint64_t sum = 0;
    for (ClassId cls = 1; cls <= packing.classes(); ++cls) {
      const Rational w = packing.weight(v, cls);
      sum += w.num;
      out.denominators_ok = out.denominators_ok && w.den == copies;
      out.numerators_ok = out.numerators_ok && w.num == counted[cls];
    }
    out.sums_ok = out.sums_ok && sum == copies;
  }
  for (ClassId cls = 1; cls <= packing.classes(); ++cls) {
    if (check_domination(vg, assignment, cls) && check_class_connected(vg, assignment, cls).connected) {
      ++out.valid_cds_count;
    }
  }
  out.size = {out.valid_cds_count, copies};
  return out;
}

MlTrajectory ml_trajectory(const VirtualGraph& vg, const ClassAssignment& assignment, std::uint32_t classes) {
  MlTrajectory out;
  out.first_layer = vg.layers();
  out.per_class.assign(classes, {});
  for (std::uint32_t l = vg.layers(); l <= 2 * vg.layers(); ++l) {
    const OldComponents comps = old_components(vg, assignment, l + 1);
    for (ClassId cls = 1; cls <= classes; ++cls) out.per_class[cls - 1].push_back(comps.count(cls));
  }
  return out;
}

bool non_increasing(const MlTrajectory& traj) {
  return std::all_of(traj.per_class.begin(), traj.per_class.end(),
                     [](const auto& row) { return std::is_sorted(row.rbegin(), row.rend()); });
}

const char* to_string(VerifyLevel level) { return level == VerifyLevel::full ? "full" : "structural"; }

VerifyLevel parse_verify_level(const std::string& name) {
  if (name == "structural") return VerifyLevel::structural;
  if (name == "full") return VerifyLevel::full;
  throw std::invalid_argument("unknown verification level '" + name + "'");
}

bool VerifierReport::all_dominating() const {
  return std::all_of(classes.begin(), classes.end(), [](const ClassVerdict& c) { return c.dominating; });
}

bool VerifierReport::all_dominating_lower() const {
  return std::all_of(classes.begin(), classes.end(), [](const ClassVerdict& c) { return c.dominating_lower; });
}

VerifierReport verify_run(const Graph& g, const RunResult& run, VerifyLevel level) {
  const VirtualGraph vg(g, run.params.layers);
  const std::uint32_t t = run.params.classes;
  VerifierReport out;
  out.level = level;
  auto violate = [&](std::string what) { out.violations.push_back(std::move(what)); };

  for (ClassId cls = 1; cls <= t; ++cls) {
    ClassVerdict c;
    c.cls = cls;
    c.dominating = check_domination(vg, run.assignment, cls);
    c.dominating_lower = check_domination(vg, run.assignment, cls, vg.layers());
    c.connectivity = check_class_connected(vg, run.assignment, cls);
    out.classes.push_back(c);
  }

  if (level == VerifyLevel::full) out.components_agree = true;
  for (const LayerRecord& rec : run.layers) {
    const std::string where = " (layer " + std::to_string(rec.layer) + ", class ";
    std::optional<OldComponents> comps;
    if (level == VerifyLevel::full) {
      comps = old_components(vg, run.assignment, rec.layer);
      const std::uint32_t end = vg.first_slot(rec.layer);
      for (VirtualIndex idx = 0; idx < vg.size(); ++idx) {
        const bool old = idx % vg.copies_per_node() < end;
        const ComponentIndex expect = old ? comps->component_of[idx] : kNoComponent;
        if (rec.components.component_of.at(idx) != expect) *out.components_agree = false;
      }
    }
    for (ClassId cls = 1; cls <= t; ++cls) {
      const HelperGraph& h = rec.helpers.at(cls - 1);
      const MatchingResult& m = rec.matchings.at(cls - 1);
      HelperCheck hc = check_helper_structure(vg, rec.layer, h);
      MatchingCheck mc = check_matching(h, m.matched);
      mc.layer = rec.layer;

      if (comps) {
        std::vector<ConnectorPath> all_long;
        for (ComponentIndex c : comps->ids(run.assignment, cls)) {
          const auto paths = enumerate_connector_paths(vg, run.assignment, rec.layer, *comps, c);
          ComponentPathsRecord pr;
          pr.layer = rec.layer;
          pr.cls = cls;
          pr.component = vg.from_index(c);
          pr.class_components = comps->count(cls);
          for (const auto& p : paths) {
            if (p.kind == PathKind::short_path) {
              ++pr.short_paths;
            } else {
              ++pr.long_paths;
              all_long.push_back(p);
            }
          }
          pr.max_disjoint = max_disjoint_connector_paths(paths);
          out.paths.push_back(pr);
        }
        hc.matches_paths = helper_matches_paths(vg, h, all_long);
      }

      if (!hc.ok()) violate("helper graph structure" + where + std::to_string(cls) + ")");
      if (!mc.valid) violate("matching shares an endpoint" + where + std::to_string(cls) + ")");
      if (!mc.maximal && !m.truncated) violate("matching is not maximal" + where + std::to_string(cls) + ")");
      if (mc.ratio_ok && !*mc.ratio_ok) violate("matching below half of maximum" + where + std::to_string(cls) + ")");
      out.helpers.push_back(hc);
      out.matchings.push_back(mc);
    }
  }
  if (out.components_agree && !*out.components_agree) violate("protocol components differ from the oracle");

  out.packing = verify_packing(run.packing, vg, run.assignment);
  if (!out.packing.valid()) violate("packing weights are inconsistent");

  out.ml = ml_trajectory(vg, run.assignment, t);
  out.ml_monotone = non_increasing(out.ml);
  out.ml_matches_protocol = out.ml == run.trajectory;
  if (!out.ml_matches_protocol) violate("protocol component counts differ from the oracle");
  return out;
}

std::optional<std::size_t> min_disjoint_paths(const VerifierReport& report) {
  std::optional<std::size_t> best;
  for (const auto& p : report.paths) {
    if (p.class_components < 2 || !p.max_disjoint) continue;
    best = best ? std::min(*best, *p.max_disjoint) : *p.max_disjoint;
  }
  return best;
}

}  // namespace fcds::oracle
