#include "fcds/helper_graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>

namespace fcds {

HelperGraph::HelperGraph(ClassId cls, std::vector<HelperVertex> type2_side, std::vector<HelperEdge> edges)
    : cls_(cls), type2_side_(std::move(type2_side)), edges_(std::move(edges)) {
  std::sort(type2_side_.begin(), type2_side_.end());
  type2_side_.erase(std::unique(type2_side_.begin(), type2_side_.end()), type2_side_.end());
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (const auto& e : edges_) {
    type1_side_.push_back(e.type1_vertex());
    if (!std::binary_search(type2_side_.begin(), type2_side_.end(), e.type2_vertex())) {
      type2_side_.insert(std::upper_bound(type2_side_.begin(), type2_side_.end(), e.type2_vertex()),
                         e.type2_vertex());
    }
  }
  std::sort(type1_side_.begin(), type1_side_.end());
  type1_side_.erase(std::unique(type1_side_.begin(), type1_side_.end()), type1_side_.end());
}

std::vector<HelperEdge> HelperGraph::edges_of(const VirtualNodeId& component) const {
  std::vector<HelperEdge> out;
  for (const auto& e : edges_) {
    if (e.component == component) out.push_back(e);
  }
  return out;
}

namespace {

struct BuildState {
  std::set<ComponentIndex> near;
  std::optional<ComponentIndex> offered;
  std::vector<RealNodeId> joined_by;  // type-1 neighbours that answered our offer
  std::map<ComponentIndex, std::vector<RealNodeId>> offers;
  std::vector<ComponentIndex> joined;
  std::deque<ComponentIndex> pending;
};

}  // namespace

HelperBuild build_helper_graph(sim::Network& net, const VirtualGraph& vg, std::uint32_t layer, ClassId cls,
                               const ComponentMap& components) {
  if (!vg.is_upper(layer)) throw std::out_of_range("helper graphs are built on upper layers");
  if (components.layer != layer) throw std::invalid_argument("component map belongs to another layer");
  const std::size_t n = vg.base().node_count();
  std::vector<BuildState> states(n);
  for (RealNodeId v = 0; v < n; ++v) states[v].near = components.knowledge.at(v).components_near(cls);

  HelperBuild out;

  // Type-2 copy v joins as (v, C) iff every class-cls old neighbour lies in
  // the single component C and the real node hosts no copy of C.
  net.run_round(std::span<BuildState>(states),
                [&](const sim::NodeContext& ctx, BuildState& st, std::span<const sim::Envelope> inbox) {
                  if (!inbox.empty()) throw std::logic_error("stale messages before helper construction");
                  sim::StepResult step;
                  const bool hosts_class = components.knowledge[ctx.node()].own.count(cls) > 0;
                  if (!hosts_class && st.near.size() == 1) {
                    st.offered = *st.near.begin();
                    step.message = sim::SimMessage{sim::MsgTag::helper_offer, std::nullopt, {cls, *st.offered}};
                  }
                  return step;
                });
  out.rounds += 1;

  // Type-1 copy w joins as (w, C) iff it neighbours some other component
  // of the class but not C. One answer per offered component per round.
  // A node's own type-2 offer never qualifies: both copies see the same
  // old neighbourhood, so w would neighbour C.
  auto respond = [&](const sim::NodeContext& ctx, BuildState& st, std::span<const sim::Envelope> inbox) {
    for (const auto& env : inbox) {
      const auto comp = static_cast<ComponentIndex>(env.message.fields.at(1));
      if (env.message.tag == sim::MsgTag::helper_offer) {
        st.offers[comp].push_back(env.from);
      } else if (env.message.tag == sim::MsgTag::helper_join) {
        if (st.offered && *st.offered == comp) st.joined_by.push_back(env.from);
      } else {
        throw std::logic_error("unexpected message during helper construction");
      }
    }
    if (ctx.phase_round() == 0) {
      for (const auto& [comp, from] : st.offers) {
        if (!st.near.empty() && st.near.count(comp) == 0) {
          st.joined.push_back(comp);
          st.pending.push_back(comp);
        }
      }
    }
    sim::StepResult step;
    if (!st.pending.empty()) {
      step.message = sim::SimMessage{sim::MsgTag::helper_join, std::nullopt, {cls, st.pending.front()}};
      st.pending.pop_front();
    }
    step.active = !st.pending.empty();
    return step;
  };
  const std::uint64_t cap = vg.base().max_degree() + 1;
  auto fix = net.run_until_fixpoint(std::span<BuildState>(states), respond, cap);
  out.rounds += fix.rounds;
  if (fix.truncated) throw std::logic_error("helper construction exceeded Delta + 1 response rounds");

  // Both sides know every incident edge; the two views must agree.
  std::vector<HelperVertex> type2_side;
  std::vector<HelperEdge> from_type2, from_type1;
  for (RealNodeId v = 0; v < n; ++v) {
    const BuildState& st = states[v];
    if (st.offered) {
      const VirtualNodeId comp = vg.from_index(*st.offered);
      const VirtualNodeId t2{v, layer, CopyKind::type2};
      type2_side.push_back({t2, comp});
      for (RealNodeId w : st.joined_by) from_type2.push_back({t2, {w, layer, CopyKind::type1}, comp});
    }
    for (ComponentIndex c : st.joined) {
      const VirtualNodeId comp = vg.from_index(c);
      for (RealNodeId x : st.offers.at(c)) from_type1.push_back({{x, layer, CopyKind::type2}, {v, layer, CopyKind::type1}, comp});
    }
  }
  std::sort(from_type2.begin(), from_type2.end());
  std::sort(from_type1.begin(), from_type1.end());
  if (from_type2 != from_type1) throw std::logic_error("type-1 and type-2 views of the helper graph disagree");
  out.graph = HelperGraph(cls, std::move(type2_side), std::move(from_type1));
  return out;
}

}  // namespace fcds
