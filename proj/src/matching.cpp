#include "fcds/matching.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>

namespace fcds {

std::uint32_t matching_round_cap(std::uint64_t virtual_nodes) {
  std::uint32_t log2n = 0;
  while ((1ULL << log2n) < virtual_nodes) ++log2n;
  return kMatchingRoundMultiplier * std::max<std::uint32_t>(log2n, 1);
}

namespace {

struct Proposal {
  std::uint64_t label;
  RealNodeId from;
};

// Per real node: its single type-2 vertex of this class (if any) and its
// type-1 vertices, one per component.
struct MatchState {
  bool has_type2 = false;
  VirtualNodeId type2;
  ComponentIndex component = kNoComponent;
  std::vector<RealNodeId> partners;  // real nodes of the type-1 neighbours, ascending
  std::vector<bool> alive;
  std::optional<RealNodeId> matched_to;

  std::map<ComponentIndex, std::optional<RealNodeId>> type1;  // component -> matched type-2 real node
  std::deque<std::pair<RealNodeId, ComponentIndex>> pending_accepts;

  bool wants_to_propose() const {
    return has_type2 && !matched_to && std::find(alive.begin(), alive.end(), true) != alive.end();
  }
};

}  // namespace

MatchingResult distributed_maximal_matching(sim::Network& net, const VirtualGraph& vg, const HelperGraph& h,
                                            std::uint32_t max_matching_rounds) {
  const std::size_t n = vg.base().node_count();
  std::vector<MatchState> states(n);
  for (const auto& vtx : h.type2_side()) {
    MatchState& st = states.at(vtx.copy.real);
    if (st.has_type2) throw std::invalid_argument("two type-2 helper vertices on one real node");
    st.has_type2 = true;
    st.type2 = vtx.copy;
    st.component = vg.index(vtx.component);
  }
  for (const auto& e : h.edges()) {
    if (e.type2.real == e.type1.real || !vg.base().has_edge(e.type2.real, e.type1.real)) {
      throw std::invalid_argument("helper edge does not follow a real edge");
    }
    MatchState& st = states[e.type2.real];
    if (st.type2 != e.type2 || st.component != vg.index(e.component)) {
      throw std::invalid_argument("helper edge with unknown type-2 endpoint");
    }
    st.partners.push_back(e.type1.real);
    states[e.type1.real].type1[vg.index(e.component)] = std::nullopt;
  }
  for (auto& st : states) {
    std::sort(st.partners.begin(), st.partners.end());
    st.alive.assign(st.partners.size(), true);
  }

  const std::uint64_t label_bound = net.budget().label_bound();
  MatchingResult result;

  auto propose = [&](const sim::NodeContext& ctx, MatchState& st, std::span<const sim::Envelope> inbox) {
    if (!inbox.empty()) throw std::logic_error("stale messages before a matching round");
    sim::StepResult step;
    if (!st.wants_to_propose()) return step;
    std::optional<std::size_t> best;
    std::uint64_t best_label = 0;
    for (std::size_t j = 0; j < st.partners.size(); ++j) {
      if (!st.alive[j]) continue;
      const std::uint64_t label = ctx.uniform(sim::draw::edge_label | j, label_bound);
      // Partners ascend, so strict > keeps the smaller edge id on ties.
      if (!best || label > best_label) best = j, best_label = label;
    }
    step.message = sim::SimMessage{sim::MsgTag::propose, st.partners[*best], {h.cls(), st.component, best_label}};
    return step;
  };

  auto accept = [&](const sim::NodeContext& ctx, MatchState& st, std::span<const sim::Envelope> inbox) {
    std::map<ComponentIndex, Proposal> best;
    for (const auto& env : inbox) {
      const auto& m = env.message;
      const auto comp = static_cast<ComponentIndex>(m.fields.at(1));
      if (m.tag == sim::MsgTag::propose) {
        if (*m.to != ctx.node()) continue;
        auto it = st.type1.find(comp);
        if (it == st.type1.end() || it->second) throw std::logic_error("proposal to an inactive type-1 vertex");
        const Proposal p{m.fields.at(2), env.from};
        auto [slot, fresh] = best.try_emplace(comp, p);
        if (!fresh && (p.label > slot->second.label || (p.label == slot->second.label && p.from < slot->second.from))) {
          slot->second = p;
        }
      } else if (m.tag == sim::MsgTag::accept) {
        if (!st.has_type2 || comp != st.component) continue;
        if (*m.to == ctx.node()) {
          st.matched_to = env.from;
        } else {
          auto it = std::lower_bound(st.partners.begin(), st.partners.end(), env.from);
          if (it != st.partners.end() && *it == env.from) st.alive[it - st.partners.begin()] = false;
        }
      } else {
        throw std::logic_error("unexpected message during matching");
      }
    }
    for (const auto& [comp, p] : best) {
      st.type1[comp] = p.from;
      st.pending_accepts.emplace_back(p.from, comp);
    }
    sim::StepResult step;
    if (!st.pending_accepts.empty()) {
      auto [to, comp] = st.pending_accepts.front();
      st.pending_accepts.pop_front();
      step.message = sim::SimMessage{sim::MsgTag::accept, to, {h.cls(), comp}};
    }
    step.active = !st.pending_accepts.empty();
    return step;
  };

  const std::uint64_t accept_cap = vg.base().max_degree() + 1;
  auto active_left = [&] {
    return std::any_of(states.begin(), states.end(), [](const MatchState& st) { return st.wants_to_propose(); });
  };
  while (active_left()) {
    if (result.matching_rounds == max_matching_rounds) {
      result.truncated = true;
      break;
    }
    net.begin_edge_window();
    net.run_round(std::span<MatchState>(states), propose);
    auto fix = net.run_until_fixpoint(std::span<MatchState>(states), accept, accept_cap);
    result.max_edge_messages = std::max(result.max_edge_messages, net.end_edge_window());
    if (fix.truncated) throw std::logic_error("accept phase exceeded Delta + 1 rounds");
    const std::uint64_t used = 1 + fix.rounds;
    result.real_rounds += used;
    result.max_real_rounds_per_matching_round = std::max(result.max_real_rounds_per_matching_round, used);
    ++result.matching_rounds;
  }

  for (RealNodeId v = 0; v < n; ++v) {
    const MatchState& st = states[v];
    if (!st.matched_to) continue;
    const RealNodeId w = *st.matched_to;
    auto it = states[w].type1.find(st.component);
    if (it == states[w].type1.end() || it->second != v) throw std::logic_error("matching endpoints disagree");
    result.matched.push_back({st.type2, {w, st.type2.layer, CopyKind::type1}, vg.from_index(st.component)});
  }
  std::sort(result.matched.begin(), result.matched.end());
  return result;
}

void select_type2(const VirtualGraph& vg, std::uint32_t layer, std::span<const MatchingResult> matchings,
                  std::uint32_t classes, std::uint64_t seed, std::uint64_t round, ClassAssignment& assignment) {
  if (!vg.is_upper(layer)) throw std::out_of_range("type-2 copies exist only on upper layers");
  if (matchings.size() != classes) throw std::invalid_argument("need one matching per class");
  std::vector<std::vector<ClassId>> surviving(vg.base().node_count());
  std::vector<std::vector<ClassId>> seen(vg.base().node_count());
  for (std::size_t i = 0; i < matchings.size(); ++i) {
    const auto cls = static_cast<ClassId>(i + 1);
    for (const auto& e : matchings[i].matched) {
      if (e.type2.layer != layer || e.type1.layer != layer) throw std::invalid_argument("matched edge off layer");
      auto& classes_seen = seen[e.type2.real];
      if (std::find(classes_seen.begin(), classes_seen.end(), cls) != classes_seen.end()) {
        throw std::logic_error("type-2 copy matched twice in one class");
      }
      classes_seen.push_back(cls);
      // Paths whose type-1 copy picked another class are dropped.
      if (assignment.at(vg.index(e.type1)) == cls) surviving[e.type2.real].push_back(cls);
    }
  }
  for (RealNodeId v = 0; v < vg.base().node_count(); ++v) {
    const std::uint64_t draw = sim::seeded_rng(seed, v, round, sim::draw::type2_class);
    const auto& options = surviving[v];
    const ClassId cls = options.empty() ? static_cast<ClassId>(1 + sim::uniform_below(draw, classes))
                                        : options[sim::uniform_below(draw, options.size())];
    assignment.assign(vg.index({v, layer, CopyKind::type2}), cls);
  }
}

}  // namespace fcds
