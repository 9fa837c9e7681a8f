#include "fcds/components.hpp"

#include <algorithm>
#include <stdexcept>

namespace fcds {

std::set<ComponentIndex> NodeKnowledge::components_near(ClassId cls) const {
  std::set<ComponentIndex> out;
  if (auto it = own.find(cls); it != own.end()) out.insert(it->second);
  for (const auto& [key, comp] : heard) {
    if (key.second == cls) out.insert(comp);
  }
  return out;
}

std::uint32_t ComponentMap::count(ClassId cls) const {
  auto it = counts.find(cls);
  return it == counts.end() ? 0 : it->second;
}

std::vector<Component> ComponentMap::components(const VirtualGraph& vg, const ClassAssignment& assignment,
                                                ClassId cls) const {
  std::map<ComponentIndex, Component> by_id;
  for (VirtualIndex idx = 0; idx < component_of.size(); ++idx) {
    if (component_of[idx] == kNoComponent || assignment.at(idx) != cls) continue;
    Component& c = by_id[component_of[idx]];
    c.cls = cls;
    c.id = vg.from_index(component_of[idx]);
    c.members.push_back(vg.from_index(idx));
  }
  std::vector<Component> out;
  for (auto& [id, c] : by_id) out.push_back(std::move(c));
  return out;
}

namespace {

struct FloodState {
  std::map<ClassId, ComponentIndex> label;
  std::map<ClassId, std::uint32_t> speaker_slot;
  std::set<ClassId> dirty;
  std::map<std::pair<RealNodeId, ClassId>, ComponentIndex> heard;
};

}  // namespace

ComponentMap identify_components(sim::Network& net, const VirtualGraph& vg, std::uint32_t layer,
                                 const ClassAssignment& assignment, std::uint64_t max_rounds) {
  if (layer <= vg.layers() || layer > 2 * vg.layers() + 1) {
    throw std::out_of_range("component identification runs for layers L+1..2L+1");
  }
  const std::uint32_t old_end = vg.first_slot(layer);
  const std::uint32_t copies = vg.copies_per_node();
  const std::size_t n = vg.base().node_count();

  std::vector<FloodState> states(n);
  for (RealNodeId v = 0; v < n; ++v) {
    for (std::uint32_t s = 0; s < old_end; ++s) {
      const VirtualIndex idx = v * copies + s;
      const ClassId cls = assignment.at(idx);
      if (cls == kUnassigned) throw std::invalid_argument("old virtual node without class");
      // Copies of one real node are pairwise adjacent, so the lowest one
      // of each class is already the local minimum.
      if (states[v].label.emplace(cls, idx).second) {
        states[v].speaker_slot[cls] = s;
        states[v].dirty.insert(cls);
      }
    }
  }

  auto handler = [&](const sim::NodeContext& ctx, FloodState& st, std::span<const sim::Envelope> inbox) {
    for (const auto& env : inbox) {
      if (env.message.tag != sim::MsgTag::flood) throw std::logic_error("unexpected message during flooding");
      const auto cls = static_cast<ClassId>(env.message.fields.at(1));
      const auto lab = static_cast<ComponentIndex>(env.message.fields.at(2));
      auto [it, inserted] = st.heard.try_emplace({env.from, cls}, lab);
      if (!inserted) it->second = std::min(it->second, lab);
      // Ids from copies of another class are ignored.
      if (auto own = st.label.find(cls); own != st.label.end() && lab < own->second) {
        own->second = lab;
        st.dirty.insert(cls);
      }
    }
    sim::StepResult step;
    const auto slot = static_cast<std::uint32_t>(ctx.phase_round() % copies);
    for (ClassId cls : st.dirty) {
      if (st.speaker_slot[cls] != slot) continue;
      step.message = sim::SimMessage{
          sim::MsgTag::flood, std::nullopt,
          {static_cast<std::uint64_t>(ctx.node()) * copies + slot, cls, st.label[cls]}};
      st.dirty.erase(cls);
      break;
    }
    step.active = !st.dirty.empty();
    return step;
  };

  ComponentMap result;
  result.layer = layer;
  if (n > 0) {
    auto fix = net.run_until_fixpoint(std::span<FloodState>(states), handler, max_rounds);
    result.rounds = fix.rounds;
    result.truncated = fix.truncated;
  }

  result.component_of.assign(vg.size(), kNoComponent);
  result.knowledge.resize(n);
  std::map<ClassId, std::set<ComponentIndex>> distinct;
  for (RealNodeId v = 0; v < n; ++v) {
    for (std::uint32_t s = 0; s < old_end; ++s) {
      const VirtualIndex idx = v * copies + s;
      const ClassId cls = assignment.at(idx);
      result.component_of[idx] = states[v].label.at(cls);
      distinct[cls].insert(result.component_of[idx]);
    }
    result.knowledge[v].own = states[v].label;
    result.knowledge[v].heard = std::move(states[v].heard);
  }
  for (const auto& [cls, ids] : distinct) result.counts[cls] = static_cast<std::uint32_t>(ids.size());
  return result;
}

std::uint64_t assign_type1(sim::Network& net, const VirtualGraph& vg, std::uint32_t layer, std::uint32_t classes,
                           ClassAssignment& assignment, ComponentMap& components) {
  if (!vg.is_upper(layer)) throw std::out_of_range("type-1 copies exist only on upper layers");
  if (classes < 1) throw std::invalid_argument("need at least one class");
  const std::size_t n = vg.base().node_count();
  if (components.knowledge.size() != n) throw std::invalid_argument("component map lacks node knowledge");

  struct Empty {};
  std::vector<Empty> states(n);
  net.run_round(std::span<Empty>(states), [&](const sim::NodeContext& ctx, Empty&, std::span<const sim::Envelope>) {
    const auto cls = static_cast<ClassId>(1 + ctx.uniform(sim::draw::type1_class, classes));
    assignment.assign(vg.index({ctx.node(), layer, CopyKind::type1}), cls);
    return sim::StepResult{sim::SimMessage{sim::MsgTag::type1_class, std::nullopt, {cls}}, false};
  });
  net.absorb(std::span<Empty>(states), [&](const sim::NodeContext& ctx, Empty&, std::span<const sim::Envelope> inbox) {
    for (const auto& env : inbox) {
      if (env.message.tag != sim::MsgTag::type1_class) throw std::logic_error("unexpected message after type-1 draw");
      components.knowledge[ctx.node()].peer_type1[env.from] = static_cast<ClassId>(env.message.fields.at(0));
    }
  });
  return 1;
}

}  // namespace fcds
