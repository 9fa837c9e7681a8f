#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "fcds/assignment.hpp"
#include "fcds/congest.hpp"
#include "fcds/virtual_graph.hpp"

namespace fcds {

/// Components are named by their minimum member, stored as its VirtualIndex.
using ComponentIndex = VirtualIndex;
inline constexpr ComponentIndex kNoComponent = std::numeric_limits<ComponentIndex>::max();

/// What one real node knows after component identification: the
/// component of its own old copies per class, the component of each
/// neighbour's old copies per class, and (after the type-1 announcement) the class each
/// neighbour's type-1 copy picked.
struct NodeKnowledge {
  std::map<ClassId, ComponentIndex> own;
  std::map<std::pair<RealNodeId, ClassId>, ComponentIndex> heard;
  std::map<RealNodeId, ClassId> peer_type1;

  /// Components of class `cls` with a member in the closed neighbourhood.
  std::set<ComponentIndex> components_near(ClassId cls) const;
};

struct Component {
  ClassId cls = kUnassigned;
  VirtualNodeId id;
  std::vector<VirtualNodeId> members;
};

struct ComponentMap {
  /// Old copies are those on layers < layer.
  std::uint32_t layer = 0;
  std::vector<ComponentIndex> component_of;  // per VirtualIndex
  std::vector<NodeKnowledge> knowledge;      // per real node
  std::map<ClassId, std::uint32_t> counts;
  std::uint64_t rounds = 0;
  bool truncated = false;

  std::uint32_t count(ClassId cls) const;
  std::vector<Component> components(const VirtualGraph& vg, const ClassAssignment& assignment, ClassId cls) const;
};

/// Min-id flooding among old copies. Each slot of the 3L-round
/// schedule lets one copy per real node speak; a class's lowest old copy
/// at a node speaks for all of that node's copies of the class.
/// `layer` ranges over L+1..2L+1 (2L+1 identifies the final components).
ComponentMap identify_components(sim::Network& net, const VirtualGraph& vg, std::uint32_t layer,
                                 const ClassAssignment& assignment, std::uint64_t max_rounds);

/// Type-1 copies of `layer` pick a class and announce it in one
/// round. Returns rounds used.
std::uint64_t assign_type1(sim::Network& net, const VirtualGraph& vg, std::uint32_t layer, std::uint32_t classes,
                           ClassAssignment& assignment, ComponentMap& components);

}  // namespace fcds
