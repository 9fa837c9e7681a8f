#pragma once

#include <cstdint>
#include <vector>

#include "fcds/assignment.hpp"
#include "fcds/components.hpp"
#include "fcds/congest.hpp"
#include "fcds/virtual_graph.hpp"

namespace fcds {

/// Vertex (copy, component) of a helper graph.
struct HelperVertex {
  VirtualNodeId copy;
  VirtualNodeId component;

  auto operator<=>(const HelperVertex&) const = default;
};

/// Edge ((type2, C), (type1, C)).
struct HelperEdge {
  VirtualNodeId type2;
  VirtualNodeId type1;
  VirtualNodeId component;

  auto operator<=>(const HelperEdge&) const = default;
  HelperVertex type2_vertex() const { return {type2, component}; }
  HelperVertex type1_vertex() const { return {type1, component}; }
};

/// Per-class bipartite helper graph of one layer; the union over
/// components C of the graphs H_i[C].
class HelperGraph {
 public:
  HelperGraph() = default;
  /// Sorts and deduplicates; type-1 vertices are taken from the edges.
  HelperGraph(ClassId cls, std::vector<HelperVertex> type2_side, std::vector<HelperEdge> edges);

  ClassId cls() const { return cls_; }
  const std::vector<HelperVertex>& type2_side() const { return type2_side_; }
  const std::vector<HelperVertex>& type1_side() const { return type1_side_; }
  const std::vector<HelperEdge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return type2_side_.size() + type1_side_.size(); }

  std::vector<HelperEdge> edges_of(const VirtualNodeId& component) const;

 private:
  ClassId cls_ = kUnassigned;
  std::vector<HelperVertex> type2_side_;
  std::vector<HelperVertex> type1_side_;
  std::vector<HelperEdge> edges_;
};

struct HelperBuild {
  HelperGraph graph;
  std::uint64_t rounds = 0;
};

/// One round of type-2 offers, then type-1 copies
/// answer once per offered component, one answer per round.
HelperBuild build_helper_graph(sim::Network& net, const VirtualGraph& vg, std::uint32_t layer, ClassId cls,
                               const ComponentMap& components);

}  // namespace fcds
