#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "fcds/graph.hpp"

namespace fcds {

enum class CopyKind : std::uint8_t { lower = 0, type1 = 1, type2 = 2 };

const char* to_string(CopyKind kind);

/// One virtual copy of a real node. Layers 1..L hold one `lower` copy
/// each; layers L+1..2L hold a `type1` and a `type2` copy. Ordered by
/// (real, layer, kind).
struct VirtualNodeId {
  RealNodeId real = 0;
  std::uint32_t layer = 1;
  CopyKind kind = CopyKind::lower;

  auto operator<=>(const VirtualNodeId&) const = default;
};

/// Dense index of a virtual node, `real * 3L + slot`. Monotone in the
/// VirtualNodeId order, so the minimum index is the minimum id.
using VirtualIndex = std::uint32_t;

inline RealNodeId project(const VirtualNodeId& a) { return a.real; }
std::set<RealNodeId> project(std::span<const VirtualNodeId> nodes);

/// The layered virtual graph over a base graph. Two distinct copies are
/// adjacent iff they copy the same real node or real neighbours.
/// Adjacency is derived on demand. The base graph must outlive this view.
class VirtualGraph {
 public:
  VirtualGraph(const Graph& base, std::uint32_t layers);

  const Graph& base() const { return *base_; }
  std::uint32_t layers() const { return layers_; }
  std::uint32_t copies_per_node() const { return 3 * layers_; }
  std::size_t size() const { return static_cast<std::size_t>(copies_per_node()) * base_->node_count(); }

  bool is_lower(std::uint32_t layer) const { return layer >= 1 && layer <= layers_; }
  bool is_upper(std::uint32_t layer) const { return layer > layers_ && layer <= 2 * layers_; }

  /// Throws std::invalid_argument on unknown real node or a layer/kind mismatch.
  void validate(const VirtualNodeId& a) const;
  bool valid(const VirtualNodeId& a) const;

  /// Position of a copy among its real node's 3L copies, 0..3L-1.
  std::uint32_t slot(const VirtualNodeId& a) const;
  VirtualNodeId from_slot(RealNodeId real, std::uint32_t slot) const;
  VirtualIndex index(const VirtualNodeId& a) const;
  VirtualNodeId from_index(VirtualIndex idx) const;
  /// Layer of a slot; copies with slot < boundary are on layers < the
  /// layer that starts at that boundary.
  std::uint32_t slot_layer(std::uint32_t slot) const;
  /// First slot of `layer`; first_slot(2L + 1) == 3L.
  std::uint32_t first_slot(std::uint32_t layer) const;

  bool is_adjacent(const VirtualNodeId& a, const VirtualNodeId& b) const;
  std::size_t virtual_degree(const VirtualNodeId& a) const;

  /// Copies on one layer, ascending. `kind` filters upper layers; on a
  /// lower layer only `lower` (or no filter) yields nodes.
  std::vector<VirtualNodeId> layer_nodes(std::uint32_t layer, std::optional<CopyKind> kind = std::nullopt) const;
  /// All copies on layers 1..layer, ascending.
  std::vector<VirtualNodeId> nodes_up_to(std::uint32_t layer) const;

  /// Calls fn(VirtualIndex) for every neighbour of `a`.
  template <class Fn>
  void for_each_neighbor(VirtualIndex a, Fn&& fn) const {
    const RealNodeId real = a / copies_per_node();
    const VirtualIndex own_base = real * copies_per_node();
    for (VirtualIndex b = own_base; b < own_base + copies_per_node(); ++b) {
      if (b != a) fn(b);
    }
    for (RealNodeId w : base_->neighbors(real)) {
      const VirtualIndex base = w * copies_per_node();
      for (VirtualIndex b = base; b < base + copies_per_node(); ++b) fn(b);
    }
  }

 private:
  const Graph* base_;
  std::uint32_t layers_;
};

}  // namespace fcds
