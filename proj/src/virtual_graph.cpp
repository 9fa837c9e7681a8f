#include "fcds/virtual_graph.hpp"

#include <stdexcept>
#include <string>

namespace fcds {

const char* to_string(CopyKind kind) {
  switch (kind) {
    case CopyKind::lower: return "lower";
    case CopyKind::type1: return "type1";
    case CopyKind::type2: return "type2";
  }
  return "?";
}

std::set<RealNodeId> project(std::span<const VirtualNodeId> nodes) {
  std::set<RealNodeId> out;
  for (const auto& a : nodes) out.insert(a.real);
  return out;
}

VirtualGraph::VirtualGraph(const Graph& base, std::uint32_t layers) : base_(&base), layers_(layers) {
  if (layers < 1) throw std::invalid_argument("virtual graph needs at least one layer");
}

bool VirtualGraph::valid(const VirtualNodeId& a) const {
  if (a.real >= base_->node_count()) return false;
  if (is_lower(a.layer)) return a.kind == CopyKind::lower;
  if (is_upper(a.layer)) return a.kind != CopyKind::lower;
  return false;
}

void VirtualGraph::validate(const VirtualNodeId& a) const {
  if (!valid(a)) {
    throw std::invalid_argument("invalid virtual node (real=" + std::to_string(a.real) +
                                ", layer=" + std::to_string(a.layer) + ", kind=" + to_string(a.kind) + ")");
  }
}

std::uint32_t VirtualGraph::slot(const VirtualNodeId& a) const {
  validate(a);
  if (a.kind == CopyKind::lower) return a.layer - 1;
  return layers_ + 2 * (a.layer - layers_ - 1) + (a.kind == CopyKind::type2 ? 1 : 0);
}

VirtualNodeId VirtualGraph::from_slot(RealNodeId real, std::uint32_t s) const {
  if (s >= copies_per_node() || real >= base_->node_count()) throw std::out_of_range("slot out of range");
  if (s < layers_) return {real, s + 1, CopyKind::lower};
  const std::uint32_t upper = s - layers_;
  return {real, layers_ + 1 + upper / 2, upper % 2 == 0 ? CopyKind::type1 : CopyKind::type2};
}

VirtualIndex VirtualGraph::index(const VirtualNodeId& a) const {
  return a.real * copies_per_node() + slot(a);
}

VirtualNodeId VirtualGraph::from_index(VirtualIndex idx) const {
  return from_slot(idx / copies_per_node(), idx % copies_per_node());
}

std::uint32_t VirtualGraph::slot_layer(std::uint32_t s) const {
  if (s < layers_) return s + 1;
  return layers_ + 1 + (s - layers_) / 2;
}

std::uint32_t VirtualGraph::first_slot(std::uint32_t layer) const {
  if (layer < 1 || layer > 2 * layers_ + 1) throw std::out_of_range("layer out of range");
  if (layer <= layers_ + 1) return layer - 1;
  return layers_ + 2 * (layer - layers_ - 1);
}

bool VirtualGraph::is_adjacent(const VirtualNodeId& a, const VirtualNodeId& b) const {
  validate(a);
  validate(b);
  if (a == b) return false;
  return a.real == b.real || base_->has_edge(a.real, b.real);
}

std::size_t VirtualGraph::virtual_degree(const VirtualNodeId& a) const {
  validate(a);
  return (copies_per_node() - 1) + static_cast<std::size_t>(copies_per_node()) * base_->degree(a.real);
}

std::vector<VirtualNodeId> VirtualGraph::layer_nodes(std::uint32_t layer, std::optional<CopyKind> kind) const {
  if (!is_lower(layer) && !is_upper(layer)) throw std::out_of_range("layer " + std::to_string(layer) + " out of range");
  std::vector<VirtualNodeId> out;
  for (RealNodeId v = 0; v < base_->node_count(); ++v) {
    if (is_lower(layer)) {
      if (!kind || *kind == CopyKind::lower) out.push_back({v, layer, CopyKind::lower});
    } else {
      if (!kind || *kind == CopyKind::type1) out.push_back({v, layer, CopyKind::type1});
      if (!kind || *kind == CopyKind::type2) out.push_back({v, layer, CopyKind::type2});
    }
  }
  return out;
}

std::vector<VirtualNodeId> VirtualGraph::nodes_up_to(std::uint32_t layer) const {
  if (layer < 1 || layer > 2 * layers_) throw std::out_of_range("layer " + std::to_string(layer) + " out of range");
  std::vector<VirtualNodeId> out;
  const std::uint32_t end = first_slot(layer + 1);
  for (RealNodeId v = 0; v < base_->node_count(); ++v) {
    for (std::uint32_t s = 0; s < end; ++s) out.push_back(from_slot(v, s));
  }
  return out;
}

}  // namespace fcds
