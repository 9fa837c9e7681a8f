#include "fcds/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fcds/congest.hpp"

namespace fcds {

ProtocolParams ProtocolParams::defaults(std::size_t n, std::size_t kappa, double layer_multiplier,
                                        std::uint64_t seed) {
  if (layer_multiplier <= 0) throw std::invalid_argument("layer multiplier must be positive");
  ProtocolParams p;
  p.classes = static_cast<std::uint32_t>(std::max<std::size_t>(1, (kappa + 1) / 2));
  const double raw = n > 1 ? layer_multiplier * std::log2(static_cast<double>(n)) : 0.0;
  // Tolerate rounding noise on exact integers such as 1 * log2(16).
  p.layers = static_cast<std::uint32_t>(std::max(1.0, std::ceil(raw - 1e-9)));
  p.seed = seed;
  return p;
}

std::uint64_t ProtocolParams::component_round_cap(std::size_t n) const {
  if (max_component_rounds != 0) return max_component_rounds;
  const std::uint64_t copies = 3ULL * layers;
  return copies * (copies * n + 2);
}

void ProtocolParams::validate() const {
  if (classes < 1) throw std::invalid_argument("need at least one class");
  if (layers < 1) throw std::invalid_argument("need at least one layer");
}

ClassAssignment::ClassAssignment(std::size_t real_nodes, std::uint32_t layers)
    : layers_(layers), classes_(real_nodes * 3 * layers, kUnassigned) {}

void ClassAssignment::assign(VirtualIndex idx, ClassId cls) {
  if (cls == kUnassigned) throw std::invalid_argument("cannot assign the unassigned marker");
  ClassId& slot = classes_.at(idx);
  if (slot != kUnassigned) throw std::logic_error("virtual node " + std::to_string(idx) + " already has a class");
  slot = cls;
}

ClassAssignment assign_lower_layers(const ProtocolParams& params, const VirtualGraph& vg) {
  params.validate();
  if (params.layers != vg.layers()) throw std::invalid_argument("params and virtual graph disagree on L");
  ClassAssignment assignment(vg.base().node_count(), vg.layers());
  for (RealNodeId v = 0; v < vg.base().node_count(); ++v) {
    for (std::uint32_t s = 0; s < vg.layers(); ++s) {
      const std::uint64_t draw = sim::seeded_rng(params.seed, v, 0, sim::draw::lower_class | s);
      assignment.assign(vg.index(vg.from_slot(v, s)),
                        static_cast<ClassId>(1 + sim::uniform_below(draw, params.classes)));
    }
  }
  return assignment;
}

FcdsPacking::FcdsPacking(std::size_t real_nodes, std::uint32_t classes, std::uint32_t denominator)
    : real_nodes_(real_nodes), classes_(classes), denominator_(denominator), numerators_(real_nodes * classes, 0) {
  if (denominator == 0) throw std::invalid_argument("packing denominator must be positive");
}

std::size_t FcdsPacking::offset(RealNodeId v, ClassId cls) const {
  if (v >= real_nodes_ || cls < 1 || cls > classes_) throw std::out_of_range("packing entry out of range");
  return static_cast<std::size_t>(v) * classes_ + (cls - 1);
}

FcdsPacking extract_packing(const ClassAssignment& assignment, const VirtualGraph& vg, std::uint32_t classes) {
  if (assignment.size() != vg.size()) throw std::invalid_argument("assignment does not match virtual graph");
  FcdsPacking packing(vg.base().node_count(), classes, vg.copies_per_node());
  for (VirtualIndex idx = 0; idx < vg.size(); ++idx) {
    const ClassId cls = assignment.at(idx);
    if (cls == kUnassigned) throw std::invalid_argument("virtual node " + std::to_string(idx) + " is unassigned");
    if (cls > classes) throw std::invalid_argument("class " + std::to_string(cls) + " out of range");
    const RealNodeId v = idx / vg.copies_per_node();
    packing.set_numerator(v, cls, packing.numerator(v, cls) + 1);
  }
  return packing;
}

}  // namespace fcds
