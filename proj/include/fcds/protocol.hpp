#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fcds/assignment.hpp"
#include "fcds/components.hpp"
#include "fcds/congest.hpp"
#include "fcds/graph.hpp"
#include "fcds/helper_graph.hpp"
#include "fcds/matching.hpp"

namespace fcds {

/// A hard protocol invariant (round cap, congestion, consistency) broke.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Component counts M_l per class for l = first_layer .. first_layer + steps - 1.
struct MlTrajectory {
  std::uint32_t first_layer = 0;
  std::vector<std::vector<std::uint32_t>> per_class;  // [class - 1][l - first_layer]

  std::size_t steps() const { return per_class.empty() ? 0 : per_class.front().size(); }
  std::uint32_t total_at(std::size_t step) const;
  bool operator==(const MlTrajectory&) const = default;
};

struct LayerRecord {
  std::uint32_t layer = 0;
  ComponentMap components;  // knowledge dropped
  std::vector<HelperGraph> helpers;          // [class - 1]
  std::vector<std::uint64_t> helper_rounds;  // [class - 1]
  std::vector<MatchingResult> matchings;     // [class - 1]
};

struct RunResult {
  ProtocolParams params;
  ClassAssignment assignment;
  FcdsPacking packing;
  sim::RoundReport rounds;
  MlTrajectory trajectory;
  std::vector<LayerRecord> layers;
  ComponentMap final_components;  // over all layers
};

/// Lower-layer draw, the per-layer phases for every upper layer, then a
/// final component census. Requires a connected graph. Throws ProtocolError when a hard
/// bound is violated; disconnected classes are reported, not thrown.
RunResult run_full(const Graph& g, const ProtocolParams& params);

}  // namespace fcds
