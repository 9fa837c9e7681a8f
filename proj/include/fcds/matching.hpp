#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fcds/assignment.hpp"
#include "fcds/congest.hpp"
#include "fcds/helper_graph.hpp"

namespace fcds {

inline constexpr std::uint32_t kMatchingRoundMultiplier = 8;

/// kMatchingRoundMultiplier * ceil(log2 N).
std::uint32_t matching_round_cap(std::uint64_t virtual_nodes);

struct MatchingResult {
  std::vector<HelperEdge> matched;
  std::uint32_t matching_rounds = 0;
  std::uint64_t real_rounds = 0;
  std::uint64_t max_real_rounds_per_matching_round = 0;
  /// Max over matching rounds and directed real edges.
  std::uint32_t max_edge_messages = 0;
  bool truncated = false;
};

/// Randomised maximal matching on a bipartite helper graph. Each matching
/// round: every active type-2 vertex labels its active edges at random and
/// proposes along the largest; every type-1 vertex accepts its largest
/// proposal. The accept is heard by all neighbours, which retire edges to
/// the now-matched vertex. Runs until no edge is active or the cap is hit.
MatchingResult distributed_maximal_matching(sim::Network& net, const VirtualGraph& vg, const HelperGraph& h,
                                            std::uint32_t max_matching_rounds);

/// Each type-2 copy of `layer` keeps the matched edges whose
/// type-1 partner picked the edge's class and adopts one of those classes
/// at random, or a uniform class if none is left. `matchings[i - 1]`
/// is the matching of class i. Local; costs no rounds.
void select_type2(const VirtualGraph& vg, std::uint32_t layer, std::span<const MatchingResult> matchings,
                  std::uint32_t classes, std::uint64_t seed, std::uint64_t round, ClassAssignment& assignment);

}  // namespace fcds
