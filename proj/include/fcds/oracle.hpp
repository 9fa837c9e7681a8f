#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fcds/assignment.hpp"
#include "fcds/helper_graph.hpp"
#include "fcds/matching.hpp"
#include "fcds/protocol.hpp"
#include "fcds/virtual_graph.hpp"

// Centralised checkers. None of them calls into the simulator or the
// protocol steps; they only read the virtual graph and run artefacts.
namespace fcds::oracle {

/// Components of each class among copies on layers < `layer`, named by
/// their minimum member. Built with union-find over real edges.
struct OldComponents {
  std::uint32_t layer = 0;
  std::vector<ComponentIndex> component_of;  // kNoComponent for copies on layers >= layer
  std::map<ClassId, std::uint32_t> counts;

  std::uint32_t count(ClassId cls) const;
  /// Distinct component ids of class `cls`, ascending.
  std::vector<ComponentIndex> ids(const ClassAssignment& assignment, ClassId cls) const;
};

/// `layer` ranges over 1..2L+1; layer 2L+1 covers every copy.
OldComponents old_components(const VirtualGraph& vg, const ClassAssignment& assignment, std::uint32_t layer);

/// Every real node has a class-`cls` copy in its closed neighbourhood,
/// counting copies on layers <= up_to_layer (default: all layers).
bool check_domination(const VirtualGraph& vg, const ClassAssignment& assignment, ClassId cls,
                      std::optional<std::uint32_t> up_to_layer = std::nullopt);

enum class ConnectivityReason { connected, empty, disconnected };
const char* to_string(ConnectivityReason reason);

struct ConnectivityVerdict {
  bool connected = false;
  ConnectivityReason reason = ConnectivityReason::empty;
  std::uint32_t components = 0;
};

/// BFS over the class-`cls` copies of all layers.
ConnectivityVerdict check_class_connected(const VirtualGraph& vg, const ClassAssignment& assignment, ClassId cls);

enum class PathKind { short_path, long_path };

/// s, internals..., u. Short: one type-1 internal. Long: type-2 then type-1.
struct ConnectorPath {
  PathKind kind = PathKind::short_path;
  VirtualNodeId s;
  std::vector<VirtualNodeId> internals;
  VirtualNodeId u;
  ComponentIndex component = kNoComponent;  // C, holds s
  ComponentIndex other = kNoComponent;      // C', holds u

  auto operator<=>(const ConnectorPath&) const = default;
};

/// All connector paths of component C on upper layer `layer`, one per
/// (internal nodes, C'); s and u are the smallest eligible endpoints.
/// `comps` must be old_components(vg, assignment, layer).
std::vector<ConnectorPath> enumerate_connector_paths(const VirtualGraph& vg, const ClassAssignment& assignment,
                                                     std::uint32_t layer, const OldComponents& comps,
                                                     ComponentIndex component);

inline constexpr std::size_t kDefaultPathCap = 100000;

/// Largest internally vertex-disjoint subset, via bipartite matching of
/// type-2 internals (plus one stand-in per short path) to type-1
/// internals. nullopt if there are more than `cap` paths.
std::optional<std::size_t> max_disjoint_connector_paths(std::span<const ConnectorPath> paths,
                                                        std::size_t cap = kDefaultPathCap);

inline constexpr std::size_t kExhaustiveMatchingCap = 40;

/// Maximum matching by exhaustive search with memoisation, run per
/// connected piece of h. nullopt if some piece has more than `cap` vertices.
std::optional<std::size_t> exhaustive_maximum_matching(const HelperGraph& h, std::size_t cap = kExhaustiveMatchingCap);

struct MatchingCheck {
  std::uint32_t layer = 0;
  ClassId cls = kUnassigned;
  std::size_t size = 0;
  bool valid = false;    // endpoint-disjoint, so the induced paths are internally disjoint
  bool maximal = false;
  std::optional<std::size_t> maximum;
  std::optional<bool> ratio_ok;  // |M| >= ceil(|M*| / 2); nullopt above the cap
};

/// Throws std::invalid_argument if M has an edge outside h.
MatchingCheck check_matching(const HelperGraph& h, std::span<const HelperEdge> matching,
                             std::size_t cap = kExhaustiveMatchingCap);

struct HelperCheck {
  std::uint32_t layer = 0;
  ClassId cls = kUnassigned;
  std::size_t edges = 0;
  bool bipartite = false;
  bool attribution_unique = false;
  bool type2_per_real = false;  // at most one type-2 vertex per real node
  bool type1_per_real = false;  // at most max-degree type-1 vertices per real node
  std::optional<bool> matches_paths;

  bool ok() const { return bipartite && attribution_unique && type2_per_real && type1_per_real && matches_paths.value_or(true); }
};

HelperCheck check_helper_structure(const VirtualGraph& vg, std::uint32_t layer, const HelperGraph& h);

/// Edge set of h equals the (type-2, type-1, C) triples of the long paths.
bool helper_matches_paths(const VirtualGraph& vg, const HelperGraph& h, std::span<const ConnectorPath> paths);

struct PackingVerdict {
  bool sums_ok = false;
  bool denominators_ok = false;
  bool numerators_ok = false;
  std::uint32_t valid_cds_count = 0;
  Rational size;  // valid_cds_count / 3L, not reduced

  bool valid() const { return sums_ok && denominators_ok && numerators_ok; }
};

PackingVerdict verify_packing(const FcdsPacking& packing, const VirtualGraph& vg, const ClassAssignment& assignment);

/// M_l per class for l = L..2L, from the finished assignment.
MlTrajectory ml_trajectory(const VirtualGraph& vg, const ClassAssignment& assignment, std::uint32_t classes);
bool non_increasing(const MlTrajectory& traj);

enum class VerifyLevel { structural, full };
const char* to_string(VerifyLevel level);
VerifyLevel parse_verify_level(const std::string& name);

struct ClassVerdict {
  ClassId cls = kUnassigned;
  bool dominating = false;        // all layers
  bool dominating_lower = false;  // lower layers only
  ConnectivityVerdict connectivity;
};

struct ComponentPathsRecord {
  std::uint32_t layer = 0;
  ClassId cls = kUnassigned;
  VirtualNodeId component;
  std::uint32_t class_components = 0;
  std::size_t short_paths = 0;
  std::size_t long_paths = 0;
  std::optional<std::size_t> max_disjoint;
};

struct VerifierReport {
  VerifyLevel level = VerifyLevel::structural;
  std::vector<ClassVerdict> classes;
  std::vector<HelperCheck> helpers;
  std::vector<MatchingCheck> matchings;
  std::vector<ComponentPathsRecord> paths;  // full level only
  PackingVerdict packing;
  MlTrajectory ml;
  bool ml_monotone = false;
  bool ml_matches_protocol = false;
  std::optional<bool> components_agree;  // full level only
  /// Broken structural invariants; probabilistic shortfalls are not listed.
  std::vector<std::string> violations;

  bool structural_ok() const { return violations.empty(); }
  bool all_dominating() const;
  bool all_dominating_lower() const;
};

VerifierReport verify_run(const Graph& g, const RunResult& run, VerifyLevel level);

/// Smallest max_disjoint over components whose class has at least two
/// components; nullopt if none was measured.
std::optional<std::size_t> min_disjoint_paths(const VerifierReport& report);

}  // namespace fcds::oracle
