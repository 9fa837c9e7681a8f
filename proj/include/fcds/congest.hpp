#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fcds/graph.hpp"

namespace fcds::sim {

enum class MsgTag : std::uint8_t {
  probe,
  flood,
  type1_class,
  helper_offer,
  helper_join,
  propose,
  accept,
};

const char* to_string(MsgTag tag);

inline constexpr std::size_t kMaxFieldSlots = 6;
inline constexpr std::size_t kBudgetMultiplier = 8;
inline constexpr std::size_t kTagBits = 8;

/// One broadcast. `to` names the logical addressee of a message that is
/// physically heard by every neighbour; it occupies one field slot.
struct SimMessage {
  MsgTag tag = MsgTag::probe;
  std::optional<RealNodeId> to;
  std::vector<std::uint64_t> fields;

  std::size_t slot_count() const { return fields.size() + (to ? 1 : 0); }
  bool operator==(const SimMessage&) const = default;
};

struct Envelope {
  RealNodeId from = 0;
  SimMessage message;
};

class BudgetViolation : public std::runtime_error {
 public:
  BudgetViolation(RealNodeId node, MsgTag tag, const std::string& what);
  RealNodeId node() const { return node_; }
  MsgTag tag() const { return tag_; }

 private:
  RealNodeId node_;
  MsgTag tag_;
};

/// O(log n) congestion budget for a virtual graph of N nodes. Every slot
/// is a fixed-width word of ceil(log2(N^4)) bits; a message may use at
/// most kMaxFieldSlots slots and kBudgetMultiplier words in total.
class MessageBudget {
 public:
  explicit MessageBudget(std::uint64_t virtual_node_count);

  std::uint64_t virtual_node_count() const { return virtual_nodes_; }
  std::size_t word_bits() const { return word_bits_; }
  std::size_t budget_bits() const { return kBudgetMultiplier * word_bits_; }
  /// N^4, saturated at 2^64 - 1. Random labels are drawn below this.
  std::uint64_t label_bound() const { return label_bound_; }

  std::size_t serialized_bits(const SimMessage& m) const { return kTagBits + m.slot_count() * word_bits_; }
  void check(const SimMessage& m, RealNodeId sender) const;

 private:
  std::uint64_t virtual_nodes_;
  std::size_t word_bits_;
  std::uint64_t label_bound_;
};

/// Counter-based draw: a pure function of (seed, node, round, slot).
std::uint64_t seeded_rng(std::uint64_t seed, std::uint64_t real_id, std::uint64_t round, std::uint64_t slot);
/// Maps a 64-bit draw into [0, bound).
std::uint64_t uniform_below(std::uint64_t draw, std::uint64_t bound);

/// Slot namespaces keep draws for different purposes apart.
namespace draw {
inline constexpr std::uint64_t lower_class = 1ULL << 40;
inline constexpr std::uint64_t type1_class = 2ULL << 40;
inline constexpr std::uint64_t type2_class = 3ULL << 40;
inline constexpr std::uint64_t edge_label = 4ULL << 40;
}  // namespace draw

struct StepResult {
  std::optional<SimMessage> message;
  /// The node changed state that still has to be communicated, or holds
  /// queued output. A round with no active node and no message is a fixpoint.
  bool active = false;
};

class NodeContext {
 public:
  NodeContext(RealNodeId node, std::uint64_t round, std::uint64_t phase_round, std::uint64_t seed,
              std::span<const RealNodeId> neighbors)
      : node_(node), round_(round), phase_round_(phase_round), seed_(seed), neighbors_(neighbors) {}

  RealNodeId node() const { return node_; }
  std::uint64_t round() const { return round_; }
  /// Rounds since the enclosing run_until_fixpoint started (0-based).
  std::uint64_t phase_round() const { return phase_round_; }
  std::span<const RealNodeId> neighbors() const { return neighbors_; }

  std::uint64_t draw(std::uint64_t slot) const { return seeded_rng(seed_, node_, round_, slot); }
  std::uint64_t uniform(std::uint64_t slot, std::uint64_t bound) const { return uniform_below(draw(slot), bound); }

 private:
  RealNodeId node_;
  std::uint64_t round_;
  std::uint64_t phase_round_;
  std::uint64_t seed_;
  std::span<const RealNodeId> neighbors_;
};

struct RoundOutcome {
  std::size_t messages = 0;
  bool any_active = false;
};

struct FixpointResult {
  std::uint64_t rounds = 0;
  bool truncated = false;
};

/// Synchronous broadcast-congest engine. Every round each real node runs
/// its handler once on the messages its neighbours emitted in the
/// previous round and may emit one message to all neighbours.
class Network {
 public:
  Network(const Graph& g, MessageBudget budget, std::uint64_t seed);

  const Graph& graph() const { return *graph_; }
  const MessageBudget& budget() const { return budget_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t round() const { return round_; }
  std::uint64_t messages_sent() const { return messages_sent_; }

  std::span<const Envelope> inbox(RealNodeId v) const { return inbox_.at(v); }

  /// Handler: StepResult(const NodeContext&, State&, std::span<const Envelope>).
  template <class State, class Handler>
  RoundOutcome run_round(std::span<State> states, Handler&& handler) {
    return run_round_at(states, handler, 0);
  }

  /// Repeats rounds until one has no message and no active node (that
  /// round is counted) or max_rounds have run (truncated).
  template <class State, class Handler>
  FixpointResult run_until_fixpoint(std::span<State> states, Handler&& handler, std::uint64_t max_rounds) {
    if (max_rounds < 1) throw std::invalid_argument("run_until_fixpoint needs max_rounds >= 1");
    FixpointResult result;
    for (std::uint64_t r = 0; r < max_rounds; ++r) {
      RoundOutcome outcome = run_round_at(states, handler, r);
      ++result.rounds;
      if (outcome.messages == 0 && !outcome.any_active) return result;
    }
    result.truncated = true;
    return result;
  }

  /// Local computation at the end of a round: every node consumes its
  /// pending inbox without sending. Costs no round.
  template <class State, class Fn>
  void absorb(std::span<State> states, Fn&& fn) {
    check_states(states.size());
    for (RealNodeId v = 0; v < graph_->node_count(); ++v) {
      NodeContext ctx(v, round_, 0, seed_, graph_->neighbors(v));
      fn(ctx, states[v], std::span<const Envelope>(inbox_[v]));
      inbox_[v].clear();
    }
  }

  /// Per-directed-edge message accounting. An addressed message counts
  /// on the edge to its addressee; an unaddressed one on every outgoing edge.
  void begin_edge_window();
  /// Closes the window and returns the maximum count over directed edges.
  std::uint32_t end_edge_window();
  bool edge_window_open() const { return window_open_; }

 private:
  template <class State, class Handler>
  RoundOutcome run_round_at(std::span<State> states, Handler& handler, std::uint64_t phase_round) {
    check_states(states.size());
    RoundOutcome outcome;
    std::vector<std::optional<SimMessage>> outbox(graph_->node_count());
    for (RealNodeId v = 0; v < graph_->node_count(); ++v) {
      NodeContext ctx(v, round_, phase_round, seed_, graph_->neighbors(v));
      StepResult step = handler(ctx, states[v], std::span<const Envelope>(inbox_[v]));
      if (step.message) {
        budget_.check(*step.message, v);
        if (step.message->to && *step.message->to != v && !graph_->has_edge(v, *step.message->to)) {
          throw std::logic_error("node " + std::to_string(v) + " addressed non-neighbour " +
                                 std::to_string(*step.message->to));
        }
      }
      outcome.any_active = outcome.any_active || step.active;
      outbox[v] = std::move(step.message);
    }
    deliver(outbox, outcome);
    ++round_;
    return outcome;
  }

  void check_states(std::size_t count) const;
  void deliver(std::vector<std::optional<SimMessage>>& outbox, RoundOutcome& outcome);
  std::size_t edge_slot(RealNodeId from, RealNodeId to) const;

  const Graph* graph_;
  MessageBudget budget_;
  std::uint64_t seed_;
  std::uint64_t round_ = 0;
  std::uint64_t messages_sent_ = 0;
  std::vector<std::vector<Envelope>> inbox_;
  std::vector<std::size_t> edge_offset_;
  std::vector<std::uint32_t> edge_counts_;
  bool window_open_ = false;
};

struct LayerSummary {
  std::uint32_t layer = 0;
  std::uint64_t rounds_component_id = 0;
  std::uint64_t rounds_type1 = 0;
  std::uint64_t rounds_helper = 0;
  std::uint64_t rounds_matching = 0;
  bool component_truncated = false;
  std::vector<std::uint32_t> components;     // per class, old nodes
  std::vector<std::uint32_t> helper_edges;   // per class
  std::vector<std::uint32_t> matched_edges;  // per class
  std::vector<std::uint32_t> matching_rounds;
  std::vector<bool> matching_truncated;
};

struct RoundReport {
  std::uint64_t rounds_total = 0;
  std::map<std::string, std::uint64_t> rounds_per_phase;
  std::uint64_t messages_sent = 0;
  std::uint32_t max_edge_messages_per_matching_round = 0;
  std::vector<LayerSummary> per_layer;

  void add_phase_rounds(const std::string& phase, std::uint64_t rounds);
};

}  // namespace fcds::sim
