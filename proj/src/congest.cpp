#include "fcds/congest.hpp"

#include <algorithm>
#include <bit>

namespace fcds::sim {

const char* to_string(MsgTag tag) {
  switch (tag) {
    case MsgTag::probe: return "probe";
    case MsgTag::flood: return "flood";
    case MsgTag::type1_class: return "type1_class";
    case MsgTag::helper_offer: return "helper_offer";
    case MsgTag::helper_join: return "helper_join";
    case MsgTag::propose: return "propose";
    case MsgTag::accept: return "accept";
  }
  return "?";
}

BudgetViolation::BudgetViolation(RealNodeId node, MsgTag tag, const std::string& what)
    : std::runtime_error("message budget violated by node " + std::to_string(node) + " in phase " +
                         to_string(tag) + ": " + what),
      node_(node),
      tag_(tag) {}

MessageBudget::MessageBudget(std::uint64_t virtual_node_count) : virtual_nodes_(virtual_node_count) {
  if (virtual_node_count == 0) throw std::invalid_argument("message budget needs N >= 1");
  if (virtual_node_count >= (1ULL << 32)) throw std::invalid_argument("virtual graph too large for the label range");
  using u128 = unsigned __int128;
  const u128 n = virtual_node_count;
  const u128 n4 = n * n * n * n;
  // ceil(log2(N^4)) is the bit width of N^4 - 1.
  std::size_t bits = 0;
  for (u128 x = n4 - 1; x != 0; x >>= 1) ++bits;
  word_bits_ = std::max<std::size_t>(bits, 1);
  label_bound_ = n4 > static_cast<u128>(UINT64_MAX) ? UINT64_MAX : static_cast<std::uint64_t>(n4);
}

void MessageBudget::check(const SimMessage& m, RealNodeId sender) const {
  if (m.slot_count() > kMaxFieldSlots) {
    throw BudgetViolation(sender, m.tag, std::to_string(m.slot_count()) + " slots exceed the limit of " +
                                             std::to_string(kMaxFieldSlots));
  }
  if (serialized_bits(m) > budget_bits()) {
    throw BudgetViolation(sender, m.tag, std::to_string(serialized_bits(m)) + " bits exceed " +
                                             std::to_string(budget_bits()));
  }
  for (std::uint64_t value : m.fields) {
    if (label_bound_ != UINT64_MAX && value >= label_bound_) {
      throw BudgetViolation(sender, m.tag, "field value " + std::to_string(value) + " does not fit a word");
    }
  }
}

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t seeded_rng(std::uint64_t seed, std::uint64_t real_id, std::uint64_t round, std::uint64_t slot) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ real_id);
  h = mix64(h ^ round);
  h = mix64(h ^ slot);
  return h;
}

std::uint64_t uniform_below(std::uint64_t draw, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below needs bound >= 1");
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(draw) * bound) >> 64);
}

Network::Network(const Graph& g, MessageBudget budget, std::uint64_t seed)
    : graph_(&g), budget_(budget), seed_(seed), inbox_(g.node_count()) {
  edge_offset_.resize(g.node_count() + 1, 0);
  for (RealNodeId v = 0; v < g.node_count(); ++v) edge_offset_[v + 1] = edge_offset_[v] + g.degree(v);
  edge_counts_.assign(edge_offset_.back(), 0);
}

void Network::check_states(std::size_t count) const {
  if (count != graph_->node_count()) throw std::invalid_argument("state vector size must equal node count");
}

std::size_t Network::edge_slot(RealNodeId from, RealNodeId to) const {
  auto nbrs = graph_->neighbors(from);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), to);
  return edge_offset_[from] + static_cast<std::size_t>(it - nbrs.begin());
}

void Network::deliver(std::vector<std::optional<SimMessage>>& outbox, RoundOutcome& outcome) {
  for (auto& list : inbox_) list.clear();
  for (RealNodeId v = 0; v < graph_->node_count(); ++v) {
    if (!outbox[v]) continue;
    const SimMessage& msg = *outbox[v];
    ++outcome.messages;
    ++messages_sent_;
    if (window_open_) {
      if (msg.to) {
        if (*msg.to != v) ++edge_counts_[edge_slot(v, *msg.to)];
      } else {
        for (std::size_t e = edge_offset_[v]; e < edge_offset_[v + 1]; ++e) ++edge_counts_[e];
      }
    }
    for (RealNodeId w : graph_->neighbors(v)) inbox_[w].push_back(Envelope{v, msg});
  }
}

void Network::begin_edge_window() {
  std::fill(edge_counts_.begin(), edge_counts_.end(), 0);
  window_open_ = true;
}

std::uint32_t Network::end_edge_window() {
  window_open_ = false;
  std::uint32_t best = 0;
  for (std::uint32_t c : edge_counts_) best = std::max(best, c);
  return best;
}

void RoundReport::add_phase_rounds(const std::string& phase, std::uint64_t rounds) {
  rounds_per_phase[phase] += rounds;
  rounds_total += rounds;
}

}  // namespace fcds::sim
