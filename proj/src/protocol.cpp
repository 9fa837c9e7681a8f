#include "fcds/protocol.hpp"

#include <algorithm>
#include <string>

namespace fcds {

std::uint32_t MlTrajectory::total_at(std::size_t step) const {
  std::uint32_t total = 0;
  for (const auto& row : per_class) total += row.at(step);
  return total;
}

namespace {

void record_counts(MlTrajectory& traj, const ComponentMap& comps, std::uint32_t classes) {
  for (ClassId cls = 1; cls <= classes; ++cls) traj.per_class[cls - 1].push_back(comps.count(cls));
}

ComponentMap without_knowledge(ComponentMap m) {
  m.knowledge.clear();
  m.knowledge.shrink_to_fit();
  return m;
}

}  // namespace

RunResult run_full(const Graph& g, const ProtocolParams& params) {
  params.validate();
  if (!is_connected(g)) throw std::invalid_argument("the protocol needs a connected graph");

  const VirtualGraph vg(g, params.layers);
  sim::Network net(g, sim::MessageBudget(vg.size()), params.seed);
  const std::uint32_t L = params.layers;
  const std::uint32_t t = params.classes;
  const std::uint64_t component_cap = params.component_round_cap(g.node_count());
  const std::uint64_t helper_cap = g.max_degree() + 2;
  const std::uint32_t matching_cap = matching_round_cap(vg.size());

  RunResult out;
  out.params = params;
  out.assignment = assign_lower_layers(params, vg);
  out.trajectory.first_layer = L;
  out.trajectory.per_class.assign(t, {});
  // Zero-round steps still appear so the phase breakdown is complete.
  out.rounds.add_phase_rounds("lower_assign", 0);

  for (std::uint32_t layer = L + 1; layer <= 2 * L; ++layer) {
    sim::LayerSummary summary;
    summary.layer = layer;

    ComponentMap comps = identify_components(net, vg, layer, out.assignment, component_cap);
    summary.rounds_component_id = comps.rounds;
    summary.component_truncated = comps.truncated;
    out.rounds.add_phase_rounds("component_id", comps.rounds);
    record_counts(out.trajectory, comps, t);
    for (ClassId cls = 1; cls <= t; ++cls) summary.components.push_back(comps.count(cls));

    summary.rounds_type1 = assign_type1(net, vg, layer, t, out.assignment, comps);
    out.rounds.add_phase_rounds("type1_announce", summary.rounds_type1);

    LayerRecord record;
    record.layer = layer;
    for (ClassId cls = 1; cls <= t; ++cls) {
      HelperBuild build = build_helper_graph(net, vg, layer, cls, comps);
      if (build.rounds > helper_cap) {
        throw ProtocolError("helper construction for class " + std::to_string(cls) + " on layer " +
                            std::to_string(layer) + " took " + std::to_string(build.rounds) + " rounds");
      }
      summary.rounds_helper += build.rounds;
      out.rounds.add_phase_rounds("helper", build.rounds);

      MatchingResult matching = distributed_maximal_matching(net, vg, build.graph, matching_cap);
      if (matching.max_real_rounds_per_matching_round > helper_cap) {
        throw ProtocolError("a matching round took " + std::to_string(matching.max_real_rounds_per_matching_round) +
                            " real rounds");
      }
      if (matching.max_edge_messages > 2) {
        throw ProtocolError("a real edge carried " + std::to_string(matching.max_edge_messages) +
                            " messages in one matching round");
      }
      summary.rounds_matching += matching.real_rounds;
      out.rounds.add_phase_rounds("matching", matching.real_rounds);
      out.rounds.max_edge_messages_per_matching_round =
          std::max(out.rounds.max_edge_messages_per_matching_round, matching.max_edge_messages);
      summary.helper_edges.push_back(static_cast<std::uint32_t>(build.graph.edges().size()));
      summary.matched_edges.push_back(static_cast<std::uint32_t>(matching.matched.size()));
      summary.matching_rounds.push_back(matching.matching_rounds);
      summary.matching_truncated.push_back(matching.truncated);

      record.helper_rounds.push_back(build.rounds);
      record.helpers.push_back(std::move(build.graph));
      record.matchings.push_back(std::move(matching));
    }

    select_type2(vg, layer, record.matchings, t, params.seed, net.round(), out.assignment);

    record.components = without_knowledge(std::move(comps));
    out.layers.push_back(std::move(record));
    out.rounds.per_layer.push_back(std::move(summary));
  }

  // Census of the finished assignment gives the last trajectory entry.
  ComponentMap final_comps = identify_components(net, vg, 2 * L + 1, out.assignment, component_cap);
  out.rounds.add_phase_rounds("census", final_comps.rounds);
  record_counts(out.trajectory, final_comps, t);
  out.final_components = without_knowledge(std::move(final_comps));

  out.rounds.messages_sent = net.messages_sent();
  out.packing = extract_packing(out.assignment, vg, t);
  return out;
}

}  // namespace fcds
