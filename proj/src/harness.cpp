#include "fcds/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <filesystem>
#include <sstream>
#include <thread>

#include "fcds/generators.hpp"
#include "fcds/graph_io.hpp"

namespace fcds::harness {

using nlohmann::ordered_json;

void RunConfig::validate() const {
  if (graph.empty()) throw InputError("no graph source given");
  if (t && *t < 1) throw InputError("t must be at least 1");
  if (!(lmul > 0)) throw InputError("lmul must be positive");
  if (seeds < 1) throw InputError("seeds must be at least 1");
  if (jobs < 1) throw InputError("jobs must be at least 1");
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string part; std::getline(in, part, sep);) out.push_back(part);
  return out;
}

template <class T>
T parse_number(const std::string& text, const std::string& what) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) throw InputError("bad " + what + " '" + text + "'");
  return value;
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used == text.size()) return value;
  } catch (const std::exception&) {
  }
  throw InputError("bad " + what + " '" + text + "'");
}

ordered_json optional_size(std::optional<std::size_t> v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

}  // namespace

Graph load_graph_source(const std::string& source, std::vector<std::string>* warnings) {
  const auto parts = split(source, ':');
  try {
    if (!parts.empty()) {
      const std::string& kind = parts[0];
      if (kind == "harary" && parts.size() == 3) {
        return generate_harary(parse_number<std::size_t>(parts[1], "n"), parse_number<std::size_t>(parts[2], "k"));
      }
      if (kind == "ringclique" && parts.size() == 3) {
        return generate_ring_clique(parse_number<std::size_t>(parts[1], "d"),
                                    parse_number<std::size_t>(parts[2], "ring size"));
      }
      if (kind == "complete" && parts.size() == 2) return generate_complete(parse_number<std::size_t>(parts[1], "n"));
      if (kind == "gnp" && parts.size() == 4) {
        return generate_gnp(parse_number<std::size_t>(parts[1], "n"), parse_double(parts[2], "p"),
                            parse_number<std::uint64_t>(parts[3], "seed"));
      }
    }
    if (!std::filesystem::exists(source)) throw InputError("graph file '" + source + "' does not exist");
    return load_graph(source, warnings);
  } catch (const GraphError& e) {
    throw InputError(e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

std::string stats_line(const GraphStats& s) {
  std::ostringstream out;
  out << "n=" << s.n << " m=" << s.m << " max_degree=" << s.max_degree << " diameter=";
  if (s.diameter == kInfiniteDiameter) {
    out << "inf";
  } else {
    out << s.diameter;
  }
  out << " kappa=" << s.vertex_connectivity;
  return out.str();
}

ProtocolParams params_for(const RunConfig& config, const GraphStats& stats, std::uint64_t seed) {
  if (stats.vertex_connectivity == 0) throw InputError("graph has vertex connectivity 0");
  ProtocolParams p = ProtocolParams::defaults(stats.n, stats.vertex_connectivity, config.lmul, seed);
  if (config.t) p.classes = *config.t;
  return p;
}

RunArtifacts execute(const RunConfig& config, const Graph& g, const GraphStats& stats, std::uint64_t seed) {
  RunArtifacts art;
  art.run = run_full(g, params_for(config, stats, seed));
  art.verification = oracle::verify_run(g, art.run, config.verify_level);
  return art;
}

namespace {

ordered_json stats_json(const GraphStats& s) {
  return {{"n", s.n},
          {"m", s.m},
          {"max_degree", s.max_degree},
          {"diameter", s.diameter == kInfiniteDiameter ? ordered_json(nullptr) : ordered_json(s.diameter)},
          {"vertex_connectivity", s.vertex_connectivity}};
}

ordered_json rounds_json(const sim::RoundReport& r) {
  ordered_json layers = ordered_json::array();
  for (const auto& l : r.per_layer) {
    layers.push_back({{"layer", l.layer},
                      {"rounds_component_id", l.rounds_component_id},
                      {"rounds_type1", l.rounds_type1},
                      {"rounds_helper", l.rounds_helper},
                      {"rounds_matching", l.rounds_matching},
                      {"component_truncated", l.component_truncated},
                      {"components", l.components},
                      {"helper_edges", l.helper_edges},
                      {"matched_edges", l.matched_edges},
                      {"matching_rounds", l.matching_rounds},
                      {"matching_truncated", l.matching_truncated}});
  }
  ordered_json phases = ordered_json::object();
  for (const auto& [name, rounds] : r.rounds_per_phase) phases[name] = rounds;
  return {{"rounds_total", r.rounds_total},
          {"rounds_per_phase", phases},
          {"messages_sent", r.messages_sent},
          {"max_edge_messages_per_matching_round", r.max_edge_messages_per_matching_round},
          {"per_layer", layers}};
}

ordered_json trajectory_json(const MlTrajectory& t) {
  std::vector<std::uint32_t> totals;
  for (std::size_t i = 0; i < t.steps(); ++i) totals.push_back(t.total_at(i));
  return {{"first_layer", t.first_layer}, {"per_class", t.per_class}, {"total", totals}};
}

ordered_json verification_json(const oracle::VerifierReport& v) {
  ordered_json classes = ordered_json::array();
  for (const auto& c : v.classes) {
    classes.push_back({{"class", c.cls},
                       {"dominating", c.dominating},
                       {"dominating_lower", c.dominating_lower},
                       {"connected", c.connectivity.connected},
                       {"reason", oracle::to_string(c.connectivity.reason)},
                       {"components", c.connectivity.components}});
  }
  ordered_json helpers = ordered_json::array();
  for (const auto& h : v.helpers) {
    ordered_json row = {{"layer", h.layer},
                        {"class", h.cls},
                        {"edges", h.edges},
                        {"bipartite", h.bipartite},
                        {"attribution_unique", h.attribution_unique},
                        {"type2_per_real", h.type2_per_real},
                        {"type1_per_real", h.type1_per_real}};
    if (h.matches_paths) row["matches_paths"] = *h.matches_paths;
    helpers.push_back(row);
  }
  ordered_json matchings = ordered_json::array();
  for (const auto& m : v.matchings) {
    matchings.push_back({{"layer", m.layer},
                         {"class", m.cls},
                         {"size", m.size},
                         {"valid", m.valid},
                         {"maximal", m.maximal},
                         {"maximum", optional_size(m.maximum)},
                         {"ratio_ok", m.ratio_ok ? ordered_json(*m.ratio_ok) : ordered_json(nullptr)}});
  }
  ordered_json out = {{"level", oracle::to_string(v.level)},
                      {"structural_ok", v.structural_ok()},
                      {"violations", v.violations},
                      {"all_dominating", v.all_dominating()},
                      {"all_dominating_lower", v.all_dominating_lower()},
                      {"classes", classes},
                      {"helpers", helpers},
                      {"matchings", matchings},
                      {"packing_valid", v.packing.valid()},
                      {"ml_monotone", v.ml_monotone},
                      {"ml_matches_protocol", v.ml_matches_protocol}};
  if (v.level == oracle::VerifyLevel::full) {
    ordered_json paths = ordered_json::array();
    for (const auto& p : v.paths) {
      paths.push_back({{"layer", p.layer},
                       {"class", p.cls},
                       {"component", {p.component.real, p.component.layer, to_string(p.component.kind)}},
                       {"class_components", p.class_components},
                       {"short_path_count", p.short_paths},
                       {"long_path_count", p.long_paths},
                       {"max_disjoint_paths", optional_size(p.max_disjoint)}});
    }
    out["components_agree"] = v.components_agree.value_or(false);
    out["min_disjoint_paths"] = optional_size(oracle::min_disjoint_paths(v));
    out["components"] = paths;
  }
  return out;
}

}  // namespace

ordered_json report_json(const RunConfig& config, const GraphStats& stats, const RunArtifacts& art) {
  const ProtocolParams& p = art.run.params;
  ordered_json cfg = {{"graph", config.graph},
                      {"seed", p.seed},
                      {"t", p.classes},
                      {"L", p.layers},
                      {"lmul", config.lmul},
                      {"t_override", config.t.has_value()},
                      {"verify_level", oracle::to_string(config.verify_level)}};
  ordered_json packing = {{"classes", p.classes},
                          {"denominator", art.run.packing.denominator()},
                          {"valid", art.verification.packing.valid()},
                          {"valid_cds_count", art.verification.packing.valid_cds_count},
                          {"size", art.verification.packing.size.str()}};
  return {{"schema_version", kSchemaVersion},
          {"config", cfg},
          {"graph_stats", stats_json(stats)},
          {"rounds", rounds_json(art.run.rounds)},
          {"ml_trajectory", trajectory_json(art.run.trajectory)},
          {"verification", verification_json(art.verification)},
          {"packing", packing}};
}

std::string report_text(const RunConfig& config, const GraphStats& stats, const RunArtifacts& art) {
  return report_json(config, stats, art).dump(2) + "\n";
}

SweepRow sweep_row(const RunConfig& config, const Graph& g, const GraphStats& stats, std::uint64_t seed) {
  SweepRow row;
  row.seed = seed;
  try {
    const RunArtifacts art = execute(config, g, stats, seed);
    const auto& phases = art.run.rounds.rounds_per_phase;
    auto phase = [&](const char* name) {
      auto it = phases.find(name);
      return it == phases.end() ? std::uint64_t{0} : it->second;
    };
    row.rounds_total = art.run.rounds.rounds_total;
    row.rounds_component_id = phase("component_id");
    row.rounds_helper = phase("helper");
    row.rounds_matching = phase("matching");
    row.valid_cds_count = art.verification.packing.valid_cds_count;
    row.domination_all = art.verification.all_dominating_lower();
    row.initial_M = art.run.trajectory.total_at(0);
    row.final_M = art.run.trajectory.total_at(art.run.trajectory.steps() - 1);
    row.structural_ok = art.verification.structural_ok();
  } catch (const ProtocolError& e) {
    row.error = e.what();
    row.structural_ok = false;
  } catch (const std::logic_error& e) {
    row.error = e.what();
    row.structural_ok = false;
  }
  return row;
}

std::vector<SweepRow> run_sweep(const RunConfig& config, const Graph& g, const GraphStats& stats) {
  config.validate();
  std::vector<SweepRow> rows(config.seeds);
  std::atomic<std::uint32_t> next{0};
  auto worker = [&] {
    for (std::uint32_t i = next++; i < config.seeds; i = next++) rows[i] = sweep_row(config, g, stats, config.seed + i);
  };
  const unsigned threads = std::min<unsigned>(config.jobs, config.seeds);
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << kSweepHeader << '\n';
  for (const auto& r : rows) {
    if (r.error) {
      out << r.seed << ",error,,,,,,,\n";
      continue;
    }
    out << r.seed << ',' << r.rounds_total << ',' << r.rounds_component_id << ',' << r.rounds_helper << ','
        << r.rounds_matching << ',' << r.valid_cds_count << ',' << (r.domination_all ? 1 : 0) << ',' << r.initial_M
        << ',' << r.final_M << '\n';
  }
  return out.str();
}

}  // namespace fcds::harness
