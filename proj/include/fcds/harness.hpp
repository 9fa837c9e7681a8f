#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "fcds/graph.hpp"
#include "fcds/oracle.hpp"
#include "fcds/protocol.hpp"

namespace fcds::harness {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kExitOk = 0, kExitStructural = 1, kExitInput = 2 };

/// Bad configuration or unreadable graph; maps to kExitInput.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  /// File path, or a generator string: harary:n:k, ringclique:d:m, complete:n, gnp:n:p:seed.
  std::string graph;
  std::optional<std::uint32_t> t;
  double lmul = 1.0;
  std::uint64_t seed = 1;
  std::uint32_t seeds = 1;
  std::string out;
  oracle::VerifyLevel verify_level = oracle::VerifyLevel::structural;
  unsigned jobs = 1;

  void validate() const;
};

/// Throws InputError.
Graph load_graph_source(const std::string& source, std::vector<std::string>* warnings = nullptr);

/// "n=.. m=.. max_degree=.. diameter=.. kappa=.."
std::string stats_line(const GraphStats& stats);

/// Protocol parameters for one seed. Throws InputError when kappa is 0.
ProtocolParams params_for(const RunConfig& config, const GraphStats& stats, std::uint64_t seed);

struct RunArtifacts {
  RunResult run;
  oracle::VerifierReport verification;
};

RunArtifacts execute(const RunConfig& config, const Graph& g, const GraphStats& stats, std::uint64_t seed);

nlohmann::ordered_json report_json(const RunConfig& config, const GraphStats& stats, const RunArtifacts& art);
/// Pretty-printed, newline-terminated.
std::string report_text(const RunConfig& config, const GraphStats& stats, const RunArtifacts& art);

struct SweepRow {
  std::uint64_t seed = 0;
  std::optional<std::string> error;
  std::uint64_t rounds_total = 0;
  std::uint64_t rounds_component_id = 0;
  std::uint64_t rounds_helper = 0;
  std::uint64_t rounds_matching = 0;
  std::uint32_t valid_cds_count = 0;
  bool domination_all = false;  // every class dominates using lower layers only
  std::uint32_t initial_M = 0;
  std::uint32_t final_M = 0;
  bool structural_ok = true;
};

inline constexpr const char* kSweepHeader =
    "seed,rounds_total,rounds_component_id,rounds_helper,rounds_matching,valid_cds_count,domination_all,initial_M,"
    "final_M";

SweepRow sweep_row(const RunConfig& config, const Graph& g, const GraphStats& stats, std::uint64_t seed);
/// Seeds config.seed .. config.seed + seeds - 1 on up to config.jobs threads; rows ordered by seed.
std::vector<SweepRow> run_sweep(const RunConfig& config, const Graph& g, const GraphStats& stats);
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace fcds::harness
