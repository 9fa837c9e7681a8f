#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fcds/generators.hpp"
#include "fcds/graph_io.hpp"
#include "fcds/harness.hpp"

using namespace fcds;
using namespace fcds::harness;

namespace {

void add_run_flags(CLI::App* cmd, RunConfig& cfg, std::string& level) {
  cmd->add_option("--graph", cfg.graph, "Graph file or generator string (harary:n:k, ringclique:d:m, complete:n)")
      ->required();
  cmd->add_option("--t", cfg.t, "Number of classes (default ceil(kappa/2))");
  cmd->add_option("--lmul", cfg.lmul, "Layer multiplier, L = ceil(lmul * log2 n)");
  cmd->add_option("--seed", cfg.seed, "Seed (first seed of a sweep)");
  cmd->add_option("--out", cfg.out, "Output file (stdout if omitted)");
  cmd->add_option("--verify-level", level, "structural or full")->check(CLI::IsMember({"structural", "full"}));
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

struct Loaded {
  Graph graph;
  GraphStats stats;
};

Loaded load(const RunConfig& cfg) {
  std::vector<std::string> warnings;
  Graph g = load_graph_source(cfg.graph, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  GraphStats stats = graph_stats(g);
  if (stats.vertex_connectivity == 0) throw InputError("graph is disconnected (kappa = 0)");
  return {std::move(g), stats};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed FCDS packing simulator"};
  app.set_config("--config", "", "Flat key=value file; keys are flag names");
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "Write a generated graph and print its stats");
  std::vector<std::string> gen_args;
  std::string gen_out;
  gen->add_option("source", gen_args, "harary N K | ringclique D M | file PATH")->required()->expected(2, 3);
  gen->add_option("-o,--out", gen_out, "Edge-list output file");

  RunConfig run_cfg, sweep_cfg, verify_cfg;
  std::string run_level = "structural", sweep_level = "structural", verify_level = "full";

  auto* run = app.add_subcommand("run", "Run the protocol once and emit a JSON report");
  add_run_flags(run, run_cfg, run_level);

  auto* sweep = app.add_subcommand("sweep", "Run a seed range and emit CSV rows");
  add_run_flags(sweep, sweep_cfg, sweep_level);
  sweep->add_option("--seeds", sweep_cfg.seeds, "Number of seeds");
  sweep->add_option("--jobs", sweep_cfg.jobs, "Worker threads");

  auto* verify = app.add_subcommand("verify", "Run once with the full oracle and print a verdict");
  add_run_flags(verify, verify_cfg, verify_level);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*gen) {
      Graph g = [&] {
        if (gen_args[0] == "harary" && gen_args.size() == 3) return load_graph_source("harary:" + gen_args[1] + ":" + gen_args[2]);
        if (gen_args[0] == "ringclique" && gen_args.size() == 3) {
          return load_graph_source("ringclique:" + gen_args[1] + ":" + gen_args[2]);
        }
        if (gen_args[0] == "file" && gen_args.size() == 2) return load_graph_source(gen_args[1]);
        throw InputError("unknown generator");
      }();
      if (!gen_out.empty()) save_graph(g, gen_out);
      std::cout << stats_line(graph_stats(g)) << '\n';
      return kExitOk;
    }

    if (*run) {
      run_cfg.verify_level = oracle::parse_verify_level(run_level);
      run_cfg.validate();
      const Loaded in = load(run_cfg);
      const RunArtifacts art = execute(run_cfg, in.graph, in.stats, run_cfg.seed);
      emit(run_cfg.out, report_text(run_cfg, in.stats, art));
      return art.verification.structural_ok() ? kExitOk : kExitStructural;
    }

    if (*sweep) {
      sweep_cfg.verify_level = oracle::parse_verify_level(sweep_level);
      sweep_cfg.validate();
      const Loaded in = load(sweep_cfg);
      const auto rows = run_sweep(sweep_cfg, in.graph, in.stats);
      emit(sweep_cfg.out, sweep_csv(rows));
      bool ok = true;
      for (const auto& r : rows) {
        if (r.error) std::cerr << "seed " << r.seed << ": " << *r.error << '\n';
        ok = ok && r.structural_ok;
      }
      return ok ? kExitOk : kExitStructural;
    }

    if (*verify) {
      verify_cfg.verify_level = oracle::parse_verify_level(verify_level);
      verify_cfg.validate();
      const Loaded in = load(verify_cfg);
      const RunArtifacts art = execute(verify_cfg, in.graph, in.stats, verify_cfg.seed);
      const auto& v = art.verification;
      std::ostringstream text;
      text << stats_line(in.stats) << '\n';
      text << "t=" << art.run.params.classes << " L=" << art.run.params.layers << " seed=" << verify_cfg.seed << '\n';
      text << "valid_cds_count=" << v.packing.valid_cds_count << " size=" << v.packing.size.str() << '\n';
      text << "all_dominating=" << v.all_dominating() << " packing_valid=" << v.packing.valid()
           << " ml_monotone=" << v.ml_monotone << '\n';
      if (auto d = oracle::min_disjoint_paths(v)) text << "min_disjoint_paths=" << *d << '\n';
      for (const auto& msg : v.violations) text << "violation: " << msg << '\n';
      text << (v.structural_ok() ? "structural: ok" : "structural: FAILED") << '\n';
      emit(verify_cfg.out, text.str());
      return v.structural_ok() ? kExitOk : kExitStructural;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ProtocolError& e) {
    std::cerr << "protocol violation: " << e.what() << '\n';
    return kExitStructural;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitStructural;
  }
  return kExitOk;
}
