// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "fcds/generators.hpp"
#include "fcds/harness.hpp"
#include "fcds/oracle.hpp"

using namespace fcds;
using fcds::harness::RunArtifacts;
using fcds::harness::RunConfig;
using fcds::oracle::VerifyLevel;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Runs fn(i) for i in [0, count) on all hardware threads.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const unsigned threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) fn(i);
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

struct Outcome {
  std::optional<RunArtifacts> art;
  std::string error;  // non-empty if the run threw
};

struct Job {
  Graph graph;
  GraphStats stats;
  RunConfig config;
  std::uint64_t seed = 1;
};

std::vector<Outcome> run_jobs(const std::vector<Job>& jobs) {
  std::vector<Outcome> out(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    const Job& j = jobs[i];
    try {
      out[i].art = harness::execute(j.config, j.graph, j.stats, j.seed);
    } catch (const std::exception& e) {
      out[i].error = e.what();
    }
  });
  return out;
}

Job make_job(const Graph& g, const GraphStats& s, const std::string& name, std::uint64_t seed, double lmul,
             std::optional<std::uint32_t> t, VerifyLevel level) {
  Job j;
  j.graph = g;
  j.stats = s;
  j.config.graph = name;
  j.config.seed = seed;
  j.config.lmul = lmul;
  j.config.t = t;
  j.config.verify_level = level;
  j.seed = seed;
  return j;
}

std::vector<Job> harary_jobs(std::size_t n, std::size_t k, double lmul, std::optional<std::uint32_t> t,
                             std::uint64_t first_seed, std::size_t seeds, VerifyLevel level) {
  const Graph g = generate_harary(n, k);
  const GraphStats s = graph_stats(g);
  const std::string name = "harary:" + std::to_string(n) + ":" + std::to_string(k);
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < seeds; ++i) jobs.push_back(make_job(g, s, name, first_seed + i, lmul, t, level));
  return jobs;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << criterion << ": " << detail << std::endl;
  if (!pass) ++failures;
}

/// Structural tallies shared by criteria 3, 4, 5 and 9.
struct Tally {
  std::size_t runs = 0, errors = 0;
  std::size_t helpers = 0, helper_mismatch = 0, helper_structure_bad = 0;
  std::size_t matchings = 0, invalid = 0, not_maximal = 0, ratio_checked = 0, ratio_bad = 0;
  std::size_t helper_round_excess = 0, edge_message_excess = 0;
  std::uint64_t max_helper_rounds_over_cap = 0;
  std::uint32_t max_edge_messages = 0;
  std::size_t packing_bad = 0;
  std::string first_error;

  void add(const Job& job, const Outcome& o) {
    ++runs;
    if (!o.art) {
      ++errors;
      if (first_error.empty()) first_error = o.error;
      return;
    }
    const RunResult& run = o.art->run;
    const auto& v = o.art->verification;
    for (const auto& h : v.helpers) {
      ++helpers;
      if (h.matches_paths && !*h.matches_paths) ++helper_mismatch;
      if (!(h.bipartite && h.attribution_unique && h.type2_per_real && h.type1_per_real)) ++helper_structure_bad;
    }
    std::size_t mi = 0;
    for (const auto& rec : run.layers) {
      for (std::size_t c = 0; c < rec.matchings.size(); ++c, ++mi) {
        const auto& m = rec.matchings[c];
        const auto& mc = v.matchings.at(mi);
        ++matchings;
        if (!mc.valid) ++invalid;
        if (!mc.maximal) ++not_maximal;
        if (mc.ratio_ok) {
          ++ratio_checked;
          ratio_bad += !*mc.ratio_ok;
        }
        max_edge_messages = std::max(max_edge_messages, m.max_edge_messages);
        if (m.max_edge_messages > 2) ++edge_message_excess;
        const std::uint64_t cap = job.graph.max_degree() + 2;
        if (rec.helper_rounds.at(c) > cap) {
          ++helper_round_excess;
          max_helper_rounds_over_cap = std::max(max_helper_rounds_over_cap, rec.helper_rounds[c] - cap);
        }
      }
    }
    const oracle::PackingVerdict& p = v.packing;
    const bool denominators = run.packing.denominator() == 3 * run.params.layers;
    if (!p.valid() || !denominators) ++packing_bad;
  }
};

Tally tally;

std::vector<Job> criterion1_jobs() {
  // Sparse bases, few layers and extra classes keep classes fragmented
  // long enough for the helper graphs to be non-trivial.
  std::mt19937_64 rng(2024);
  const double lmuls[] = {0.2, 0.3, 0.5};
  std::vector<Job> jobs;
  while (jobs.size() < 240) {
    const std::size_t n = 12 + rng() % 13;
    const double p = std::uniform_real_distribution<double>(0.2, 0.45)(rng);
    const std::uint64_t gseed = rng();
    const Graph g = generate_gnp(n, p, gseed);
    const GraphStats s = graph_stats(g);
    if (s.vertex_connectivity < 3) continue;
    std::ostringstream name;
    name << "gnp:" << n << ":" << p << ":" << gseed;
    const std::size_t i = jobs.size();
    const std::uint32_t kappa = static_cast<std::uint32_t>(s.vertex_connectivity);
    const std::optional<std::uint32_t> t = i % 4 == 0 ? std::nullopt : std::optional<std::uint32_t>(kappa + i % 4);
    jobs.push_back(make_job(g, s, name.str(), 1 + i, lmuls[i % 3], t, VerifyLevel::full));
  }
  return jobs;
}

}  // namespace

int main() {
  const auto suite_start = Clock::now();
  nlohmann::json calibration;
  {
    std::ifstream in(std::string(FCDS_FIXTURE_DIR) + "/calibration.json");
    if (!in) {
      std::cerr << "missing calibration fixture\n";
      return 2;
    }
    in >> calibration;
  }

  // Criterion 1 (also feeds 3, 4, 5, 9).
  {
    const auto start = Clock::now();
    const auto jobs = criterion1_jobs();
    const auto out = run_jobs(jobs);
    Tally local;
    std::size_t nontrivial = 0, unchecked = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      local.add(jobs[i], out[i]);
      tally.add(jobs[i], out[i]);
      if (out[i].art) {
        for (const auto& h : out[i].art->verification.helpers) {
          nontrivial += h.edges > 0;
          unchecked += !h.matches_paths.has_value();
        }
      }
    }
    const double secs = seconds_since(start);
    const bool pass = local.errors == 0 && local.helper_mismatch == 0 && unchecked == 0 && nontrivial > 0 && secs < 120;
    std::ostringstream d;
    d << "helper/path equivalence on " << jobs.size() << " gnp runs (n<=24, kappa>=3): " << local.helper_mismatch
      << " mismatches over " << local.helpers << " helper graphs (" << nontrivial << " non-empty), " << local.errors
      << " errors, " << secs << "s";
    if (!local.first_error.empty()) d << "; first error: " << local.first_error;
    report(1, pass, d.str());

    std::ostringstream d3;
    d3 << local.matchings << " matchings: " << local.invalid << " invalid, " << local.not_maximal
       << " not maximal, ratio checked on " << local.ratio_checked << " with " << local.ratio_bad << " below half";
    report(3, local.errors == 0 && local.invalid == 0 && local.not_maximal == 0 && local.ratio_bad == 0 &&
                  local.matchings > 0,
           d3.str());
  }

  // Criterion 2.
  {
    std::vector<Job> jobs = harary_jobs(16, 4, 1.0, std::nullopt, 1, 10, VerifyLevel::full);
    for (auto& j : harary_jobs(20, 5, 1.0, std::nullopt, 1, 10, VerifyLevel::full)) jobs.push_back(std::move(j));
    for (auto& j : harary_jobs(16, 4, 0.5, std::nullopt, 1, 10, VerifyLevel::full)) jobs.push_back(std::move(j));
    for (auto& j : harary_jobs(20, 5, 0.5, std::nullopt, 1, 10, VerifyLevel::full)) jobs.push_back(std::move(j));
    const auto out = run_jobs(jobs);
    std::size_t measured = 0, below = 0, unmeasurable = 0, errors = 0;
    std::size_t worst = SIZE_MAX;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      tally.add(jobs[i], out[i]);
      if (!out[i].art) {
        ++errors;
        continue;
      }
      const std::size_t kappa = jobs[i].stats.vertex_connectivity;
      for (const auto& p : out[i].art->verification.paths) {
        if (p.class_components < 2) continue;
        if (!p.max_disjoint) {
          ++unmeasurable;
          continue;
        }
        ++measured;
        worst = std::min(worst, *p.max_disjoint);
        below += *p.max_disjoint < kappa;
      }
    }
    std::ostringstream d;
    d << "disjoint connector paths >= kappa on Harary(16,4) and Harary(20,5), " << jobs.size() << " runs: " << measured
      << " components measured, " << below << " below kappa, min " << (worst == SIZE_MAX ? 0 : worst);
    report(2, errors == 0 && below == 0 && unmeasurable == 0 && measured > 0, d.str());
  }

  // Criterion 6.
  std::vector<Outcome> k16;
  {
    const Graph g = generate_complete(16);
    const GraphStats s = graph_stats(g);
    std::vector<Job> jobs;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      jobs.push_back(make_job(g, s, "complete:16", seed, 1.0, std::nullopt, VerifyLevel::structural));
    }
    k16 = run_jobs(jobs);
    std::size_t good = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      tally.add(jobs[i], k16[i]);
      if (!k16[i].art) continue;
      const auto& v = k16[i].art->verification;
      bool ok = v.packing.valid_cds_count == k16[i].art->run.params.classes;
      for (const auto& c : v.classes) ok = ok && c.dominating && c.connectivity.connected;
      good += ok;
    }
    report(6, good == 20, "K16 defaults: " + std::to_string(good) + "/20 seeds with every class a connected dominating set");
  }

  // Criterion 7.
  {
    const auto& cal = calibration.at("domination");
    const auto threshold = cal.at("threshold").get<std::size_t>();
    const auto jobs = harary_jobs(40, 8, cal.at("lmul").get<double>(), cal.at("t").get<std::uint32_t>(),
                                  cal.at("first_seed").get<std::uint64_t>(), cal.at("seeds").get<std::size_t>(),
                                  VerifyLevel::structural);
    const auto out = run_jobs(jobs);
    std::size_t all = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      tally.add(jobs[i], out[i]);
      if (out[i].art) all += out[i].art->verification.all_dominating_lower();
    }
    std::ostringstream d;
    d << "Harary(40,8) t=4 L=" << (out.front().art ? out.front().art->run.params.layers : 0)
      << ": all classes dominating in " << all << "/" << jobs.size() << " seeds (threshold " << threshold
      << ", calibrated " << cal.at("observed_all_dominating").get<std::size_t>() << ")";
    report(7, all >= threshold, d.str());
  }

  // Criterion 8.
  {
    const auto& cal = calibration.at("ml_trajectory");
    const auto jobs = harary_jobs(60, 6, cal.at("lmul").get<double>(), std::nullopt,
                                  cal.at("first_seed").get<std::uint64_t>(), cal.at("seeds").get<std::size_t>(),
                                  VerifyLevel::structural);
    const auto out = run_jobs(jobs);
    std::vector<double> initial, final_;
    std::size_t monotone = 0, errors = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      tally.add(jobs[i], out[i]);
      if (!out[i].art) {
        ++errors;
        continue;
      }
      const auto& t = out[i].art->run.trajectory;
      monotone += oracle::non_increasing(out[i].art->verification.ml);
      initial.push_back(t.total_at(0));
      final_.push_back(t.total_at(t.steps() - 1));
    }
    const double mi = initial.empty() ? 0 : median(initial);
    const double mf = final_.empty() ? 0 : median(final_);
    std::ostringstream d;
    d << "Harary(60,6) lmul=" << cal.at("lmul").get<double>() << ": M_l non-increasing in " << monotone << "/"
      << jobs.size() << " runs, median M initial " << mi << " final " << mf << " (calibrated "
      << cal.at("observed_median_initial").get<double>() << " -> " << cal.at("observed_median_final").get<double>()
      << ")";
    report(8, errors == 0 && monotone == jobs.size() && mf < mi, d.str());
  }

  // Criteria 4, 5, 9 over every run above.
  {
    std::ostringstream d4;
    d4 << tally.helpers << " helper graphs over " << tally.runs << " runs: " << tally.helper_structure_bad
       << " not bipartite or misattributed";
    report(4, tally.errors == 0 && tally.helper_structure_bad == 0 && tally.helpers > 0, d4.str());

    std::ostringstream d5;
    d5 << tally.runs << " runs: " << tally.helper_round_excess << " helper builds above max_degree+2, "
       << tally.edge_message_excess << " matching rounds above 2 messages per edge (max " << tally.max_edge_messages
       << "), " << tally.errors << " runs aborted by a budget or cap violation";
    if (!tally.first_error.empty()) d5 << "; first: " << tally.first_error;
    report(5, tally.errors == 0 && tally.helper_round_excess == 0 && tally.edge_message_excess == 0, d5.str());

    std::ostringstream d9;
    d9 << tally.runs << " runs: " << tally.packing_bad << " with weight sums != 1 or denominators != 3L";
    report(9, tally.errors == 0 && tally.packing_bad == 0, d9.str());
  }

  // Criterion 10.
  {
    const Graph g = generate_harary(40, 8);
    const GraphStats s = graph_stats(g);
    RunConfig c;
    c.graph = "harary:40:8";
    c.t = 4;
    c.lmul = 2;
    c.seed = 7;
    c.verify_level = VerifyLevel::full;
    const std::string a = harness::report_text(c, s, harness::execute(c, g, s, c.seed));
    const std::string b = harness::report_text(c, s, harness::execute(c, g, s, c.seed));
    c.seeds = 8;
    c.jobs = 1;
    const std::string serial = harness::sweep_csv(harness::run_sweep(c, g, s));
    c.jobs = 4;
    const std::string threaded = harness::sweep_csv(harness::run_sweep(c, g, s));
    report(10, a == b && serial == threaded,
           "two identical runs give " + std::string(a == b ? "byte-identical" : "different") + " JSON (" +
               std::to_string(a.size()) + " bytes); sweep CSV " + (serial == threaded ? "matches" : "differs") +
               " across thread counts");
  }

  std::cout << "total " << seconds_since(suite_start) << "s, " << failures << " failing criteria" << std::endl;
  return failures == 0 ? 0 : 1;
}
