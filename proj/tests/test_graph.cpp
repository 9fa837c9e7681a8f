#include <filesystem>
#include <random>
#include <sstream>

#include "doctest.h"

#include "fcds/generators.hpp"
#include "fcds/graph.hpp"
#include "fcds/graph_io.hpp"

using namespace fcds;

namespace {

// Connectivity by removing every vertex subset; exponential, n <= 12.
std::size_t brute_connectivity(const Graph& g) {
  const std::size_t n = g.node_count();
  auto connected_without = [&](std::uint32_t removed) {
    std::uint32_t seen = 0;
    int start = -1;
    for (std::size_t v = 0; v < n; ++v) {
      if (!(removed >> v & 1)) {
        start = static_cast<int>(v);
        break;
      }
    }
    std::vector<RealNodeId> stack{static_cast<RealNodeId>(start)};
    seen |= 1u << start;
    while (!stack.empty()) {
      RealNodeId v = stack.back();
      stack.pop_back();
      for (RealNodeId w : g.neighbors(v)) {
        if ((removed >> w & 1) || (seen >> w & 1)) continue;
        seen |= 1u << w;
        stack.push_back(w);
      }
    }
    return (seen | removed) == (1u << n) - 1;
  };
  for (std::size_t size = 0; size + 2 <= n; ++size) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) == size && !connected_without(mask)) return size;
    }
  }
  return n - 1;
}

Graph petersen() {
  std::vector<Edge> e;
  for (RealNodeId i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(i + 5, (i + 2) % 5 + 5);
  }
  return Graph::from_edges(10, e);
}

Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (RealNodeId i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, e);
}

Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (RealNodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(n, e);
}

Graph parse(const std::string& text, std::vector<std::string>* warnings = nullptr) {
  std::istringstream in(text);
  return parse_graph(in, warnings);
}

std::string dump(const Graph& g) {
  std::ostringstream out;
  write_graph(g, out);
  return out.str();
}

}  // namespace

TEST_SUITE("graph_core") {
  TEST_CASE("graph construction rejects bad input") {
    CHECK_THROWS_AS(Graph::from_edges(0, {}), GraphError);
    const std::vector<Edge> loop{{1, 1}};
    CHECK_THROWS_AS(Graph::from_edges(2, loop), GraphError);
    const std::vector<Edge> far{{0, 5}};
    CHECK_THROWS_AS(Graph::from_edges(2, far), GraphError);
    const std::vector<Edge> dup{{0, 1}, {1, 0}, {0, 1}};
    const Graph g = Graph::from_edges(2, dup);
    CHECK(g.edge_count() == 1);
    CHECK(g.has_edge(1, 0));
  }

  TEST_CASE("load_graph examples") {
    CHECK(parse("n 2\n0 1\n").edge_count() == 1);

    std::vector<std::string> warnings;
    const Graph g = parse("# comment\nn 3\n0 1\n\n0 1\n1 2\n", &warnings);
    CHECK(g.edge_count() == 2);
    CHECK(warnings.size() == 1);

    CHECK_THROWS_AS(parse("n 2\n0 0\n"), GraphError);
    CHECK_THROWS_AS(parse("n 2\n0 2\n"), GraphError);
    CHECK_THROWS_AS(parse("n 2\n0 one\n"), GraphError);
    CHECK_THROWS_AS(parse("0 1\n"), GraphError);
    CHECK_THROWS_AS(load_graph("/nonexistent/graph.txt"), GraphError);
  }

  TEST_CASE("save_graph examples") {
    const std::string k4 = dump(generate_complete(4));
    std::istringstream lines(k4);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "n 4");
    int edges = 0;
    while (std::getline(lines, line)) ++edges;
    CHECK(edges == 6);

    CHECK(dump(Graph::from_edges(3, {})) == "n 3\n");

    const Graph h = generate_harary(8, 4);
    const auto file = std::filesystem::temp_directory_path() / "fcds_roundtrip_h84.txt";
    save_graph(h, file);
    CHECK(load_graph(file) == h);
    std::filesystem::remove(file);
  }

  TEST_CASE("round trip on random graphs") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
      const std::size_t n = 1 + rng() % 30;
      const double p = std::uniform_real_distribution<double>(0, 1)(rng);
      const Graph g = generate_gnp(n, p, rng());
      CHECK(parse(dump(g)) == g);
    }
  }

  TEST_CASE("harary examples") {
    CHECK(generate_harary(4, 3) == generate_complete(4));
    CHECK(generate_harary(5, 2) == cycle(5));
    const Graph h = generate_harary(8, 4);
    CHECK(h.edge_count() == 16);
    CHECK(brute_connectivity(h) == 4);
    CHECK(vertex_connectivity(h) == 4);
    CHECK_THROWS(generate_harary(3, 5));
    CHECK_THROWS(generate_harary(5, 1));
  }

  TEST_CASE("harary graphs are exactly k-connected") {
    for (std::size_t n = 4; n <= 12; ++n) {
      for (std::size_t k = 2; k < n; ++k) {
        const Graph h = generate_harary(n, k);
        CAPTURE(n);
        CAPTURE(k);
        CHECK(brute_connectivity(h) == k);
        CHECK(vertex_connectivity(h) == k);
        CHECK(h.min_degree() == k);
      }
    }
    for (auto [n, k] : {std::pair<std::size_t, std::size_t>{40, 8}, {60, 6}, {16, 4}, {20, 5}, {25, 7}}) {
      CHECK(vertex_connectivity(generate_harary(n, k)) == k);
    }
  }

  TEST_CASE("ring-clique examples") {
    CHECK(generate_ring_clique(1, 3) == generate_complete(3));
    const Graph rc = generate_ring_clique(4, 8);
    CHECK(rc.node_count() == 32);
    CHECK(rc.max_degree() == 5);
    // Each ring reaches the others only through its node 0.
    CHECK(vertex_connectivity(rc) == 1);
    CHECK(vertex_connectivity(generate_ring_clique(1, 6)) == 2);
    CHECK_THROWS(generate_ring_clique(0, 5));
    CHECK_THROWS(generate_ring_clique(2, 2));
  }

  TEST_CASE("vertex_connectivity examples") {
    CHECK(vertex_connectivity(generate_complete(5)) == 4);
    CHECK(vertex_connectivity(cycle(6)) == 2);
    const Graph p = petersen();
    CHECK(brute_connectivity(p) == 3);
    CHECK(vertex_connectivity(p) == 3);
    CHECK(vertex_connectivity(Graph::from_edges(4, std::vector<Edge>{{0, 1}, {2, 3}})) == 0);
  }

  TEST_CASE("vertex_connectivity matches exhaustive removal") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
      const std::size_t n = 2 + rng() % 9;
      const double p = std::uniform_real_distribution<double>(0.2, 0.9)(rng);
      const Graph g = generate_gnp(n, p, rng());
      CAPTURE(dump(g));
      CHECK(vertex_connectivity(g) == brute_connectivity(g));
    }
  }

  TEST_CASE("graph_stats examples") {
    CHECK(graph_stats(generate_complete(4)) == GraphStats{4, 6, 3, 1, 3});
    CHECK(graph_stats(path(3)) == GraphStats{3, 2, 2, 2, 1});
    const GraphStats h = graph_stats(generate_harary(8, 4));
    CHECK(h.vertex_connectivity == 4);
    CHECK(h.max_degree == 4);
    CHECK(graph_stats(Graph::from_edges(3, std::vector<Edge>{{0, 1}})).diameter == kInfiniteDiameter);
  }

  TEST_CASE("diameter equals the largest eccentricity") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 40; ++i) {
      const std::size_t n = 2 + rng() % 15;
      const Graph g = generate_gnp(n, 0.3, rng());
      // Floyd-Warshall as the independent reference.
      const std::size_t inf = 1000;
      std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, inf));
      for (std::size_t v = 0; v < n; ++v) d[v][v] = 0;
      for (auto [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) d[a][b] = std::min(d[a][b], d[a][k] + d[k][b]);
      std::size_t expect = 0;
      for (auto& row : d)
        for (std::size_t x : row) expect = std::max(expect, x);
      CHECK(diameter(g) == (expect >= inf ? kInfiniteDiameter : expect));
      CHECK(diameter(g) == diameter(g));
    }
  }
}
