#include "fcds/generators.hpp"

#include <random>
#include <stdexcept>
#include <vector>

namespace fcds {

Graph generate_harary(std::size_t n, std::size_t k) {
  if (k < 2 || k >= n) throw std::invalid_argument("harary graph needs 2 <= k < n");
  std::vector<Edge> edges;
  const std::size_t half = k / 2;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 1; j <= half; ++j) {
      edges.emplace_back(static_cast<RealNodeId>(i), static_cast<RealNodeId>((i + j) % n));
    }
  }
  if (k % 2 == 1) {
    if (n % 2 == 0) {
      for (std::size_t i = 0; i < n / 2; ++i) {
        edges.emplace_back(static_cast<RealNodeId>(i), static_cast<RealNodeId>(i + n / 2));
      }
    } else {
      // Odd k and odd n: near-diameters from the first (n+1)/2 nodes.
      for (std::size_t i = 0; i <= (n - 1) / 2; ++i) {
        edges.emplace_back(static_cast<RealNodeId>(i), static_cast<RealNodeId>((i + (n + 1) / 2) % n));
      }
    }
  }
  return Graph::from_edges(n, edges);
}

Graph generate_ring_clique(std::size_t d, std::size_t ring_size) {
  if (d < 1 || ring_size < 3) throw std::invalid_argument("ring-clique needs d >= 1 and ring_size >= 3");
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < d; ++r) {
    const std::size_t base = r * ring_size;
    for (std::size_t i = 0; i < ring_size; ++i) {
      edges.emplace_back(static_cast<RealNodeId>(base + i), static_cast<RealNodeId>(base + (i + 1) % ring_size));
    }
  }
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a + 1; b < d; ++b) {
      edges.emplace_back(static_cast<RealNodeId>(a * ring_size), static_cast<RealNodeId>(b * ring_size));
    }
  }
  return Graph::from_edges(d * ring_size, edges);
}

Graph generate_complete(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) edges.emplace_back(static_cast<RealNodeId>(u), static_cast<RealNodeId>(v));
  }
  return Graph::from_edges(n, edges);
}

Graph generate_gnp(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(static_cast<RealNodeId>(u), static_cast<RealNodeId>(v));
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace fcds
