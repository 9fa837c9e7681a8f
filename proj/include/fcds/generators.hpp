#pragma once

#include <cstddef>
#include <cstdint>

#include "fcds/graph.hpp"

namespace fcds {

/// Harary graph H_{k,n}: the minimum-edge k-vertex-connected graph on n
/// nodes. Requires 2 <= k < n.
Graph generate_harary(std::size_t n, std::size_t k);

/// `d` disjoint rings of `ring_size` nodes; the first node of every ring
/// joins a d-clique. Node ids: ring r occupies [r*ring_size, (r+1)*ring_size).
Graph generate_ring_clique(std::size_t d, std::size_t ring_size);

Graph generate_complete(std::size_t n);

/// Erdos-Renyi G(n, p) from a seeded mt19937_64.
Graph generate_gnp(std::size_t n, double p, std::uint64_t seed);

}  // namespace fcds
