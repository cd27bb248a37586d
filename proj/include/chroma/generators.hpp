#pragma once

#include <cstdint>

#include "chroma/graph.hpp"

namespace chroma {

/// Cells of an nx*ny*nz grid joined to their face neighbors. Cell (x,y,z)
/// has id x + nx*(y + ny*z), so ids run x-fastest and contiguous id blocks
/// are slabs along z. Throws std::invalid_argument on a zero dimension or
/// when the cell count overflows the vertex id range.
Graph gen_hex_mesh(std::size_t nx, std::size_t ny, std::size_t nz);

/// k-1 Mycielski iterations starting from K2; chromatic number k.
/// 2 <= k <= 12.
Graph gen_mycielskian(int k);

/// Erdos-Renyi G(n, p). The sampler uses only mt19937_64 output so a seed
/// gives the same graph on every platform.
Graph gen_random_gnp(std::size_t n, double p, std::uint64_t seed);

/// Random DAG on n vertices: arc i->j (i<j) with probability p.
DirectedGraph gen_random_dag(std::size_t n, double p, std::uint64_t seed);

Graph gen_path(std::size_t n);
Graph gen_cycle(std::size_t n);
Graph gen_complete(std::size_t n);
Graph gen_star(std::size_t leaves);  // center is vertex 0
Graph gen_petersen();

}  // namespace chroma
