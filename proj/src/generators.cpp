#include "chroma/generators.hpp"

#include <random>
#include <stdexcept>
#include <vector>

namespace chroma {
namespace {

// Uniform double in [0,1) from the top 53 bits.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability must lie in [0,1]");
}

void check_count(std::size_t n) {
  if (n > kMaxVertices) throw std::invalid_argument("vertex count exceeds supported range");
}

}  // namespace

Graph gen_hex_mesh(std::size_t nx, std::size_t ny, std::size_t nz) {
  if (nx == 0 || ny == 0 || nz == 0) throw std::invalid_argument("mesh dimensions must be >= 1");
  if (nx > kMaxVertices / ny || nx * ny > kMaxVertices / nz) {
    throw std::invalid_argument("mesh cell count overflows vertex ids");
  }
  auto id = [&](std::size_t x, std::size_t y, std::size_t z) {
    return static_cast<VertexId>(x + nx * (y + ny * z));
  };
  std::vector<Edge> edges;
  edges.reserve(3 * nx * ny * nz);
  for (std::size_t z = 0; z < nz; ++z) {
    for (std::size_t y = 0; y < ny; ++y) {
      for (std::size_t x = 0; x < nx; ++x) {
        if (x + 1 < nx) edges.emplace_back(id(x, y, z), id(x + 1, y, z));
        if (y + 1 < ny) edges.emplace_back(id(x, y, z), id(x, y + 1, z));
        if (z + 1 < nz) edges.emplace_back(id(x, y, z), id(x, y, z + 1));
      }
    }
  }
  return preprocess(edges, nx * ny * nz);
}

Graph gen_mycielskian(int k) {
  if (k < 2 || k > 12) throw std::invalid_argument("mycielskian order must be in [2,12]");
  std::size_t n = 2;
  std::vector<Edge> edges{{0, 1}};
  for (int step = 2; step < k; ++step) {
    // vertices: originals 0..n-1, shadows n..2n-1, apex 2n
    std::vector<Edge> next = edges;
    for (const auto& [a, b] : edges) {
      next.emplace_back(a, static_cast<VertexId>(n + b));
      next.emplace_back(b, static_cast<VertexId>(n + a));
    }
    for (std::size_t i = 0; i < n; ++i) {
      next.emplace_back(static_cast<VertexId>(n + i), static_cast<VertexId>(2 * n));
    }
    edges = std::move(next);
    n = 2 * n + 1;
  }
  return preprocess(edges, n);
}

Graph gen_random_gnp(std::size_t n, double p, std::uint64_t seed) {
  check_probability(p);
  check_count(n);
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (unit(rng) < p) edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(j));
    }
  }
  return preprocess(edges, n);
}

DirectedGraph gen_random_dag(std::size_t n, double p, std::uint64_t seed) {
  check_probability(p);
  check_count(n);
  std::mt19937_64 rng(seed);
  std::vector<Edge> arcs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (unit(rng) < p) arcs.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(j));
    }
  }
  return preprocess_directed(arcs, n);
}

Graph gen_path(std::size_t n) {
  check_count(n);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(i + 1));
  }
  return preprocess(edges, n);
}

Graph gen_cycle(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  check_count(n);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % n));
  }
  return preprocess(edges, n);
}

Graph gen_complete(std::size_t n) {
  check_count(n);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(j));
    }
  }
  return preprocess(edges, n);
}

Graph gen_star(std::size_t leaves) {
  check_count(leaves + 1);
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= leaves; ++i) edges.emplace_back(0, static_cast<VertexId>(i));
  return preprocess(edges, leaves + 1);
}

Graph gen_petersen() {
  std::vector<Edge> edges;
  for (VertexId i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);          // outer cycle
    edges.emplace_back(i, i + 5);                // spokes
    edges.emplace_back(i + 5, (i + 2) % 5 + 5);  // inner pentagram
  }
  return preprocess(edges, 10);
}

}  // namespace chroma
