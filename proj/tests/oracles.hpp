#pragma once

// Reference implementations that share no code with the library.

#include <algorithm>
#include <vector>

#include "chroma/graph.hpp"
#include "chroma/verify.hpp"

namespace chroma::oracle {

enum class Check { D1, D2, PD2 };

// Adjacency-matrix scan over every pair and every middle vertex.
inline std::vector<Violation> naive_violations(const Graph& g, const Coloring& c, Check mode) {
  const auto n = static_cast<VertexId>(g.num_vertices());
  std::vector<std::vector<bool>> a(n, std::vector<bool>(n, false));
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId u : g.neighbors(v)) a[v][u] = true;
  }
  std::vector<Violation> out;
  for (VertexId v = 0; v < n; ++v) {
    if (c[v] == 0) out.push_back({ViolationKind::Uncolored, v, v, std::nullopt});
  }
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId x = u + 1; x < n; ++x) {
      if (c[u] == 0 || c[u] != c[x]) continue;
      if (mode != Check::PD2 && a[u][x]) out.push_back({ViolationKind::D1Edge, u, x, std::nullopt});
      if (mode == Check::D1) continue;
      for (VertexId w = 0; w < n; ++w) {
        if (a[u][w] && a[w][x]) {
          out.push_back({mode == Check::D2 ? ViolationKind::D2Path : ViolationKind::PD2Path, u, x, w});
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace chroma::oracle
