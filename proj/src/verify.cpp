#include "chroma/verify.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "chroma/simd/kernels.hpp"

namespace chroma {
namespace {

void check_size(const Graph& g, const Coloring& c) {
  if (c.size() != g.num_vertices()) {
    throw std::invalid_argument("coloring has " + std::to_string(c.size()) +
                                " entries, graph has " + std::to_string(g.num_vertices()) +
                                " vertices");
  }
}

void report_uncolored(const Coloring& c, std::vector<Violation>& out) {
  for (VertexId v = 0; v < c.size(); ++v) {
    if (c[v] == kUncolored) out.push_back({ViolationKind::Uncolored, v, v, std::nullopt});
  }
}

// Calls fn on every entry of nbrs colored `color`.
template <class Fn>
void for_each_same_color(std::span<const VertexId> nbrs, const Color* colors, Color color,
                         const simd::KernelTable& k, Fn&& fn) {
  std::size_t pos = 0;
  while (pos < nbrs.size()) {
    pos += k.find_color(nbrs.subspan(pos), colors, color);
    if (pos == nbrs.size()) return;
    fn(nbrs[pos]);
    ++pos;
  }
}

class ExactColorer {
 public:
  explicit ExactColorer(const Graph& g) : g_(g), color_(g.num_vertices(), 0) {}

  bool colorable(std::size_t k) {
    k_ = k;
    std::fill(color_.begin(), color_.end(), 0);
    return search(0, 0);
  }

 private:
  // Most saturated uncolored vertex, ties broken by uncolored degree.
  std::optional<VertexId> pick() const {
    std::optional<VertexId> best;
    std::size_t best_sat = 0;
    std::size_t best_deg = 0;
    std::vector<std::uint8_t> seen(k_ + 1);
    for (VertexId v = 0; v < g_.num_vertices(); ++v) {
      if (color_[v] != 0) continue;
      std::fill(seen.begin(), seen.end(), 0);
      std::size_t sat = 0;
      std::size_t deg = 0;
      for (VertexId u : g_.neighbors(v)) {
        if (color_[u] == 0) {
          ++deg;
        } else if (!seen[color_[u]]) {
          seen[color_[u]] = 1;
          ++sat;
        }
      }
      if (!best || sat > best_sat || (sat == best_sat && deg > best_deg)) {
        best = v;
        best_sat = sat;
        best_deg = deg;
      }
    }
    return best;
  }

  bool search(std::size_t colored, std::size_t used) {
    if (colored == g_.num_vertices()) return true;
    const VertexId v = *pick();
    // Colors beyond used+1 are symmetric to used+1.
    const std::size_t limit = std::min(k_, used + 1);
    for (std::size_t c = 1; c <= limit; ++c) {
      bool free = true;
      for (VertexId u : g_.neighbors(v)) {
        if (color_[u] == c) {
          free = false;
          break;
        }
      }
      if (!free) continue;
      color_[v] = static_cast<Color>(c);
      if (search(colored + 1, std::max(used, c))) return true;
      color_[v] = 0;
    }
    return false;
  }

  const Graph& g_;
  std::vector<Color> color_;
  std::size_t k_ = 0;
};

}  // namespace

std::string_view to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::D1Edge: return "d1-edge";
    case ViolationKind::D2Path: return "d2-path";
    case ViolationKind::PD2Path: return "pd2-path";
    case ViolationKind::Uncolored: return "uncolored";
  }
  return "?";
}

std::vector<Violation> verify_d1(const Graph& g, const Coloring& c) {
  check_size(g, c);
  const auto& k = simd::active_kernels();
  std::vector<Violation> out;
  report_uncolored(c, out);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (c[v] == kUncolored) continue;
    for_each_same_color(g.neighbors(v), c.data(), c[v], k, [&](VertexId u) {
      if (u > v) out.push_back({ViolationKind::D1Edge, v, u, std::nullopt});
    });
  }
  return out;
}

std::vector<Violation> verify_d2(const Graph& g, const Coloring& c, bool partial) {
  check_size(g, c);
  const auto& k = simd::active_kernels();
  const auto path_kind = partial ? ViolationKind::PD2Path : ViolationKind::D2Path;
  std::vector<Violation> out;
  report_uncolored(c, out);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (c[v] == kUncolored) continue;
    if (!partial) {
      for_each_same_color(g.neighbors(v), c.data(), c[v], k, [&](VertexId u) {
        if (u > v) out.push_back({ViolationKind::D1Edge, v, u, std::nullopt});
      });
    }
    for (VertexId w : g.neighbors(v)) {
      for_each_same_color(g.neighbors(w), c.data(), c[v], k, [&](VertexId x) {
        if (x > v) out.push_back({path_kind, v, x, w});
      });
    }
  }
  return out;
}

std::size_t chromatic_oracle(const Graph& g, std::size_t max_n) {
  if (g.num_vertices() > max_n) {
    throw std::invalid_argument("chromatic_oracle: " + std::to_string(g.num_vertices()) +
                                " vertices exceeds limit " + std::to_string(max_n));
  }
  if (g.num_vertices() == 0) return 0;
  ExactColorer colorer(g);
  std::size_t k = 1;
  while (!colorer.colorable(k)) ++k;
  return k;
}

ColorStats color_stats(const Coloring& c) {
  ColorStats s;
  for (Color x : c) {
    if (x != kUncolored) ++s.histogram[x];
  }
  s.num_colors = s.histogram.size();
  return s;
}

}  // namespace chroma
