#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "chroma/graph.hpp"

namespace chroma {

enum class ViolationKind { D1Edge, D2Path, PD2Path, Uncolored };

std::string_view to_string(ViolationKind k);

/// For edges and paths a < b; `middle` is set only for two-hop paths. An
/// Uncolored violation names one vertex (a == b).
struct Violation {
  ViolationKind kind = ViolationKind::D1Edge;
  VertexId a = 0;
  VertexId b = 0;
  std::optional<VertexId> middle;

  friend bool operator==(const Violation&, const Violation&) = default;
  friend auto operator<=>(const Violation&, const Violation&) = default;
};

/// Empty iff c is a proper distance-1 coloring with no uncolored vertex.
/// Throws std::invalid_argument when c is not sized to g.
std::vector<Violation> verify_d1(const Graph& g, const Coloring& c);

/// Full mode reports equal-colored edges (D1Edge) and two-hop paths
/// (D2Path). Partial mode reports only two-hop paths (PD2Path). Each path
/// u-w-x with u < x is reported once per middle vertex w.
std::vector<Violation> verify_d2(const Graph& g, const Coloring& c, bool partial);

/// Exact chromatic number by DSATUR-ordered backtracking. Throws
/// std::invalid_argument when g has more than max_n vertices.
std::size_t chromatic_oracle(const Graph& g, std::size_t max_n = 12);

struct ColorStats {
  std::size_t num_colors = 0;
  std::map<Color, std::size_t> histogram;  // nonzero colors only

  friend bool operator==(const ColorStats&, const ColorStats&) = default;
};

ColorStats color_stats(const Coloring& c);

}  // namespace chroma
