#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace chroma {

/// Dense vertex index, global (in a Graph) or local (in a LocalGraph).
using VertexId = std::uint32_t;

/// Global vertex identifier shared by every rank.
using Gid = std::uint64_t;

/// Vertex color. Colors start at 1; 0 means uncolored.
using Color = std::uint32_t;

using Rank = std::int32_t;

using Coloring = std::vector<Color>;

inline constexpr Color kUncolored = 0;

// Gather-based kernels index with signed 32-bit lanes.
inline constexpr std::size_t kMaxVertices = std::numeric_limits<std::int32_t>::max();

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A message referenced state the receiving rank does not hold.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace chroma
