#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "chroma/graph.hpp"
#include "chroma/protocol.hpp"

namespace chroma {

/// Echo of the options a run was started with.
struct RunConfig {
  std::string graph;  // file path or generator spec
  std::string mode = "d1";
  int ranks = 1;
  std::string partition = "block";
  std::uint64_t seed = 1;
  bool recolor_degrees = false;
  bool deterministic = true;
  unsigned workers = 1;
  std::size_t eb_threshold = 6000;
  bool partial_count = false;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

struct PhaseTimes {
  double color_ms = 0.0;
  double comm_ms = 0.0;
  double detect_ms = 0.0;
  double total_ms = 0.0;

  friend bool operator==(const PhaseTimes&, const PhaseTimes&) = default;
};

/// Everything one `color` run reports. Timing fields are the only
/// nondeterministic part.
struct RunRecord {
  RunConfig config;
  GraphStats graph;
  std::string kernel;
  std::vector<RoundReport> rounds;
  std::uint64_t setup_bytes = 0;
  std::size_t num_colors = 0;
  PhaseTimes times;
  bool proper = false;
  std::size_t violations = 0;
};

PhaseTimes sum_phase_times(const std::vector<RoundReport>& rounds);

nlohmann::json to_json(const RunRecord& r, bool include_timings = true);
/// Missing timing fields read as zero. Throws nlohmann::json::exception on
/// missing or mistyped fields.
RunRecord run_record_from_json(const nlohmann::json& j);

/// Two-space indented JSON with a trailing newline.
std::string dump_run_record(const RunRecord& r, bool include_timings = true);

}  // namespace chroma
