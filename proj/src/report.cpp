#include "chroma/report.hpp"

namespace chroma {

using nlohmann::json;

namespace {

json round_to_json(const RoundReport& r, bool timings) {
  json j = {
      {"round", r.round},
      {"conflicts", r.conflicts},
      {"recolored", r.recolored},
      {"bytes_sent", r.bytes_sent},
      {"messages_sent", r.messages_sent},
      {"ghost_mismatches", r.ghost_mismatches},
  };
  if (timings) {
    j["color_ms"] = r.color_ms;
    j["comm_ms"] = r.comm_ms;
    j["detect_ms"] = r.detect_ms;
  }
  return j;
}

RoundReport round_from_json(const json& j) {
  RoundReport r;
  j.at("round").get_to(r.round);
  j.at("conflicts").get_to(r.conflicts);
  j.at("recolored").get_to(r.recolored);
  j.at("bytes_sent").get_to(r.bytes_sent);
  j.at("messages_sent").get_to(r.messages_sent);
  j.at("ghost_mismatches").get_to(r.ghost_mismatches);
  r.color_ms = j.value("color_ms", 0.0);
  r.comm_ms = j.value("comm_ms", 0.0);
  r.detect_ms = j.value("detect_ms", 0.0);
  return r;
}

}  // namespace

PhaseTimes sum_phase_times(const std::vector<RoundReport>& rounds) {
  PhaseTimes t;
  for (const auto& r : rounds) {
    t.color_ms += r.color_ms;
    t.comm_ms += r.comm_ms;
    t.detect_ms += r.detect_ms;
  }
  t.total_ms = t.color_ms + t.comm_ms + t.detect_ms;
  return t;
}

json to_json(const RunRecord& r, bool include_timings) {
  const auto& c = r.config;
  json j;
  j["config"] = {
      {"graph", c.graph},
      {"mode", c.mode},
      {"ranks", c.ranks},
      {"partition", c.partition},
      {"seed", c.seed},
      {"recolor_degrees", c.recolor_degrees},
      {"deterministic", c.deterministic},
      {"workers", c.workers},
      {"eb_threshold", c.eb_threshold},
      {"partial_count", c.partial_count},
  };
  j["graph"] = {
      {"num_vertices", r.graph.num_vertices},
      {"num_edges", r.graph.num_edges},
      {"delta_avg", r.graph.delta_avg},
      {"delta_max", r.graph.delta_max},
  };
  j["kernel"] = r.kernel;
  j["rounds"] = json::array();
  for (const auto& round : r.rounds) j["rounds"].push_back(round_to_json(round, include_timings));
  j["num_rounds"] = r.rounds.size();
  j["setup_bytes"] = r.setup_bytes;
  j["num_colors"] = r.num_colors;
  if (include_timings) {
    j["times"] = {
        {"color_ms", r.times.color_ms},
        {"comm_ms", r.times.comm_ms},
        {"detect_ms", r.times.detect_ms},
        {"total_ms", r.times.total_ms},
    };
  }
  j["verification"] = {{"proper", r.proper}, {"violations", r.violations}};
  return j;
}

RunRecord run_record_from_json(const json& j) {
  RunRecord r;
  const auto& c = j.at("config");
  c.at("graph").get_to(r.config.graph);
  c.at("mode").get_to(r.config.mode);
  c.at("ranks").get_to(r.config.ranks);
  c.at("partition").get_to(r.config.partition);
  c.at("seed").get_to(r.config.seed);
  c.at("recolor_degrees").get_to(r.config.recolor_degrees);
  c.at("deterministic").get_to(r.config.deterministic);
  c.at("workers").get_to(r.config.workers);
  c.at("eb_threshold").get_to(r.config.eb_threshold);
  c.at("partial_count").get_to(r.config.partial_count);
  const auto& g = j.at("graph");
  g.at("num_vertices").get_to(r.graph.num_vertices);
  g.at("num_edges").get_to(r.graph.num_edges);
  g.at("delta_avg").get_to(r.graph.delta_avg);
  g.at("delta_max").get_to(r.graph.delta_max);
  j.at("kernel").get_to(r.kernel);
  for (const auto& round : j.at("rounds")) r.rounds.push_back(round_from_json(round));
  j.at("setup_bytes").get_to(r.setup_bytes);
  j.at("num_colors").get_to(r.num_colors);
  if (j.contains("times")) {
    const auto& t = j.at("times");
    t.at("color_ms").get_to(r.times.color_ms);
    t.at("comm_ms").get_to(r.times.comm_ms);
    t.at("detect_ms").get_to(r.times.detect_ms);
    t.at("total_ms").get_to(r.times.total_ms);
  }
  const auto& v = j.at("verification");
  v.at("proper").get_to(r.proper);
  v.at("violations").get_to(r.violations);
  return r;
}

std::string dump_run_record(const RunRecord& r, bool include_timings) {
  return to_json(r, include_timings).dump(2) + "\n";
}

}  // namespace chroma
