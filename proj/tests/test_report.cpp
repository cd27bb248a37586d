#include <doctest.h>

#include "chroma/cli.hpp"
#include "chroma/report.hpp"

using namespace chroma;

namespace {

RunConfig mesh_config(const std::string& mode) {
  RunConfig c;
  c.mode = mode;
  c.ranks = 4;
  c.partition = "edge";
  c.seed = 3;
  c.recolor_degrees = true;
  return c;
}

}  // namespace

TEST_CASE("run record JSON round trip") {
  const auto problem = generate_problem("mesh:6,6,6", 1);
  const auto outcome = execute_run(problem, mesh_config("d1"));
  const auto text = dump_run_record(outcome.record);
  const auto parsed = nlohmann::json::parse(text);
  CHECK(dump_run_record(run_record_from_json(parsed)) == text);
  CHECK(parsed.dump(2) + "\n" == text);

  const auto untimed = dump_run_record(outcome.record, false);
  CHECK(untimed.find("_ms") == std::string::npos);
  CHECK(dump_run_record(run_record_from_json(nlohmann::json::parse(untimed)), false) == untimed);
}

TEST_CASE("run record content") {
  const auto problem = generate_problem("mesh:6,6,6", 1);
  const auto outcome = execute_run(problem, mesh_config("d2"));
  const auto j = to_json(outcome.record);
  CHECK(j["config"]["mode"] == "d2");
  CHECK(j["config"]["ranks"] == 4);
  CHECK(j["graph"]["num_vertices"] == 216);
  CHECK(j["graph"]["delta_max"] == 6);
  CHECK(j["kernel"] == "net-based-d2");
  CHECK(j["verification"]["proper"] == true);
  CHECK(j["num_rounds"] == j["rounds"].size());
  CHECK(j["rounds"].back()["conflicts"] == 0);
  CHECK(j.contains("times"));
}

TEST_CASE("timing-free records are identical across repeated runs") {
  const auto problem = generate_problem("gnp:200,0.05,4", 1);
  for (const char* mode : {"d1", "d1-2gl", "d2", "pd2"}) {
    const auto a = execute_run(problem, mesh_config(mode));
    const auto b = execute_run(problem, mesh_config(mode));
    CHECK(dump_run_record(a.record, false) == dump_run_record(b.record, false));
  }
}

TEST_CASE("malformed records are rejected") {
  CHECK_THROWS(run_record_from_json(nlohmann::json::parse("{}")));
  CHECK_THROWS(run_record_from_json(nlohmann::json::parse(R"({"config": 3})")));
}

TEST_CASE("phase time sums") {
  std::vector<RoundReport> rounds(2);
  rounds[0].color_ms = 1.0;
  rounds[1].comm_ms = 2.0;
  rounds[1].detect_ms = 0.5;
  const auto t = sum_phase_times(rounds);
  CHECK(t.color_ms == 1.0);
  CHECK(t.comm_ms == 2.0);
  CHECK(t.total_ms == doctest::Approx(3.5));
}
