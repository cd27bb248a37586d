#include "chroma/cli.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "chroma/generators.hpp"
#include "chroma/graph_io.hpp"
#include "chroma/verify.hpp"

namespace chroma {
namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

template <class T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ConfigError("bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

void expect_args(std::string_view family, const std::vector<std::string_view>& args,
                 std::size_t min, std::size_t max) {
  if (args.size() < min || args.size() > max) {
    throw ConfigError("generator '" + std::string(family) + "' takes " + std::to_string(min) +
                      (min == max ? "" : " to " + std::to_string(max)) + " arguments");
  }
}

Mode mode_of(const RunConfig& c) { return parse_mode(c.mode); }

std::vector<Violation> verify_for_mode(const Graph& g, const Coloring& c, Mode mode) {
  switch (mode) {
    case Mode::D1:
    case Mode::D1_2GL: return verify_d1(g, c);
    case Mode::D2: return verify_d2(g, c, false);
    case Mode::PD2: return verify_d2(g, c, true);
  }
  return {};
}

// Restricts a PD2 result to the V_s side: paths with both ends there and
// uncolored V_s vertices.
std::vector<Violation> restrict_to_prefix(std::vector<Violation> v, std::size_t prefix) {
  std::erase_if(v, [&](const Violation& x) { return x.a >= prefix || x.b >= prefix; });
  return v;
}

std::string format_violation(const Violation& v) {
  std::ostringstream s;
  s << to_string(v.kind) << ' ' << v.a;
  if (v.kind != ViolationKind::Uncolored) {
    if (v.middle) s << ' ' << *v.middle;
    s << ' ' << v.b;
  }
  return s.str();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::ios_base::failure("cannot write " + path);
  return f;
}

// Options shared by `color` and `bench`.
struct RunOptions {
  std::string graph_path;
  std::string gen;
  std::string partition_file;
  bool bipartite = false;
  std::string recolor = "off";
  RunConfig config;
  unsigned workers = 0;
};

void add_run_options(CLI::App* app, RunOptions& o) {
  o.config.deterministic = false;
  auto* graph = app->add_option("--graph", o.graph_path, "graph file (.mtx, .chrg, edge list)");
  auto* gen = app->add_option("--gen", o.gen, "generator spec, e.g. mesh:16,16,16");
  graph->excludes(gen);
  app->add_flag("--bipartite", o.bipartite, "read --graph as a directed edge list, color its bipartite form");
  app->add_option("--mode", o.config.mode, "d1, d1-2gl, d2 or pd2")
      ->check(CLI::IsMember({"d1", "d1-2gl", "d2", "pd2"}));
  app->add_option("--ranks", o.config.ranks, "simulated rank count")->check(CLI::PositiveNumber);
  app->add_option("--partition", o.config.partition, "block, edge or random")
      ->check(CLI::IsMember({"block", "edge", "random"}));
  app->add_option("--partition-file", o.partition_file, "one owner rank per line");
  app->add_option("--seed", o.config.seed, "partition and generator seed");
  app->add_option("--recolor-degrees", o.recolor, "on or off")->check(CLI::IsMember({"on", "off"}));
  app->add_flag("--deterministic", o.config.deterministic, "sequential local coloring");
  app->add_option("--workers", o.workers, "local coloring threads when not deterministic");
  app->add_option("--eb-threshold", o.config.eb_threshold, "max degree above which edge-based detection is used")
      ->check(CLI::PositiveNumber);
  app->add_flag("--partial-count", o.config.partial_count,
                "pd2: check and count only the V_s side");
}

// Fills the derived fields of o.config once the command line is parsed.
void finalize(RunOptions& o) {
  o.config.recolor_degrees = o.recolor == "on";
  o.config.workers = o.config.deterministic ? 1u : (o.workers > 0 ? o.workers : default_workers());
  if (o.graph_path.empty() == o.gen.empty()) throw ConfigError("give exactly one of --graph or --gen");
}

Problem problem_for(const RunOptions& o, std::uint64_t seed) {
  return o.gen.empty() ? load_problem(o.graph_path, o.bipartite) : generate_problem(o.gen, seed);
}

std::optional<PartitionMap> partition_for(const RunOptions& o, const Problem& p) {
  if (o.partition_file.empty()) return std::nullopt;
  return load_partition(o.partition_file, p.graph.num_vertices(), o.config.ranks);
}

int cmd_color(RunOptions& o, const std::string& out_path, const std::string& colors_path,
              std::ostream& out) {
  finalize(o);
  const Problem problem = problem_for(o, o.config.seed);
  const auto outcome = execute_run(problem, o.config, partition_for(o, problem));
  const auto& rec = outcome.record;
  if (!out_path.empty()) open_out(out_path) << dump_run_record(rec);
  if (!colors_path.empty()) {
    auto f = open_out(colors_path);
    write_colors(outcome.result.colors, f);
  }
  out << "mode=" << rec.config.mode << " ranks=" << rec.config.ranks
      << " rounds=" << rec.rounds.size() << " colors=" << rec.num_colors
      << " proper=" << (rec.proper ? "true" : "false") << '\n';
  return rec.proper ? 0 : 1;
}

int cmd_verify(const std::string& graph_path, const std::string& colors_path,
               const std::string& mode_text, bool bipartite, std::ostream& out) {
  const Problem problem = load_problem(graph_path, bipartite);
  std::ifstream f(colors_path);
  if (!f) throw std::ios_base::failure("cannot read " + colors_path);
  const Coloring colors = read_colors(f);
  const auto violations = verify_for_mode(problem.graph, colors, parse_mode(mode_text));
  const std::size_t shown = std::min<std::size_t>(violations.size(), 20);
  for (std::size_t i = 0; i < shown; ++i) out << format_violation(violations[i]) << '\n';
  if (shown < violations.size()) out << "... " << violations.size() - shown << " more\n";
  out << "violations=" << violations.size() << '\n';
  return violations.empty() ? 0 : 1;
}

std::vector<int> parse_sweep(std::string_view text) {
  constexpr std::string_view prefix = "ranks=";
  if (!text.starts_with(prefix)) throw ConfigError("--sweep must look like ranks=1,2,4");
  std::vector<int> ranks;
  for (auto part : split(text.substr(prefix.size()), ',')) {
    const int r = parse_number<int>(part, "rank count");
    if (r < 1) throw ConfigError("rank counts must be positive");
    ranks.push_back(r);
  }
  return ranks;
}

int cmd_bench(RunOptions& o, const std::string& sweep, unsigned repeat, std::ostream& out) {
  finalize(o);
  const auto ranks = parse_sweep(sweep);
  out << "mode,ranks,seed,rounds,colors,recolored_total,bytes_sent,comm_ms,comp_ms,total_ms\n";
  out << std::fixed << std::setprecision(3);
  int code = 0;
  for (int r : ranks) {
    for (unsigned i = 0; i < repeat; ++i) {
      RunConfig cfg = o.config;
      cfg.ranks = r;
      cfg.seed = o.config.seed + i;
      const Problem problem = problem_for(o, cfg.seed);
      const auto start = std::chrono::steady_clock::now();
      const auto outcome = execute_run(problem, cfg, partition_for(o, problem));
      const double total =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      const auto& rec = outcome.record;
      std::uint64_t recolored = 0;
      std::uint64_t bytes = rec.setup_bytes;
      for (const auto& round : rec.rounds) {
        recolored += round.recolored_total();
        bytes += round.bytes_sent;
      }
      out << rec.config.mode << ',' << r << ',' << cfg.seed << ',' << rec.rounds.size() << ','
          << rec.num_colors << ',' << recolored << ',' << bytes << ',' << rec.times.comm_ms << ','
          << rec.times.color_ms + rec.times.detect_ms << ',' << total << '\n';
      if (!rec.proper) code = 1;
    }
  }
  return code;
}

// Format from the extension: .mtx, .chrg, anything else is an edge list.
int cmd_gen(const std::string& spec, const std::string& out_path, std::uint64_t seed) {
  const auto ext = std::filesystem::path(out_path).extension();
  if (spec.starts_with("dag:") && ext != ".mtx" && ext != ".chrg") {
    // Keep the directed form so it can be read back with --bipartite.
    const auto args = split(std::string_view(spec).substr(4), ',');
    expect_args("dag", args, 2, 3);
    const auto dag = gen_random_dag(parse_number<std::size_t>(args[0], "vertex count"),
                                    parse_number<double>(args[1], "probability"),
                                    args.size() == 3 ? parse_number<std::uint64_t>(args[2], "seed") : seed);
    auto f = open_out(out_path);
    write_edge_list(dag, f);
    return 0;
  }
  const Problem p = generate_problem(spec, seed);
  if (ext == ".chrg") {
    save_csr_binary(p.graph, out_path);
    return 0;
  }
  auto f = open_out(out_path);
  if (ext == ".mtx") {
    write_matrix_market(p.graph, f);
  } else {
    write_edge_list(p.graph, f);
  }
  return 0;
}

}  // namespace

Problem generate_problem(std::string_view spec, std::uint64_t default_seed) {
  const auto colon = spec.find(':');
  const auto family = spec.substr(0, colon);
  const auto args = colon == std::string_view::npos ? std::vector<std::string_view>{}
                                                     : split(spec.substr(colon + 1), ',');
  Problem p;
  p.source = std::string(spec);
  auto size_arg = [&](std::size_t i) { return parse_number<std::size_t>(args[i], "size"); };
  auto seed_arg = [&](std::size_t i) {
    return args.size() > i ? parse_number<std::uint64_t>(args[i], "seed") : default_seed;
  };
  try {
    if (family == "mesh") {
      expect_args(family, args, 3, 3);
      p.graph = gen_hex_mesh(size_arg(0), size_arg(1), size_arg(2));
    } else if (family == "myciel") {
      expect_args(family, args, 1, 1);
      p.graph = gen_mycielskian(parse_number<int>(args[0], "order"));
    } else if (family == "gnp") {
      expect_args(family, args, 2, 3);
      p.graph = gen_random_gnp(size_arg(0), parse_number<double>(args[1], "probability"), seed_arg(2));
    } else if (family == "dag") {
      expect_args(family, args, 2, 3);
      auto b = to_bipartite(
          gen_random_dag(size_arg(0), parse_number<double>(args[1], "probability"), seed_arg(2)));
      p.graph = std::move(b.graph);
      p.num_s = b.num_s;
    } else if (family == "path") {
      expect_args(family, args, 1, 1);
      p.graph = gen_path(size_arg(0));
    } else if (family == "cycle") {
      expect_args(family, args, 1, 1);
      p.graph = gen_cycle(size_arg(0));
    } else if (family == "complete") {
      expect_args(family, args, 1, 1);
      p.graph = gen_complete(size_arg(0));
    } else if (family == "star") {
      expect_args(family, args, 1, 1);
      p.graph = gen_star(size_arg(0));
    } else if (family == "petersen") {
      expect_args(family, args, 0, 0);
      p.graph = gen_petersen();
    } else {
      throw ConfigError("unknown generator '" + std::string(family) + "'");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return p;
}

Problem load_problem(const std::filesystem::path& path, bool bipartite) {
  Problem p;
  p.source = path.string();
  if (bipartite) {
    auto b = to_bipartite(load_directed_edge_list(path).graph);
    p.graph = std::move(b.graph);
    p.num_s = b.num_s;
  } else {
    p.graph = load_graph(path).graph;
  }
  return p;
}

PartitionMap make_partition(const Graph& g, std::string_view kind, int ranks, std::uint64_t seed) {
  if (ranks < 1) throw ConfigError("rank count must be at least 1");
  if (kind == "block") return partition_block(g, ranks);
  if (kind == "edge") return partition_edge_balanced(g, ranks, seed);
  if (kind == "random") return partition_random(g, ranks, seed);
  throw ConfigError("unknown partition '" + std::string(kind) + "'");
}

RunOutcome execute_run(const Problem& problem, const RunConfig& config,
                       const std::optional<PartitionMap>& pm, bool audit_ghosts) {
  const Mode mode = mode_of(config);
  const Graph& g = problem.graph;
  const PartitionMap parts =
      pm ? *pm : make_partition(g, config.partition, config.ranks, config.seed);
  if (parts.num_ranks() != config.ranks || parts.num_vertices() != g.num_vertices()) {
    throw ConfigError("partition does not match graph and rank count");
  }
  const RankWorld world(g, parts, required_ghost_layers(mode));

  AlgorithmConfig alg;
  alg.mode = mode;
  alg.recolor_degrees = config.recolor_degrees;
  alg.eb_threshold = config.eb_threshold;
  alg.deterministic = config.deterministic;
  alg.workers = config.workers;
  alg.audit_ghosts = audit_ghosts;

  RunOutcome outcome;
  outcome.result = run_distributed(world, alg);
  const auto& result = outcome.result;

  auto violations = verify_for_mode(g, result.colors, mode);
  Coloring counted = result.colors;
  if (mode == Mode::PD2 && config.partial_count && problem.num_s) {
    violations = restrict_to_prefix(std::move(violations), *problem.num_s);
    counted.resize(*problem.num_s);
  }

  auto& rec = outcome.record;
  rec.config = config;
  if (rec.config.graph.empty()) rec.config.graph = problem.source;
  rec.graph = stats(g);
  rec.kernel = std::string(to_string(result.kernel.kind));
  rec.rounds = result.rounds;
  rec.setup_bytes = result.setup_comm.bytes;
  rec.num_colors = color_stats(counted).num_colors;
  rec.times = sum_phase_times(result.rounds);
  rec.violations = violations.size();
  rec.proper = violations.empty();
  return outcome;
}

void write_colors(const Coloring& c, std::ostream& out) {
  for (Color x : c) out << x << '\n';
}

Coloring read_colors(std::istream& in) {
  Coloring c;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    Color x{};
    const auto* end = line.data() + line.size();
    const auto [ptr, ec] = std::from_chars(line.data(), end, x);
    if (ec != std::errc{} || ptr != end) throw ParseError("expected a color, got '" + line + "'", line_no);
    c.push_back(x);
  }
  return c;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distributed speculative graph coloring on simulated ranks"};
  app.require_subcommand(1);

  RunOptions color_opts;
  std::string out_path;
  std::string colors_path;
  auto* color = app.add_subcommand("color", "color a graph and report the run");
  add_run_options(color, color_opts);
  color->add_option("--out", out_path, "write the JSON run record here");
  color->add_option("--colors-out", colors_path, "write the final colors here");

  std::string v_graph;
  std::string v_colors;
  std::string v_mode = "d1";
  bool v_bipartite = false;
  auto* verify = app.add_subcommand("verify", "check a coloring file against a graph");
  verify->add_option("--graph", v_graph, "graph file")->required();
  verify->add_option("--colors", v_colors, "colors file, one per line")->required();
  verify->add_option("--mode", v_mode, "d1, d2 or pd2")
      ->check(CLI::IsMember({"d1", "d1-2gl", "d2", "pd2"}));
  verify->add_flag("--bipartite", v_bipartite, "read --graph as a directed edge list");

  RunOptions bench_opts;
  std::string sweep = "ranks=1,2,4,8";
  unsigned repeat = 1;
  auto* bench = app.add_subcommand("bench", "CSV sweep over rank counts");
  add_run_options(bench, bench_opts);
  bench->add_option("--sweep", sweep, "ranks=R1,R2,...");
  bench->add_option("--repeat", repeat, "runs per rank count, seeds seed..seed+N-1")
      ->check(CLI::PositiveNumber);

  std::string g_spec;
  std::string g_out;
  std::uint64_t g_seed = 1;
  auto* gen = app.add_subcommand("gen", "write a generated graph to a file");
  gen->add_option("--gen", g_spec, "generator spec")->required();
  gen->add_option("--out", g_out, "output path; .mtx and .chrg keep vertex ids")->required();
  gen->add_option("--seed", g_seed, "seed when the generator string has none");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*color) return cmd_color(color_opts, out_path, colors_path, out);
    if (*verify) return cmd_verify(v_graph, v_colors, v_mode, v_bipartite, out);
    if (*bench) return cmd_bench(bench_opts, sweep, repeat, out);
    if (*gen) return cmd_gen(g_spec, g_out, g_seed);
  } catch (const NonConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace chroma
