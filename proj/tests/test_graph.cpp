#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "chroma/generators.hpp"
#include "chroma/graph.hpp"
#include "chroma/graph_io.hpp"

using namespace chroma;

namespace {

// Every row sorted, unique, loop free, and mirrored.
bool csr_valid(const Graph& g) {
  const auto off = g.offsets();
  if (off.front() != 0 || off.back() != g.indices().size()) return false;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (off[v] > off[v + 1]) return false;
    const auto row = g.neighbors(v);
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] == v || row[i] >= g.num_vertices()) return false;
      if (i > 0 && row[i - 1] >= row[i]) return false;
      if (!g.has_edge(row[i], v)) return false;
    }
  }
  return true;
}

std::size_t mesh_edges_by_enumeration(std::size_t nx, std::size_t ny, std::size_t nz) {
  std::size_t count = 0;
  for (std::size_t z = 0; z < nz; ++z)
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t x = 0; x < nx; ++x) {
        count += (x + 1 < nx) + (y + 1 < ny) + (z + 1 < nz);
      }
  return count;
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("edge list loading") {
  std::istringstream p3("0 1\n1 2\n");
  const auto g = parse_edge_list(p3).graph;
  CHECK(g.num_vertices() == 3);
  CHECK(g.num_edges() == 2);

  std::istringstream dup("0 1\n1 0\n0 0\n");
  const auto single = parse_edge_list(dup).graph;
  CHECK(single.num_vertices() == 2);
  CHECK(single.num_edges() == 1);
  CHECK(single.has_edge(0, 1));
}

TEST_CASE("edge list ids are compacted by first appearance") {
  std::istringstream in("# comment\n% other comment\n10 7\n7 3\n");
  const auto loaded = parse_edge_list(in);
  CHECK(loaded.original_ids == std::vector<std::uint64_t>{10, 7, 3});
  CHECK(loaded.graph.has_edge(0, 1));
  CHECK(loaded.graph.has_edge(1, 2));
  CHECK_FALSE(loaded.graph.has_edge(0, 2));
}

TEST_CASE("edge list errors carry the line number") {
  std::istringstream bad("0 1\n# fine\n2 x\n");
  try {
    parse_edge_list(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::istringstream empty("# nothing here\n");
  CHECK_THROWS_AS(parse_edge_list(empty), ParseError);
  CHECK_THROWS(load_edge_list("/nonexistent/graph.txt"));
}

TEST_CASE("directed edge list keeps arcs and self loops") {
  std::istringstream in("0 1\n1 1\n0 1\n");
  const auto d = parse_directed_edge_list(in).graph;
  CHECK(d.num_arcs() == 2);
  CHECK(d.successors(1).size() == 1);
  CHECK(d.successors(1)[0] == 1);
}

TEST_CASE("preprocess removes duplicates and loops") {
  const std::vector<Edge> raw{{0, 1}, {0, 1}, {1, 1}};
  const auto g = preprocess(raw);
  CHECK(g.num_edges() == 1);
  CHECK(csr_valid(g));

  const auto one_arc = preprocess_directed(std::vector<Edge>{{0, 1}});
  const auto sym = symmetrize(one_arc);
  REQUIRE(sym.neighbors(1).size() == 1);
  CHECK(sym.neighbors(1)[0] == 0);
}

TEST_CASE("preprocess on random multigraphs yields valid CSR") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Edge> raw;
    for (int i = 0; i < 300; ++i) {
      raw.emplace_back(static_cast<VertexId>(rng() % 50), static_cast<VertexId>(rng() % 50));
    }
    const auto g = preprocess(raw, 50);
    CHECK(csr_valid(g));
    CHECK(symmetrize(g) == g);
    CHECK(symmetrize(symmetrize(g)) == symmetrize(g));
    for (auto [u, v] : raw) {
      if (u != v) CHECK(g.has_edge(u, v));
    }
  }
}

TEST_CASE("Graph constructor rejects malformed CSR") {
  CHECK_THROWS_AS(Graph({0, 1, 1}, {1}), std::invalid_argument);        // not symmetric
  CHECK_THROWS_AS(Graph({0, 1, 2}, {0, 1}), std::invalid_argument);     // self loop
  CHECK_THROWS_AS(Graph({0, 2, 3}, {1, 1, 0}), std::invalid_argument);  // duplicate
  CHECK_NOTHROW(Graph({0, 1, 2}, {1, 0}));
}

TEST_CASE("hex mesh") {
  const auto two = gen_hex_mesh(2, 1, 1);
  CHECK(two.num_vertices() == 2);
  CHECK(two.num_edges() == 1);

  CHECK(gen_hex_mesh(3, 3, 3).num_edges() == 54);

  const auto m16 = gen_hex_mesh(16, 16, 16);
  CHECK(m16.num_vertices() == 4096);
  CHECK(stats(m16).delta_max == 6);
  CHECK(csr_valid(m16));

  for (auto [nx, ny, nz] : {std::array<std::size_t, 3>{1, 1, 1}, {4, 3, 2}, {5, 5, 5}, {7, 1, 3}, {2, 9, 4}}) {
    const auto g = gen_hex_mesh(nx, ny, nz);
    CHECK(g.num_edges() == 3 * nx * ny * nz - nx * ny - ny * nz - nx * nz);
    CHECK(g.num_edges() == mesh_edges_by_enumeration(nx, ny, nz));
  }
  CHECK_THROWS_AS(gen_hex_mesh(0, 4, 4), std::invalid_argument);
  CHECK_THROWS_AS(gen_hex_mesh(1u << 20, 1u << 20, 1u << 20), std::invalid_argument);
}

TEST_CASE("mycielskian sizes follow the construction") {
  const auto k2 = gen_mycielskian(2);
  CHECK(k2.num_vertices() == 2);
  CHECK(k2.num_edges() == 1);
  const auto c5 = gen_mycielskian(3);
  CHECK(c5.num_vertices() == 5);
  CHECK(c5.num_edges() == 5);
  for (VertexId v = 0; v < 5; ++v) CHECK(c5.degree(v) == 2);

  // One step maps (n, m) to (2n+1, 3m+n).
  std::size_t n = 2;
  std::size_t m = 1;
  for (int k = 3; k <= 9; ++k) {
    m = 3 * m + n;
    n = 2 * n + 1;
    const auto g = gen_mycielskian(k);
    CHECK(g.num_vertices() == n);
    CHECK(g.num_edges() == m);
    CHECK(csr_valid(g));
  }
  CHECK_THROWS(gen_mycielskian(1));
  CHECK_THROWS(gen_mycielskian(13));
}

TEST_CASE("gnp sampler") {
  CHECK(gen_random_gnp(5, 0.0, 1).num_edges() == 0);
  CHECK(gen_random_gnp(5, 0.0, 1).num_vertices() == 5);
  CHECK(gen_random_gnp(5, 1.0, 1) == gen_complete(5));
  CHECK(gen_random_gnp(100, 0.1, 7) == gen_random_gnp(100, 0.1, 7));
  CHECK_FALSE(gen_random_gnp(100, 0.1, 7) == gen_random_gnp(100, 0.1, 8));
  CHECK(csr_valid(gen_random_gnp(200, 0.05, 3)));
}

TEST_CASE("fixed families") {
  CHECK(gen_path(100).num_edges() == 99);
  CHECK(gen_cycle(5).num_edges() == 5);
  CHECK(gen_complete(10).num_edges() == 45);
  const auto star = gen_star(20);
  CHECK(star.degree(0) == 20);
  const auto pet = gen_petersen();
  CHECK(pet.num_vertices() == 10);
  CHECK(pet.num_edges() == 15);
  for (VertexId v = 0; v < 10; ++v) CHECK(pet.degree(v) == 3);
}

TEST_CASE("stats") {
  const auto k4 = stats(gen_complete(4));
  CHECK(k4.num_vertices == 4);
  CHECK(k4.num_edges == 6);
  CHECK(k4.delta_avg == doctest::Approx(3.0));
  CHECK(k4.delta_max == 3);

  const auto star = stats(gen_star(9));
  CHECK(star.delta_max == 9);
  CHECK(star.delta_avg == doctest::Approx(1.8));

  const auto empty = stats(Graph{});
  CHECK(empty.num_vertices == 0);
  CHECK(empty.delta_avg == 0.0);
}

TEST_CASE("bipartite representation") {
  const auto one = to_bipartite(preprocess_directed(std::vector<Edge>{{0, 1}}));
  CHECK(one.num_s == 2);
  CHECK(one.num_t == 2);
  CHECK(one.graph.num_edges() == 1);
  CHECK(one.graph.has_edge(one.s(0), one.t(1)));

  const auto two_cycle = to_bipartite(preprocess_directed(std::vector<Edge>{{0, 1}, {1, 0}}));
  CHECK(two_cycle.graph.num_edges() == 2);
  CHECK(two_cycle.graph.has_edge(two_cycle.s(0), two_cycle.t(1)));
  CHECK(two_cycle.graph.has_edge(two_cycle.s(1), two_cycle.t(0)));

  // Directed C3 is a perfect matching s_v - t_{v+1}.
  const auto dc3 = to_bipartite(preprocess_directed(std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}}));
  CHECK(dc3.graph.num_edges() == 3);
  for (VertexId v = 0; v < 3; ++v) CHECK(dc3.graph.has_edge(dc3.s(v), dc3.t((v + 1) % 3)));

  // Symmetric C3 becomes a 6-cycle: connected, 2-regular, 6 vertices.
  const auto c3 = to_bipartite(
      preprocess_directed(std::vector<Edge>{{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 0}, {0, 2}}));
  CHECK(c3.graph.num_vertices() == 6);
  CHECK(c3.graph.num_edges() == 6);
  for (VertexId v = 0; v < 6; ++v) CHECK(c3.graph.degree(v) == 2);
  std::vector<bool> seen(6, false);
  std::vector<VertexId> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (VertexId u : c3.graph.neighbors(v)) {
      CHECK((v < 3) != (u < 3));
      if (!seen[u]) {
        seen[u] = true;
        stack.push_back(u);
      }
    }
  }
  CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));

  // A diagonal entry survives as the edge (s_v, t_v).
  const auto diag = to_bipartite(preprocess_directed(std::vector<Edge>{{0, 0}}));
  CHECK(diag.graph.has_edge(diag.s(0), diag.t(0)));
}

TEST_CASE("matrix market") {
  std::istringstream in(
      "%%MatrixMarket matrix coordinate pattern symmetric\n% c\n4 4 3\n2 1\n3 2\n4 3\n");
  const auto g = parse_matrix_market(in).graph;
  CHECK(g == gen_path(4));

  std::istringstream bad_header("%%MatrixMarket matrix coordinate real general\n1 1 0\n");
  CHECK_THROWS_AS(parse_matrix_market(bad_header), ParseError);
  std::istringstream short_body("%%MatrixMarket matrix coordinate pattern symmetric\n3 3 2\n2 1\n");
  CHECK_THROWS_AS(parse_matrix_market(short_body), ParseError);

  // Isolated vertices and ids survive a write/read cycle.
  const auto sparse = preprocess(std::vector<Edge>{{0, 5}, {2, 3}}, 8);
  std::stringstream buf;
  write_matrix_market(sparse, buf);
  CHECK(parse_matrix_market(buf).graph == sparse);
}

TEST_CASE("edge list write/read") {
  const auto g = gen_petersen();
  const auto path = temp_file("chroma_petersen.txt", "");
  {
    std::ofstream f(path);
    write_edge_list(g, f);
  }
  const auto back = load_graph(path);
  CHECK(back.graph.num_edges() == g.num_edges());
  // Relabel through original ids and compare edge sets.
  for (VertexId v = 0; v < back.graph.num_vertices(); ++v) {
    for (VertexId u : back.graph.neighbors(v)) {
      CHECK(g.has_edge(static_cast<VertexId>(back.original_ids[v]),
                       static_cast<VertexId>(back.original_ids[u])));
    }
  }
}

TEST_CASE("binary CSR cache") {
  const auto g = gen_random_gnp(150, 0.05, 9);
  std::stringstream buf;
  write_csr_binary(g, buf);
  const std::string bytes = buf.str();
  CHECK(bytes.substr(0, 4) == "CHRG");
  CHECK(bytes.size() == 4 + 4 + 8 + 8 + 8 * (g.num_vertices() + 1) + 4 * g.num_entries());
  // Version field is little-endian 1.
  CHECK(bytes[4] == 1);
  CHECK(bytes[5] == 0);
  std::istringstream in(bytes);
  CHECK(read_csr_binary(in) == g);

  std::string corrupt = bytes;
  corrupt[0] = 'X';
  std::istringstream bad(corrupt);
  CHECK_THROWS(read_csr_binary(bad));
  std::istringstream truncated(bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS(read_csr_binary(truncated));

  const auto path = std::filesystem::temp_directory_path() / "chroma_cache.chrg";
  save_csr_binary(g, path);
  CHECK(load_graph(path).graph == g);
}
