#include "chroma/graph_io.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>

namespace chroma {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool is_comment(std::string_view line) {
  return line.empty() || line.front() == '#' || line.front() == '%';
}

// Parses exactly `count` unsigned integers separated by whitespace.
template <std::size_t N>
bool parse_fields(std::string_view line, std::array<std::uint64_t, N>& out) {
  const char* p = line.data();
  const char* end = p + line.size();
  for (std::size_t i = 0; i < N; ++i) {
    while (p < end && (*p == ' ' || *p == '\t')) ++p;
    auto [next, ec] = std::from_chars(p, end, out[i]);
    if (ec != std::errc{} || next == p) return false;
    p = next;
    if (p < end && *p != ' ' && *p != '\t') return false;
  }
  while (p < end && (*p == ' ' || *p == '\t')) ++p;
  return p == end;
}

struct RawEdges {
  std::vector<Edge> edges;
  std::vector<std::uint64_t> original_ids;
};

RawEdges read_raw_edges(std::istream& in) {
  RawEdges raw;
  std::unordered_map<std::uint64_t, VertexId> compact;
  auto id_of = [&](std::uint64_t external, std::size_t line_no) {
    auto [it, inserted] = compact.try_emplace(external, static_cast<VertexId>(compact.size()));
    if (inserted) {
      if (compact.size() > kMaxVertices) throw ParseError("too many distinct vertices", line_no);
      raw.original_ids.push_back(external);
    }
    return it->second;
  };
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (is_comment(text)) continue;
    std::array<std::uint64_t, 2> f{};
    if (!parse_fields(text, f)) {
      throw ParseError("expected two non-negative integers, got '" + std::string(text) + "'",
                       line_no);
    }
    const VertexId u = id_of(f[0], line_no);
    const VertexId v = id_of(f[1], line_no);
    raw.edges.emplace_back(u, v);
  }
  if (in.bad()) throw ParseError("read failure", line_no);
  if (raw.edges.empty()) throw ParseError("edge list is empty", 0);
  return raw;
}

std::ifstream open_input(const std::filesystem::path& path, std::ios::openmode mode = {}) {
  std::ifstream in(path, std::ios::in | mode);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

template <class T>
void put_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xFF);
  }
  out.write(bytes.data(), bytes.size());
}

template <class T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw ParseError("csr cache truncated", 0);
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= std::uint64_t{bytes[i]} << (8 * i);
  return static_cast<T>(value);
}

constexpr std::string_view kMagic = "CHRG";

}  // namespace

LoadedGraph parse_edge_list(std::istream& in) {
  RawEdges raw = read_raw_edges(in);
  return {preprocess(raw.edges, raw.original_ids.size()), std::move(raw.original_ids)};
}

LoadedDirectedGraph parse_directed_edge_list(std::istream& in) {
  RawEdges raw = read_raw_edges(in);
  return {preprocess_directed(raw.edges, raw.original_ids.size()), std::move(raw.original_ids)};
}

LoadedGraph load_edge_list(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_edge_list(in);
}

LoadedDirectedGraph load_directed_edge_list(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_directed_edge_list(in);
}

LoadedGraph parse_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError("empty matrix market file", 0);
  std::string header;
  for (char ch : line) header.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (trim(header) != "%%matrixmarket matrix coordinate pattern symmetric") {
    throw ParseError("unsupported matrix market header '" + line + "'", line_no);
  }
  bool have_size = false;
  std::uint64_t rows = 0;
  std::uint64_t nnz = 0;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (is_comment(text)) continue;
    if (!have_size) {
      std::array<std::uint64_t, 3> f{};
      if (!parse_fields(text, f)) throw ParseError("bad size line", line_no);
      if (f[0] != f[1]) throw ParseError("symmetric matrix must be square", line_no);
      if (f[0] > kMaxVertices) throw ParseError("matrix too large", line_no);
      rows = f[0];
      nnz = f[2];
      have_size = true;
      edges.reserve(nnz);
      continue;
    }
    std::array<std::uint64_t, 2> f{};
    if (!parse_fields(text, f)) throw ParseError("expected 'row col'", line_no);
    if (f[0] < 1 || f[0] > rows || f[1] < 1 || f[1] > rows) {
      throw ParseError("entry out of range", line_no);
    }
    edges.emplace_back(static_cast<VertexId>(f[0] - 1), static_cast<VertexId>(f[1] - 1));
  }
  if (!have_size) throw ParseError("missing size line", line_no);
  if (edges.size() != nnz) {
    throw ParseError("expected " + std::to_string(nnz) + " entries, found " +
                         std::to_string(edges.size()),
                     line_no);
  }
  LoadedGraph out{preprocess(edges, rows), {}};
  out.original_ids.resize(rows);
  for (std::uint64_t i = 0; i < rows; ++i) out.original_ids[i] = i + 1;
  return out;
}

LoadedGraph load_matrix_market(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_matrix_market(in);
}

LoadedGraph load_graph(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".mtx") return load_matrix_market(path);
  if (ext == ".chrg") {
    LoadedGraph out{load_csr_binary(path), {}};
    out.original_ids.resize(out.graph.num_vertices());
    for (std::size_t i = 0; i < out.original_ids.size(); ++i) out.original_ids[i] = i;
    return out;
  }
  return load_edge_list(path);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    for (VertexId u : g.neighbors(v)) {
      if (v < u) out << v << ' ' << u << '\n';
    }
  }
}

void write_matrix_market(const Graph& g, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate pattern symmetric\n";
  out << g.num_vertices() << ' ' << g.num_vertices() << ' ' << g.num_edges() << '\n';
  // Lower triangle, 1-based.
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    for (VertexId u : g.neighbors(v)) {
      if (u < v) out << v + 1 << ' ' << u + 1 << '\n';
    }
  }
}

void write_edge_list(const DirectedGraph& g, std::ostream& out) {
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    for (VertexId u : g.successors(v)) out << v << ' ' << u << '\n';
  }
}

void write_csr_binary(const Graph& g, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, kCsrCacheVersion);
  put_le<std::uint64_t>(out, g.num_vertices());
  put_le<std::uint64_t>(out, g.num_entries());
  for (auto o : g.offsets()) put_le<std::uint64_t>(out, o);
  for (auto i : g.indices()) put_le<std::uint32_t>(out, i);
}

Graph read_csr_binary(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || std::string_view(magic.data(), magic.size()) != kMagic) {
    throw ParseError("not a CHRG file", 0);
  }
  const auto version = get_le<std::uint32_t>(in);
  if (version != kCsrCacheVersion) {
    throw ParseError("unsupported CHRG version " + std::to_string(version), 0);
  }
  const auto n = get_le<std::uint64_t>(in);
  const auto m = get_le<std::uint64_t>(in);
  if (n > kMaxVertices || m > (std::uint64_t{1} << 40)) throw ParseError("CHRG header out of range", 0);
  std::vector<std::uint64_t> offsets(n + 1);
  for (auto& o : offsets) o = get_le<std::uint64_t>(in);
  std::vector<VertexId> indices(m);
  for (auto& i : indices) i = get_le<std::uint32_t>(in);
  try {
    return Graph(std::move(offsets), std::move(indices));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid CHRG payload: ") + e.what(), 0);
  }
}

void save_csr_binary(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_csr_binary(g, out);
}

Graph load_csr_binary(const std::filesystem::path& path) {
  auto in = open_input(path, std::ios::binary);
  return read_csr_binary(in);
}

}  // namespace chroma
