#include "bcert/graph.hpp"

#include <algorithm>
#include <charconv>
#include <string>

#include "bcert/error.hpp"

namespace bcert {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Splits a line into whitespace-separated unsigned decimal fields.
bool parse_fields(std::string_view line, std::vector<std::size_t>& out) {
  out.clear();
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos == line.size()) break;
    std::size_t value = 0;
    const char* first = line.data() + pos;
    const char* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || (ptr != last && *ptr != ' ' && *ptr != '\t')) return false;
    out.push_back(value);
    pos = static_cast<std::size_t>(ptr - line.data());
  }
  return true;
}

[[noreturn]] void parse_error(std::size_t line_no, const std::string& what) {
  fail(ErrorCode::parse, "edge list line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

Graph::Graph(std::size_t n) : n_(n), adjacency_(n * n, 0), degrees_(n, 0) {}

void Graph::add_edge(std::size_t u, std::size_t v) {
  if (adjacency_[u * n_ + v] != 0) return;
  adjacency_[u * n_ + v] = 1;
  adjacency_[v * n_ + u] = 1;
  ++degrees_[u];
  ++degrees_[v];
  ++edges_;
}

int Graph::max_degree() const noexcept {
  return degrees_.empty() ? 0 : *std::max_element(degrees_.begin(), degrees_.end());
}

Graph Graph::torus(int m) {
  if (m < 3) {
    fail(ErrorCode::invalid_argument,
         "torus side must be at least 3 (got " + std::to_string(m) + ")");
  }
  const auto side = static_cast<std::size_t>(m);
  Graph g(side * side);
  for (std::size_t a = 0; a < side; ++a) {
    for (std::size_t b = 0; b < side; ++b) {
      const std::size_t v = a * side + b;
      g.add_edge(v, ((a + 1) % side) * side + b);
      g.add_edge(v, a * side + (b + 1) % side);
    }
  }
  return g;
}

Graph Graph::from_edges(std::size_t n,
                        const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  if (n == 0) fail(ErrorCode::invalid_argument, "graph needs at least one vertex");
  Graph g(n);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) fail(ErrorCode::invalid_argument, "edge endpoint out of range");
    if (u == v) fail(ErrorCode::invalid_argument, "loop edges are not allowed");
    g.add_edge(u, v);
  }
  return g;
}

Graph Graph::from_edge_list(std::string_view text) {
  std::vector<std::size_t> fields;
  std::size_t line_no = 0;
  std::size_t n = 0;
  bool have_header = false;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (!parse_fields(line, fields)) parse_error(line_no, "expected unsigned decimal integers");
    if (!have_header) {
      if (fields.size() != 1) parse_error(line_no, "expected vertex count");
      n = fields[0];
      if (n == 0) parse_error(line_no, "vertex count must be positive");
      have_header = true;
      continue;
    }
    if (fields.size() != 2) parse_error(line_no, "expected two vertex indices");
    const auto u = fields[0];
    const auto v = fields[1];
    if (u >= n || v >= n) parse_error(line_no, "vertex index out of range");
    if (u == v) parse_error(line_no, "loop edge");
    edges.emplace_back(u, v);
  }
  if (!have_header) fail(ErrorCode::parse, "edge list is empty (missing vertex count)");
  return from_edges(n, edges);
}

Laplacian::Laplacian(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  matrix_.resize(n, n);
  for (Eigen::Index u = 0; u < n; ++u) {
    for (Eigen::Index v = 0; v < n; ++v) {
      long entry = g.adjacent(static_cast<std::size_t>(u), static_cast<std::size_t>(v)) ? 1 : 0;
      if (u == v) entry -= g.degrees()[static_cast<std::size_t>(u)];
      matrix_(u, v) = static_cast<double>(entry);
    }
  }
}

}  // namespace bcert

#include <fstream>
#include <sstream>

namespace bcert {

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open edge list '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(ErrorCode::io, "error reading edge list '" + path + "'");
  return Graph::from_edge_list(buf.str());
}

}  // namespace bcert
