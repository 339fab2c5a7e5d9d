#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace bcert {

// Simple undirected graph with dense 0/1 adjacency. Immutable once built.
class Graph {
 public:
  // 4-regular discrete torus, the Cayley graph of (Z/mZ)^2 with generators
  // (+-1,0),(0,+-1). Vertex (a,b) has index a*m + b. Requires m >= 3.
  static Graph torus(int m);

  // Parses the edge-list text format: first line "n", then one "u v" per
  // line. Duplicate edges are ignored; loops and out-of-range vertices are
  // parse errors that name the offending line.
  static Graph from_edge_list(std::string_view text);

  // Builds from an explicit edge set; same validation as from_edge_list.
  static Graph from_edges(std::size_t n,
                          const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_; }
  bool adjacent(std::size_t u, std::size_t v) const { return adjacency_[u * n_ + v] != 0; }
  const std::vector<int>& degrees() const noexcept { return degrees_; }
  int max_degree() const noexcept;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  explicit Graph(std::size_t n);
  void add_edge(std::size_t u, std::size_t v);

  std::size_t n_ = 0;
  std::size_t edges_ = 0;
  std::vector<std::uint8_t> adjacency_;
  std::vector<int> degrees_;
};

// Graph Laplacian A - D_G as a dense symmetric matrix. Rows sum to zero and
// -Laplacian is positive semidefinite.
class Laplacian {
 public:
  explicit Laplacian(const Graph& g);

  std::size_t size() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }

 private:
  Eigen::MatrixXd matrix_;
};

inline Laplacian laplacian(const Graph& g) { return Laplacian(g); }

}  // namespace bcert

namespace bcert {

// Reads and parses an edge-list file. I/O failures raise ErrorCode::io.
Graph load_edge_list_file(const std::string& path);

}  // namespace bcert
