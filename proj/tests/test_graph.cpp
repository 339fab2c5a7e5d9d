#include <doctest.h>

#include <algorithm>
#include <string>

#include "bcert/error.hpp"
#include "bcert/graph.hpp"
#include "test_support.hpp"

using namespace bcert;

namespace {

std::vector<double> sorted_eigenvalues(const Eigen::MatrixXd& m) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  std::vector<double> out(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(out.begin(), out.end());
  return out;
}

std::string torus_edge_list(int m) {
  std::string text = std::to_string(m * m) + "\n";
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      const int v = a * m + b;
      text += std::to_string(v) + " " + std::to_string(((a + 1) % m) * m + b) + "\n";
      text += std::to_string(v) + " " + std::to_string(a * m + (b + 1) % m) + "\n";
    }
  }
  return text;
}

void check_structure(const Graph& g) {
  const auto n = g.vertex_count();
  for (std::size_t u = 0; u < n; ++u) {
    CHECK_FALSE(g.adjacent(u, u));
    int row = 0;
    for (std::size_t v = 0; v < n; ++v) {
      CHECK(g.adjacent(u, v) == g.adjacent(v, u));
      row += g.adjacent(u, v) ? 1 : 0;
    }
    CHECK(row == g.degrees()[u]);
  }
  CHECK(g.max_degree() == *std::max_element(g.degrees().begin(), g.degrees().end()));
  const Eigen::MatrixXd l = laplacian(g).matrix();
  for (Eigen::Index r = 0; r < l.rows(); ++r) CHECK(l.row(r).sum() == 0.0);
  CHECK(l.isApprox(l.transpose()));
}

}  // namespace

TEST_CASE("torus m=3 has 9 vertices of degree 4 and 18 edges") {
  const auto g = Graph::torus(3);
  CHECK(g.vertex_count() == 9);
  CHECK(g.edge_count() == 18);
  for (int d : g.degrees()) CHECK(d == 4);
  check_structure(g);
}

TEST_CASE("torus m=15 is 4-regular on 225 vertices") {
  const auto g = Graph::torus(15);
  CHECK(g.vertex_count() == 225);
  CHECK(g.edge_count() == 450);
  CHECK(std::all_of(g.degrees().begin(), g.degrees().end(), [](int d) { return d == 4; }));
  CHECK(g.adjacent(0, 1));
  CHECK(g.adjacent(0, 14));
  CHECK(g.adjacent(0, 15));
  CHECK(g.adjacent(0, 210));
  CHECK_FALSE(g.adjacent(0, 16));
}

TEST_CASE("torus rejects m < 3") {
  for (int m : {-1, 0, 1, 2}) {
    try {
      Graph::torus(m);
      FAIL("expected rejection");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::invalid_argument);
    }
  }
}

TEST_CASE("torus Laplacian spectrum matches the closed form") {
  const auto m3 = sorted_eigenvalues(laplacian(Graph::torus(3)).matrix());
  const std::vector<double> expected{-6, -6, -6, -6, -3, -3, -3, -3, 0};
  REQUIRE(m3.size() == expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) CHECK(m3[k] == doctest::Approx(expected[k]).epsilon(1e-12));

  for (int m = 4; m <= 8; ++m) {
    auto formula = testing::torus_laplacian_spectrum(m);
    std::sort(formula.begin(), formula.end());
    const auto dense = sorted_eigenvalues(laplacian(Graph::torus(m)).matrix());
    for (std::size_t k = 0; k < formula.size(); ++k) CHECK(std::abs(formula[k] - dense[k]) < 1e-9);
  }
}

TEST_CASE("edge list basics") {
  const auto two = Graph::from_edge_list("2\n0 1");
  CHECK(two.vertex_count() == 2);
  CHECK(two.degrees() == std::vector<int>{1, 1});
  const Eigen::MatrixXd l2 = laplacian(two).matrix();
  CHECK(l2(0, 0) == -1.0);
  CHECK(l2(0, 1) == 1.0);
  CHECK(l2(1, 0) == 1.0);
  CHECK(l2(1, 1) == -1.0);

  const auto one = Graph::from_edge_list("1");
  CHECK(one.vertex_count() == 1);
  CHECK(one.degrees() == std::vector<int>{0});
  CHECK(laplacian(one).matrix()(0, 0) == 0.0);
}

TEST_CASE("edge list comments and blank lines") {
  const auto g = Graph::from_edge_list("# path\n3  # vertices\n\n0 1\n  1 2 # tail\n#\n");
  CHECK(g == testing::path_graph(3));
}

TEST_CASE("torus written as an edge list equals the built-in torus") {
  const auto text = torus_edge_list(3);
  CHECK(Graph::from_edge_list(text) == Graph::torus(3));

  std::string crlf;
  for (char c : text) {
    if (c == '\n') crlf += '\r';
    crlf += c;
  }
  CHECK(Graph::from_edge_list(crlf) == Graph::torus(3));
}

TEST_CASE("duplicate edges are ignored") {
  const auto g = Graph::from_edge_list("3\n0 1\n1 0\n0 1\n1 2\n");
  CHECK(g.edge_count() == 2);
  CHECK(g.degrees() == std::vector<int>{1, 2, 1});
}

TEST_CASE("edge list errors name the line") {
  const auto expect_parse_error = [](const std::string& text, const std::string& fragment) {
    try {
      Graph::from_edge_list(text);
      FAIL("expected parse error for: " << text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::parse);
      CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
  };
  expect_parse_error("3\n0 1\n0 x\n", "line 3");
  expect_parse_error("3\n0 1\n0 3\n", "line 3: vertex index out of range");
  expect_parse_error("3\n1 1\n", "line 2: loop edge");
  expect_parse_error("3\n0 1 2\n", "line 2");
  expect_parse_error("3 4\n", "line 1");
  expect_parse_error("0\n", "line 1");
  expect_parse_error("-2\n", "line 1");
  expect_parse_error("", "empty");
}

TEST_CASE("random graphs satisfy the structural invariants and -L is PSD") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 2 + seed * 3;  // up to 59
    const auto g = testing::random_connected_graph(n, 0.15, seed);
    check_structure(g);
    const auto eig = sorted_eigenvalues(-laplacian(g).matrix());
    CHECK(eig.front() >= -1e-9);
  }
  for (int m = 3; m <= 8; ++m) {
    const auto g = Graph::torus(m);
    check_structure(g);
    CHECK(sorted_eigenvalues(-laplacian(g).matrix()).front() >= -1e-9);
  }
}
