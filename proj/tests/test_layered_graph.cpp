#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "spectral_layers/fixtures.hpp"
#include "spectral_layers/layered_graph.hpp"

using namespace spectral_layers;

namespace {

// Independent dense oracle for everything spectral in this file.
RealVector dense_eigenvalues(const RealMatrix& m) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(m);
  return es.eigenvalues();
}

}  // namespace

TEST_CASE("antitree construction") {
  LayeredGraph g = build_antitree(SequenceSpec({1}, std::vector<std::int64_t>{2, 2}), 2);
  CHECK(g.depth() == 2);
  CHECK(g.sphere_sizes() == std::vector<int>{1, 2, 2});
  CHECK(g.cross_block(0) == IntMatrix::Ones(2, 1));
  CHECK(g.cross_block(1) == IntMatrix::Ones(2, 2));
  CHECK(g.intra_block(1).isZero());
  CHECK(g.outward_degrees() == std::vector<std::int64_t>{2, 2});
}

TEST_CASE("antitree tail evaluation") {
  LayeredGraph g = build_antitree(
      SequenceSpec({1, 2, 3, 2}, std::vector<std::int64_t>{3, 2}), 3);
  CHECK(g.sphere_sizes() == std::vector<int>{1, 2, 3, 2});
  for (std::int64_t d : g.outward_degrees()) CHECK(d == 3);
}

TEST_CASE("antitree error cases") {
  CHECK_THROWS_AS(build_antitree(SequenceSpec({1, 2}), 3), std::out_of_range);
  CHECK_THROWS_AS(build_antitree(SequenceSpec({2}, std::vector<std::int64_t>{2}), 2),
                  std::invalid_argument);  // s_0 != 1
}

TEST_CASE("antitree ending exactly at the boundary is a closed ball") {
  LayeredGraph g = build_antitree(SequenceSpec({1, 2, 1}), 2);
  CHECK(g.outward_degrees() == std::vector<std::int64_t>{0});
}

TEST_CASE("tree with complete spheres") {
  SequenceSpec k({}, std::vector<std::int64_t>{2});
  LayeredGraph g = build_tree_complete_spheres(k, SequenceSpec({}, std::vector<std::int64_t>{1}), 2);
  CHECK(g.sphere_sizes() == std::vector<int>{1, 2, 4});
  IntMatrix v1(2, 2);
  v1 << 0, 1, 1, 0;
  CHECK(g.intra_block(1) == v1);
  CHECK(g.intra_block(2).sum() == 4 * 3);  // complete graph on 4 vertices
  CHECK(g.degree({2, 0}) == 1 + 3 + 2);    // parent + sphere + outward k_3
}

TEST_CASE("plain tree has no intra edges") {
  SequenceSpec k({}, std::vector<std::int64_t>{2});
  LayeredGraph g = build_tree_complete_spheres(k, SequenceSpec({}, std::vector<std::int64_t>{0}), 2);
  for (int n = 0; n <= 2; ++n) CHECK(g.intra_block(n).isZero());
  // parent rule: vertex i of S_{n+1} attaches to floor(i / k)
  CHECK(g.cross_block(1)(0, 0) == 1);
  CHECK(g.cross_block(1)(1, 0) == 1);
  CHECK(g.cross_block(1)(2, 1) == 1);
  CHECK(g.cross_block(1)(3, 1) == 1);
}

TEST_CASE("branching one gives identity incidence") {
  SequenceSpec k({0, 3}, std::vector<std::int64_t>{1});  // k_1 = 3, k_n = 1 after
  LayeredGraph g = build_tree_complete_spheres(k, SequenceSpec({}, std::vector<std::int64_t>{0}), 2);
  CHECK(g.sphere_sizes() == std::vector<int>{1, 3, 3});
  CHECK(g.cross_block(1) == IntMatrix::Identity(3, 3));
}

TEST_CASE("tree error cases") {
  SequenceSpec k({}, std::vector<std::int64_t>{2});
  CHECK_THROWS_AS(
      build_tree_complete_spheres(k, SequenceSpec({}, std::vector<std::int64_t>{2}), 2),
      std::invalid_argument);  // gamma outside {0,1}
  CHECK_THROWS_AS(
      build_tree_complete_spheres(SequenceSpec({0, 2}), SequenceSpec({}, std::vector<std::int64_t>{0}), 3),
      std::out_of_range);  // k exhausted
}

TEST_CASE("gamma zero equals zeroed intra blocks with identical skeleton") {
  SequenceSpec k({0, 3, 2}, std::vector<std::int64_t>{2});
  LayeredGraph with = build_tree_complete_spheres(k, SequenceSpec({}, std::vector<std::int64_t>{1}), 3);
  LayeredGraph without = build_tree_complete_spheres(k, SequenceSpec({}, std::vector<std::int64_t>{0}), 3);
  std::int64_t expected_size = 1;
  for (int n = 0; n <= 3; ++n) {
    if (n > 0) expected_size *= k.value_at(n);
    CHECK(with.sphere_size(n) == expected_size);  // s_n = prod k_j exactly
    CHECK(without.intra_block(n).isZero());
    if (n < 3) CHECK(with.cross_block(n) == without.cross_block(n));
  }
}

TEST_CASE("compressed laplacian of the closed (1,2,1) antitree is the 4-cycle") {
  LayeredGraph g = build_antitree(SequenceSpec({1, 2, 1}), 2);
  RealMatrix lap = compress_operator(g, OperatorKind::laplacian);
  RealVector eigs = dense_eigenvalues(lap);
  REQUIRE(eigs.size() == 4);
  CHECK(std::abs(eigs[0]) < 1e-9);
  CHECK(eigs[1] == doctest::Approx(2.0));
  CHECK(eigs[2] == doctest::Approx(2.0));
  CHECK(eigs[3] == doctest::Approx(4.0));
}

TEST_CASE("single root compressions") {
  LayeredGraph g = build_antitree(SequenceSpec({1}), 0);
  CHECK(compress_operator(g, OperatorKind::adjacency).isZero());
  CHECK(compress_operator(g, OperatorKind::laplacian).isZero());
  CHECK_THROWS_AS(compress_operator(g, OperatorKind::normalized),
                  std::invalid_argument);  // zero-degree vertex
}

TEST_CASE("boundary degrees include outward contributions") {
  LayeredGraph g = build_antitree(SequenceSpec({1, 2}, std::vector<std::int64_t>{2}), 1);
  RealMatrix lap = compress_operator(g, OperatorKind::laplacian);
  CHECK(lap(0, 0) == 2.0);  // root
  CHECK(lap(1, 1) == 3.0);  // 1 + outward 2
  CHECK(lap(2, 2) == 3.0);
}

TEST_CASE("laplacian equals degree diagonal minus adjacency") {
  for (const std::string& name : fixture_names()) {
    LayeredGraph g = fixture_by_name(name);
    IntMatrix adj = compress_operator_integer(g, OperatorKind::adjacency);
    IntMatrix lap = compress_operator_integer(g, OperatorKind::laplacian);
    IntMatrix diff = lap + adj;
    for (int flat = 0; flat < g.total_size(); ++flat) {
      CHECK(diff(flat, flat) == g.degree(g.vertex_at(flat)));
      diff(flat, flat) = 0;
    }
    CHECK(diff.isZero());
  }
}

TEST_CASE("compressed laplacians are positive semidefinite") {
  std::vector<LayeredGraph> graphs;
  graphs.push_back(build_antitree(SequenceSpec({1}, std::vector<std::int64_t>{2, 3}), 5));
  graphs.push_back(build_tree_complete_spheres(
      SequenceSpec({}, std::vector<std::int64_t>{2}),
      SequenceSpec({}, std::vector<std::int64_t>{1}), 4));
  for (const std::string& name : fixture_names())
    graphs.push_back(fixture_by_name(name));
  for (const LayeredGraph& g : graphs) {
    RealVector eigs = dense_eigenvalues(compress_operator(g, OperatorKind::laplacian));
    CHECK(eigs.minCoeff() >= -1e-9);
  }
}

TEST_CASE("normalized compression is symmetric with unit diagonal") {
  LayeredGraph g = build_antitree(SequenceSpec({1}, std::vector<std::int64_t>{2, 3}), 3);
  RealMatrix norm = compress_operator(g, OperatorKind::normalized);
  CHECK((norm - norm.transpose()).cwiseAbs().maxCoeff() == 0.0);
  for (int i = 0; i < norm.rows(); ++i) CHECK(norm(i, i) == doctest::Approx(1.0));
}

TEST_CASE("degree formula matches row and column sums") {
  LayeredGraph g = fig5(2);
  for (int n = 0; n <= g.depth(); ++n)
    for (int i = 0; i < g.sphere_size(n); ++i) {
      // vertex i of S_n is row i of E_{n-1} and column i of E_n
      std::int64_t expected = g.intra_block(n).row(i).sum();
      if (n > 0) expected += g.cross_block(n - 1).row(i).sum();
      expected += n < g.depth() ? g.cross_block(n).col(i).sum()
                                : g.outward_degrees()[i];
      CHECK(g.degree({n, i}) == expected);
    }
}

TEST_CASE("graph validation rejects bad blocks") {
  // disconnected vertex of S_1
  CHECK_THROWS_WITH_AS(
      LayeredGraph({1, 2}, {IntMatrix::Zero(2, 1)},
                   {IntMatrix::Zero(1, 1), IntMatrix::Zero(2, 2)}, {0, 0}),
      doctest::Contains("disconnected"), std::invalid_argument);
  // self loop at the root
  IntMatrix loop = IntMatrix::Ones(1, 1);
  CHECK_THROWS_AS(LayeredGraph({1}, {}, {loop}, {0}), std::invalid_argument);
}
