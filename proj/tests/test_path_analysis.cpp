#include <stdexcept>

#include "doctest.h"
#include "spectral_layers/fixtures.hpp"
#include "spectral_layers/path_analysis.hpp"

using namespace spectral_layers;

namespace {

LayeredGraph small_antitree() {
  return build_antitree(SequenceSpec({1}, std::vector<std::int64_t>{2}), 2);
}

constexpr auto kPlus = LambdaKind::Direction::plus;
constexpr auto kMinus = LambdaKind::Direction::minus;

}  // namespace

TEST_CASE("lambda operators on the (1,2,2) antitree") {
  LayeredGraph g = small_antitree();
  IntMatrix expected(2, 2);
  expected << 2, 2, 2, 2;
  CHECK(lambda(g, {kPlus, 1, 1}) == expected);
  IntMatrix ones(2, 2);
  ones << 1, 1, 1, 1;
  CHECK(lambda(g, {kMinus, 1, 1}) == ones);
}

TEST_CASE("lambda minus beyond the root is the identity by convention") {
  LayeredGraph g = small_antitree();
  CHECK(lambda(g, {kMinus, 1, 2}) == IntMatrix::Identity(2, 2));
  CHECK(lambda(g, {kMinus, 0, 1}) == IntMatrix::Identity(1, 1));
  // the path-count matrix itself is zero: no backward path passes the root
  CHECK(backward_path_matrix(g, 1, 2).isZero());
}

TEST_CASE("lambda plus past the stored depth is an error") {
  LayeredGraph g = small_antitree();
  CHECK_THROWS_AS(lambda(g, {kPlus, 1, 2}), std::out_of_range);
  CHECK_NOTHROW(lambda(g, {kPlus, 0, 2}));
}

TEST_CASE("lambda operators are symmetric and positive semidefinite") {
  LayeredGraph g = fig4b(2);
  for (int n = 1; n <= 3; ++n)
    for (int j = 1; n + j <= g.depth(); ++j) {
      IntMatrix plus = lambda(g, {kPlus, n, j});
      CHECK(plus == plus.transpose().eval());
      // PSD because it is a Gram matrix U^T U; spot-check diagonal dominance of spectrum
      Eigen::SelfAdjointEigenSolver<RealMatrix> es(plus.cast<double>());
      CHECK(es.eigenvalues().minCoeff() >= -1e-12);
    }
}

TEST_CASE("antitree forward-backward counts") {
  LayeredGraph g = small_antitree();
  for (CountMethod method : {CountMethod::matrix, CountMethod::enumerate}) {
    CHECK(count_paths(g, PathSpecies::forward_backward, 1, 1, {1, 0}, {1, 1},
                      method) == 4);
    CHECK(count_paths(g, PathSpecies::backward_forward, 1, 1, {1, 0}, {1, 1},
                      method) == 4);
  }
}

TEST_CASE("fig3a count asymmetry") {
  LayeredGraph g = fig3a();
  const VertexId v2{2, 0}, v3{2, 1};
  for (CountMethod method : {CountMethod::matrix, CountMethod::enumerate}) {
    CHECK(count_paths(g, PathSpecies::forward_backward, 1, 1, v2, v3, method) == 1);
    CHECK(count_paths(g, PathSpecies::backward_forward, 1, 1, v2, v3, method) == 2);
  }
}

TEST_CASE("trees have no tailed or headed paths") {
  LayeredGraph g = fig3a();
  for (int k = 0; k <= 1; ++k) {
    CHECK(count_paths(g, PathSpecies::tailed_forward, k, 0, {2, 0}, {2, 1},
                      CountMethod::matrix) == 0);
    CHECK(count_paths(g, PathSpecies::headed_forward, k, 0, {2, 0}, {2, 1},
                      CountMethod::enumerate) == 0);
    CHECK(count_paths(g, PathSpecies::tailed_backward, k, 0, {2, 0}, {2, 1},
                      CountMethod::matrix) == 0);
  }
}

TEST_CASE("count preconditions") {
  LayeredGraph g = small_antitree();
  CHECK_THROWS_AS(count_paths(g, PathSpecies::forward_backward, 1, 1, {1, 0}, {2, 0},
                              CountMethod::matrix),
                  std::invalid_argument);
  CHECK_THROWS_AS(count_paths(g, PathSpecies::forward_backward, 2, 0, {1, 0}, {1, 1},
                              CountMethod::matrix),
                  std::out_of_range);
  CHECK_THROWS_AS(count_paths(g, PathSpecies::tailed_forward, 1, 1, {1, 0}, {1, 1},
                              CountMethod::matrix),
                  std::invalid_argument);
}

TEST_CASE("matrix and enumeration methods agree across species") {
  std::vector<LayeredGraph> graphs;
  graphs.push_back(build_tree_complete_spheres(
      SequenceSpec({}, std::vector<std::int64_t>{2}),
      SequenceSpec({}, std::vector<std::int64_t>{1}), 4));
  graphs.push_back(fig4b(1));
  graphs.push_back(fig5(2));
  for (const LayeredGraph& g : graphs) {
    for (int n = 1; n <= std::min(2, g.depth()); ++n) {
      const int x_count = std::min(3, g.sphere_size(n));
      for (int xi = 0; xi < x_count; ++xi)
        for (int yi = 0; yi < x_count; ++yi) {
          VertexId x{n, xi}, y{n, yi};
          for (int k = 0; k <= 2 && n + k <= g.depth(); ++k) {
            for (int l = 0; l <= 2; ++l) {
              CHECK(count_paths(g, PathSpecies::forward_backward, k, l, x, y,
                                CountMethod::matrix) ==
                    count_paths(g, PathSpecies::forward_backward, k, l, x, y,
                                CountMethod::enumerate));
              CHECK(count_paths(g, PathSpecies::backward_forward, l, k, x, y,
                                CountMethod::matrix) ==
                    count_paths(g, PathSpecies::backward_forward, l, k, x, y,
                                CountMethod::enumerate));
            }
            for (PathSpecies s : {PathSpecies::tailed_forward, PathSpecies::headed_forward})
              CHECK(count_paths(g, s, k, 0, x, y, CountMethod::matrix) ==
                    count_paths(g, s, k, 0, x, y, CountMethod::enumerate));
            for (PathSpecies s : {PathSpecies::tailed_backward, PathSpecies::headed_backward})
              CHECK(count_paths(g, s, k, 0, x, y, CountMethod::matrix) ==
                    count_paths(g, s, k, 0, x, y, CountMethod::enumerate));
          }
        }
    }
  }
}

TEST_CASE("antitrees are path commuting") {
  LayeredGraph g = build_antitree(
      SequenceSpec({1, 2, 3, 2}, std::vector<std::int64_t>{3, 2}), 6);
  PathCommutingReport report = check_path_commuting(g, 3, 3);
  CHECK(report.pass);
  CHECK(report.violations.empty());
}

TEST_CASE("fig3a fails path commuting with the expected witness") {
  PathCommutingReport report = check_path_commuting(fig3a(), 2, 1);
  REQUIRE_FALSE(report.pass);
  bool found = false;
  for (const PathViolation& v : report.violations) {
    if (v.n == 2 && v.equality == PathEquality::fb_vs_bf && v.k == 1 && v.l == 1 &&
        ((v.lhs == 1 && v.rhs == 2) || (v.lhs == 2 && v.rhs == 1)))
      found = true;
  }
  CHECK(found);
}

TEST_CASE("fig4b fails path commuting at radii (1,1)") {
  PathCommutingReport report = check_path_commuting(fig4b(2), 3, 2);
  REQUIRE_FALSE(report.pass);
  bool at_one_one = false;
  for (const PathViolation& v : report.violations)
    if (v.equality == PathEquality::fb_vs_bf && v.k == 1 && v.l == 1)
      at_one_one = true;
  CHECK(at_one_one);
}

TEST_CASE("fig4a is path commuting but not strongly") {
  LayeredGraph g = fig4a(3);
  CHECK(check_path_commuting(g, 3, 3).pass);
  PathCommutingReport strong = check_strongly_path_commuting(g, 3, 3);
  CHECK_FALSE(strong.pass);
  CHECK(strong.violations.empty());  // the failure is purely degree-based
  REQUIRE_FALSE(strong.degree_violations.empty());
  CHECK(strong.degree_violations.front().n == 3);
}

TEST_CASE("fig5 is strongly path commuting on the ball") {
  LayeredGraph g = fig5(3);
  CHECK(check_strongly_path_commuting(g, 2, 3).pass);
}

TEST_CASE("antitrees and spherically symmetric trees are strongly path commuting") {
  CHECK(check_strongly_path_commuting(
            build_antitree(SequenceSpec({1}, std::vector<std::int64_t>{3, 1, 2}), 6), 3, 3)
            .pass);
  CHECK(check_strongly_path_commuting(
            build_tree_complete_spheres(SequenceSpec({}, std::vector<std::int64_t>{2}),
                                        SequenceSpec({}, std::vector<std::int64_t>{0}), 6),
            3, 3)
            .pass);
}

TEST_CASE("violations are re-checkable through count_paths") {
  PathCommutingReport report = check_path_commuting(fig4b(2), 2, 2);
  REQUIRE_FALSE(report.violations.empty());
  for (std::size_t i = 0; i < std::min<std::size_t>(report.violations.size(), 10); ++i) {
    const PathViolation& v = report.violations[i];
    std::int64_t lhs = 0, rhs = 0;
    switch (v.equality) {
      case PathEquality::fb_vs_bf:
        lhs = count_paths(fig4b(2), PathSpecies::forward_backward, v.k, v.l, v.x, v.y,
                          CountMethod::enumerate);
        rhs = count_paths(fig4b(2), PathSpecies::backward_forward, v.l, v.k, v.x, v.y,
                          CountMethod::enumerate);
        break;
      case PathEquality::tailed_vs_headed_forward:
        lhs = count_paths(fig4b(2), PathSpecies::tailed_forward, v.k, 0, v.x, v.y,
                          CountMethod::enumerate);
        rhs = count_paths(fig4b(2), PathSpecies::headed_forward, v.k, 0, v.x, v.y,
                          CountMethod::enumerate);
        break;
      case PathEquality::tailed_vs_headed_backward:
        lhs = count_paths(fig4b(2), PathSpecies::tailed_backward, v.k, 0, v.x, v.y,
                          CountMethod::enumerate);
        rhs = count_paths(fig4b(2), PathSpecies::headed_backward, v.k, 0, v.x, v.y,
                          CountMethod::enumerate);
        break;
    }
    CHECK(lhs == v.lhs);
    CHECK(rhs == v.rhs);
    CHECK(lhs != rhs);
  }
}

TEST_CASE("clamping out-of-range radii records a warning") {
  PathCommutingReport report = check_path_commuting(fig3a(), 3, 2);
  CHECK_FALSE(report.warnings.empty());
}

TEST_CASE("commuting family on an antitree") {
  LayeredGraph g = build_antitree(SequenceSpec({1}, std::vector<std::int64_t>{2}), 3);
  CommutationReport report = check_commuting_family(g, 1, 2);
  CHECK(report.pass);
  for (const CommutatorEntry& e : report.entries) CHECK(e.max_abs == 0);
}

TEST_CASE("commuting family at the root is trivial") {
  CHECK(check_commuting_family(fig3a(), 0, 2).pass);
}

TEST_CASE("fig3a family does not commute at sphere 2") {
  CommutationReport report = check_commuting_family(fig3a(), 2, 1);
  CHECK_FALSE(report.pass);
}

TEST_CASE("lemma equivalence: path commuting iff commuting family") {
  std::vector<LayeredGraph> graphs;
  graphs.push_back(fig3a());
  graphs.push_back(fig4a(2));
  graphs.push_back(fig4b(2));
  graphs.push_back(build_antitree(SequenceSpec({1}, std::vector<std::int64_t>{2, 3}), 5));
  for (const LayeredGraph& g : graphs) {
    const int k_max = 2;
    const int n_max = g.depth() - k_max;
    bool family_pass = true;
    for (int n = 0; n <= n_max; ++n)
      family_pass = family_pass && check_commuting_family(g, n, k_max).pass;
    CHECK(check_path_commuting(g, n_max, k_max).pass == family_pass);
  }
}
