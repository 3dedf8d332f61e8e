#include <stdexcept>

#include "doctest.h"
#include "spectral_layers/automorphisms.hpp"
#include "spectral_layers/fixtures.hpp"
#include "spectral_layers/path_analysis.hpp"

using namespace spectral_layers;

TEST_CASE("antitree sphere swap") {
  LayeredGraph g = build_antitree(SequenceSpec({1}, std::vector<std::int64_t>{2}), 2);
  AutomorphismConstraint c;
  c.required_images.push_back({{1, 0}, {1, 1}});
  auto found = find_rooted_automorphism(g, c);
  REQUIRE(found.has_value());
  CHECK(found->perm[1] == std::vector<int>{1, 0});
  CHECK(is_rooted_automorphism(g, *found));
}

TEST_CASE("fig3a has no automorphism moving v2 to v3") {
  AutomorphismConstraint c;
  c.required_images.push_back({{2, 0}, {2, 1}});
  CHECK_FALSE(find_rooted_automorphism(fig3a(), c).has_value());
}

TEST_CASE("empty and identity constraints give the identity") {
  LayeredGraph g = fig4b(1);
  auto unconstrained = find_rooted_automorphism(g, {});
  REQUIRE(unconstrained.has_value());
  CHECK(unconstrained->perm == Automorphism::identity(g).perm);

  AutomorphismConstraint ident;
  for (int n = 0; n <= g.depth(); ++n)
    for (int i = 0; i < g.sphere_size(n); ++i)
      ident.required_images.push_back({{n, i}, {n, i}});
  auto forced = find_rooted_automorphism(g, ident);
  REQUIRE(forced.has_value());
  CHECK(forced->perm == Automorphism::identity(g).perm);
}

TEST_CASE("malformed constraints throw") {
  LayeredGraph g = fig3a();
  AutomorphismConstraint c;
  c.required_images.push_back({{1, 0}, {2, 0}});
  CHECK_THROWS_AS(find_rooted_automorphism(g, c), std::invalid_argument);
}

TEST_CASE("pointwise fixed spheres are honored") {
  LayeredGraph g = build_antitree(SequenceSpec({1}, std::vector<std::int64_t>{2}), 3);
  AutomorphismConstraint c;
  c.required_images.push_back({{1, 0}, {1, 1}});
  c.pointwise_fixed_spheres = {2, 3};
  auto found = find_rooted_automorphism(g, c);
  REQUIRE(found.has_value());
  CHECK(found->perm[2] == std::vector<int>{0, 1});
  CHECK(found->perm[3] == std::vector<int>{0, 1});
}

TEST_CASE("composition closure") {
  LayeredGraph g = build_antitree(SequenceSpec({1}, std::vector<std::int64_t>{3}), 3);
  AutomorphismConstraint c1, c2;
  c1.required_images.push_back({{1, 0}, {1, 1}});
  c2.required_images.push_back({{2, 0}, {2, 2}});
  auto t1 = find_rooted_automorphism(g, c1);
  auto t2 = find_rooted_automorphism(g, c2);
  REQUIRE(t1.has_value());
  REQUIRE(t2.has_value());
  Automorphism composed = compose(*t2, *t1);
  CHECK(is_rooted_automorphism(g, composed));
  AutomorphismConstraint from_composed;
  for (int n = 0; n <= g.depth(); ++n)
    for (int i = 0; i < g.sphere_size(n); ++i)
      from_composed.required_images.push_back(
          {{n, i}, composed.image({n, i})});
  CHECK(find_rooted_automorphism(g, from_composed).has_value());
  CHECK(is_rooted_automorphism(g, inverse(composed)));
}

TEST_CASE("spherical symmetry verdicts for the figure fixtures") {
  SphericalSymmetryReport fail = check_spherically_symmetric(fig4a(2));
  CHECK_FALSE(fail.pass);
  REQUIRE(fail.first_failure.has_value());
  CHECK(fail.first_failure->first == VertexId{3, 0});   // v4
  CHECK(fail.first_failure->second == VertexId{3, 1});  // v5

  CHECK(check_spherically_symmetric(fig4b(2)).pass);
  CHECK(check_spherically_symmetric(fig5(2)).pass);
  CHECK_FALSE(check_spherically_symmetric(fig3a()).pass);
  CHECK(check_spherically_symmetric(fig3b()).pass);
}

TEST_CASE("antitrees are spherically symmetric") {
  LayeredGraph g = build_antitree(SequenceSpec({1}, std::vector<std::int64_t>{3, 2}), 4);
  CHECK(check_spherically_symmetric(g).pass);
}

TEST_CASE("family preserving: antitrees and trees with complete spheres pass") {
  LayeredGraph antitree =
      build_antitree(SequenceSpec({1}, std::vector<std::int64_t>{2, 3}), 4);
  FamilyPreservingReport a = check_family_preserving(antitree, 3);
  CHECK(a.pass());

  LayeredGraph tree_cs = build_tree_complete_spheres(
      SequenceSpec({}, std::vector<std::int64_t>{2}),
      SequenceSpec({}, std::vector<std::int64_t>{1}), 4);
  FamilyPreservingReport t = check_family_preserving(tree_cs, 3);
  CHECK(t.pass());
}

TEST_CASE("fig5 is not family preserving") {
  FamilyPreservingReport report = check_family_preserving(fig5(2), 2);
  CHECK_FALSE(report.pass());
  REQUIRE_FALSE(report.counterexamples.empty());
}

TEST_CASE("witnesses re-apply exactly") {
  LayeredGraph g = build_tree_complete_spheres(
      SequenceSpec({}, std::vector<std::int64_t>{2}),
      SequenceSpec({}, std::vector<std::int64_t>{1}), 3);
  FamilyPreservingReport report = check_family_preserving(g, 2, true);
  REQUIRE(report.pass());
  REQUIRE_FALSE(report.witnesses.empty());
  for (const FamilyPreservingWitness& w : report.witnesses) {
    CHECK(is_rooted_automorphism(g, w.automorphism));
    CHECK(w.automorphism.image(w.x) == w.y);
    if (w.condition == 1)
      for (int m = w.x.sphere + 1; m <= g.depth(); ++m)
        for (int i = 0; i < g.sphere_size(m); ++i)
          CHECK(w.automorphism.perm[m][i] == i);
    if (w.condition == 2)
      for (int m = 0; m < w.x.sphere; ++m)
        for (int i = 0; i < g.sphere_size(m); ++i)
          CHECK(w.automorphism.perm[m][i] == i);
    if (w.condition == 3) CHECK(w.automorphism.image(w.y) == w.x);
  }
}

TEST_CASE("family preserving implies strongly path commuting and spherical symmetry") {
  std::vector<LayeredGraph> fixtures;
  fixtures.push_back(build_antitree(SequenceSpec({1}, std::vector<std::int64_t>{2, 3}), 4));
  fixtures.push_back(build_antitree(SequenceSpec({1, 3}, std::vector<std::int64_t>{1, 2}), 4));
  fixtures.push_back(build_tree_complete_spheres(
      SequenceSpec({}, std::vector<std::int64_t>{2}),
      SequenceSpec({}, std::vector<std::int64_t>{1}), 4));
  fixtures.push_back(build_tree_complete_spheres(
      SequenceSpec({0, 3}, std::vector<std::int64_t>{1}),
      SequenceSpec({}, std::vector<std::int64_t>{1, 0}), 4));
  for (const LayeredGraph& g : fixtures) {
    FamilyPreservingReport fp = check_family_preserving(g, g.depth() - 1);
    REQUIRE(fp.pass());
    const int k_max = 2;
    CHECK(check_strongly_path_commuting(g, g.depth() - k_max, k_max).pass);
    CHECK(check_spherically_symmetric(g).pass);
  }
}

TEST_CASE("path commuting trees are exactly the spherically symmetric trees") {
  std::vector<LayeredGraph> trees;
  trees.push_back(fig3a());
  trees.push_back(fig3b());
  trees.push_back(build_tree_complete_spheres(
      SequenceSpec({}, std::vector<std::int64_t>{2}),
      SequenceSpec({}, std::vector<std::int64_t>{0}), 4));
  trees.push_back(build_tree_complete_spheres(
      SequenceSpec({0, 3, 1}, std::vector<std::int64_t>{2}),
      SequenceSpec({}, std::vector<std::int64_t>{0}), 4));
  for (const LayeredGraph& g : trees) {
    // n_max = depth-1 so the witness spheres are covered; radii clamp at depth
    bool pc = check_path_commuting(g, g.depth() - 1, 2).pass;
    bool ss = check_spherically_symmetric(g).pass;
    CHECK(pc == ss);
  }
}
