#include <stdexcept>

#include "doctest.h"
#include "spectral_layers/fixtures.hpp"
#include "spectral_layers/lgf.hpp"

using namespace spectral_layers;

TEST_CASE("parse a two-edge fork") {
  LayeredGraph g = parse_lgf(
      "spheres 1 2\ncross 0 0 0\ncross 0 1 0\noutdeg 0 0\noutdeg 1 0\n");
  CHECK(g.depth() == 1);
  CHECK(g.sphere_size(1) == 2);
  CHECK(g.cross_block(0) == IntMatrix::Ones(2, 1));
  CHECK(g.outward_degrees() == std::vector<std::int64_t>{0, 0});
}

TEST_CASE("comments and blank lines are ignored") {
  LayeredGraph g = parse_lgf(
      "# fork\n\nspheres 1 2   # sizes\ncross 0 0 0\ncross 0 1 0\n");
  CHECK(g.total_size() == 3);
}

TEST_CASE("self loop is rejected with its line number") {
  CHECK_THROWS_WITH_AS(
      parse_lgf("spheres 1 2\ncross 0 0 0\ncross 0 1 0\nintra 1 0 0\n"),
      doctest::Contains("line 4: self loop"), std::runtime_error);
}

TEST_CASE("disconnected vertex is rejected") {
  CHECK_THROWS_WITH_AS(parse_lgf("spheres 1 2\ncross 0 0 0\n"),
                       doctest::Contains("disconnected"), std::runtime_error);
}

TEST_CASE("malformed input") {
  CHECK_THROWS_WITH_AS(parse_lgf("spheres 1 1\ncross 0 0\n"),
                       doctest::Contains("line 2"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_lgf("spheres 1 1\nedge 0 0 0\n"),
                       doctest::Contains("unknown keyword"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_lgf("cross 0 0 0\n"),
                       doctest::Contains("spheres line must come first"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_lgf("spheres 1 2\ncross 0 5 0\n"),
                       doctest::Contains("out of range"), std::runtime_error);
  CHECK_THROWS_AS(parse_lgf(""), std::runtime_error);
}

TEST_CASE("canonical serialization is sorted and complete") {
  LayeredGraph g = parse_lgf(
      "spheres 1 2\ncross 0 1 0\ncross 0 0 0\nintra 1 1 0\noutdeg 1 4\n");
  CHECK(serialize_lgf(g) ==
        "spheres 1 2\n"
        "cross 0 0 0\n"
        "cross 0 1 0\n"
        "intra 1 0 1\n"
        "outdeg 0 0\n"
        "outdeg 1 4\n");
}

TEST_CASE("round trip is the identity on canonical form") {
  for (const std::string& name : fixture_names()) {
    std::string canonical = serialize_lgf(fixture_by_name(name, 2));
    CHECK(normalize_lgf(canonical) == canonical);
  }
  // graphs with intra edges and nonzero outward degrees round-trip too
  LayeredGraph tree = build_tree_complete_spheres(
      SequenceSpec({}, std::vector<std::int64_t>{2}),
      SequenceSpec({}, std::vector<std::int64_t>{1}), 3);
  std::string canonical = serialize_lgf(tree);
  CHECK(normalize_lgf(canonical) == canonical);
  LayeredGraph reparsed = parse_lgf(canonical);
  CHECK(reparsed.intra_block(3) == tree.intra_block(3));
  CHECK(reparsed.outward_degrees() == tree.outward_degrees());
}
