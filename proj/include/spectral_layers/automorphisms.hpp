#ifndef SPECTRAL_LAYERS_AUTOMORPHISMS_HPP
#define SPECTRAL_LAYERS_AUTOMORPHISMS_HPP

#include <optional>
#include <set>
#include <vector>

#include "spectral_layers/layered_graph.hpp"
#include "spectral_layers/types.hpp"

namespace spectral_layers {

/// Rooted graph automorphisms are sphere preserving, so one is stored as a
/// permutation per sphere: perm[n][i] = image of vertex i of S_n.
struct Automorphism {
  std::vector<std::vector<int>> perm;

  VertexId image(VertexId v) const { return {v.sphere, perm[v.sphere][v.index]}; }
  static Automorphism identity(const LayeredGraph& g);
};

/// outer(inner(x))
Automorphism compose(const Automorphism& outer, const Automorphism& inner);
Automorphism inverse(const Automorphism& a);

/// Re-checks a stored witness: block-exact preservation of every E_n and V_n
/// plus the outward degrees.
bool is_rooted_automorphism(const LayeredGraph& g, const Automorphism& a);

struct AutomorphismConstraint {
  std::vector<std::pair<VertexId, VertexId>> required_images;
  std::set<int> pointwise_fixed_spheres;
};

/// Exhaustive backtracking over sphere-preserving permutations. Returns a
/// permutation preserving all blocks and satisfying the constraint, or
/// nullopt when none exists on this ball (absence is a value, not an error).
/// Throws only for malformed constraints (mismatched spheres, out of range).
std::optional<Automorphism> find_rooted_automorphism(
    const LayeredGraph& g, const AutomorphismConstraint& constraint);

/// Sphere-transitivity certificate at the stored depth: for every sphere and
/// every vertex, an automorphism moving the canonical representative onto it.
struct SphericalSymmetryReport {
  bool pass = true;
  int depth = 0;
  std::vector<int> failed_spheres;
  std::optional<std::pair<VertexId, VertexId>> first_failure;
};

SphericalSymmetryReport check_spherically_symmetric(const LayeredGraph& g);

/// The three family-preserving conditions as finite-ball certificates:
/// (i) forward brothers mapped onto each other while spheres above stay
/// pointwise fixed, (ii) backward brothers with spheres below fixed,
/// (iii) intra-sphere neighbors swapped.
struct FamilyPreservingCounterexample {
  int condition;  // 1, 2 or 3
  VertexId x, y;
};

struct FamilyPreservingWitness {
  int condition;
  VertexId x, y;
  Automorphism automorphism;
};

struct FamilyPreservingReport {
  bool pass_i = true, pass_ii = true, pass_iii = true;
  int depth = 0;
  int tested_n_max = 0;
  std::vector<FamilyPreservingCounterexample> counterexamples;
  std::vector<FamilyPreservingWitness> witnesses;  // filled when requested

  bool pass() const { return pass_i && pass_ii && pass_iii; }
};

FamilyPreservingReport check_family_preserving(const LayeredGraph& g, int n_max,
                                               bool store_witnesses = false);

}  // namespace spectral_layers

#endif
