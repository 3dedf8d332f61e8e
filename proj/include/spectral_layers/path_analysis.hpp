#ifndef SPECTRAL_LAYERS_PATH_ANALYSIS_HPP
#define SPECTRAL_LAYERS_PATH_ANALYSIS_HPP

#include <string>
#include <vector>

#include "spectral_layers/layered_graph.hpp"
#include "spectral_layers/types.hpp"

namespace spectral_layers {

/// The sphere operators built from incidence chains. With
/// U = E_{n+j-1} ... E_{n+1} E_n (j upward steps from S_n),
///   lambda(plus, n, j)  = U^T U          (requires n + j <= depth),
///   lambda(minus, n, j) = M M^T  with  M = E_{n-1} E_{n-2} ... E_{n-j},
/// and lambda(minus, n, j) = Id when j > n or n = 0.
struct LambdaKind {
  enum class Direction { plus, minus };
  Direction direction;
  int n;
  int j;
};

IntMatrix lambda(const LayeredGraph& g, LambdaKind kind);

/// Entry (y, x) counts k-forward (resp. k-backward) paths from x to y in S_n.
/// radius 0 is the identity; backward radius > n has no paths (zero matrix).
IntMatrix forward_path_matrix(const LayeredGraph& g, int n, int radius);
IntMatrix backward_path_matrix(const LayeredGraph& g, int n, int radius);

/// Intra-sphere adjacency conjugated through the incidence chains:
/// U^T V_{n+r} U and M V_{n-r} M^T. These commute with the matching lambda
/// on path commuting graphs; radius 0 gives V_n itself.
IntMatrix forward_intra_conjugate(const LayeredGraph& g, int n, int radius);
IntMatrix backward_intra_conjugate(const LayeredGraph& g, int n, int radius);

enum class PathSpecies {
  forward_backward,  // k-forward then l-backward
  backward_forward,  // l-backward then k-forward
  tailed_forward,    // k-forward then one intra-sphere step
  headed_forward,    // one intra-sphere step then k-forward
  tailed_backward,
  headed_backward,
};

enum class CountMethod { matrix, enumerate };

/// Number of paths of the given species from x to y (same sphere). radius1 is
/// the first executed leg's radius, radius2 the second's (0 for the one-leg
/// species). The matrix method evaluates inner products of the operators
/// above; the enumerate method walks every path explicitly.
std::int64_t count_paths(const LayeredGraph& g, PathSpecies species, int radius1,
                         int radius2, VertexId x, VertexId y, CountMethod method);

enum class PathEquality { fb_vs_bf, tailed_vs_headed_forward, tailed_vs_headed_backward };

struct PathViolation {
  int n;
  PathEquality equality;
  int k;
  int l;  // 0 for the tailed/headed equalities
  VertexId x, y;
  std::int64_t lhs, rhs;
};

struct DegreeViolation {
  int n;
  VertexId x, y;
  std::int64_t deg_x, deg_y;
};

/// Finite-depth certificate: checks the defining path-count equalities for
/// all spheres n <= n_max, radii k, l <= k_max and all vertex pairs. Radii
/// whose sphere profile leaves the stored ball are skipped with a warning.
struct PathCommutingReport {
  bool pass = true;
  int tested_n_max = 0;
  int tested_k_max = 0;
  std::vector<PathViolation> violations;
  std::vector<DegreeViolation> degree_violations;  // strong check only
  std::vector<std::string> warnings;
};

PathCommutingReport check_path_commuting(const LayeredGraph& g, int n_max, int k_max);
PathCommutingReport check_strongly_path_commuting(const LayeredGraph& g, int n_max,
                                                  int k_max);

struct CommutatorEntry {
  std::string lhs, rhs;
  std::int64_t max_abs;  // max-norm of the commutator, 0 when they commute
};

struct CommutationReport {
  bool pass = true;
  int n = 0;
  int j_max = 0;
  std::vector<CommutatorEntry> entries;
};

/// Exact integer check that {V_n, lambda(plus, n, j), lambda(minus, n, j)}
/// commute pairwise at sphere n, plus the conjugated-intra commutators.
CommutationReport check_commuting_family(const LayeredGraph& g, int n, int j_max);

}  // namespace spectral_layers

#endif
