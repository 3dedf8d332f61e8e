#ifndef SPECTRAL_LAYERS_DECOMPOSITION_HPP
#define SPECTRAL_LAYERS_DECOMPOSITION_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "spectral_layers/layered_graph.hpp"
#include "spectral_layers/sequence.hpp"
#include "spectral_layers/types.hpp"

namespace spectral_layers {

/// One cyclic-subspace restriction of the compressed operator: a symmetric
/// tridiagonal block with diagonal b, positive off-diagonal a, seeded by a
/// unit vector supported on a single sphere. Blocks with identical
/// coefficients are represented once with a multiplicity.
struct JacobiBlock {
  int start_sphere = 0;
  RealVector seed;
  std::vector<double> a;  // length() - 1 entries, strictly positive
  std::vector<double> b;
  int multiplicity = 1;

  std::size_t length() const { return b.size(); }
};

struct Decomposition {
  OperatorKind kind = OperatorKind::laplacian;
  int depth = 0;
  std::vector<JacobiBlock> blocks;

  /// Sum of multiplicity x length over blocks; equals the ball size when the
  /// decomposition is complete.
  std::size_t total_dimension() const;
};

/// Thrown when a growth step leaves span{phi_k, phi_{k-1}}: the input is not
/// path commuting (for the laplacian kinds, not strongly so), or tol is too
/// tight for the arithmetic.
struct ResidualError : std::runtime_error {
  int sphere;
  double residual;

  ResidualError(int at_sphere, double norm);
};

/// The generic constructive algorithm: grow the cyclic subspace of the root
/// delta function, then repeatedly seed the orthocomplement of the first
/// non-exhausted sphere with joint eigenvectors of the commuting sphere
/// operators and grow each seed. Each growth step checks that the operator
/// image stays in span{phi_k, phi_{k-1}} inside the current two spheres and
/// throws ResidualError otherwise.
/// When `sphere_bases` is given it receives, per sphere, the matrix whose
/// columns are every generated basis vector living on that sphere (always
/// square and orthonormal for a valid decomposition).
Decomposition tridiagonalize(const LayeredGraph& g, OperatorKind kind,
                             double tol = 1e-10,
                             std::vector<RealMatrix>* sphere_bases = nullptr);

/// Closed form for antitrees: one symmetric block with
///   laplacian   a_n = sqrt(s_n s_{n+1}),  b_n = s_{n-1} + s_{n+1}  (s_{-1} = 0)
///   adjacency   same a, b = 0
///   normalized  a~_n = a_n / sqrt(b_n b_{n+1}), b = 1
/// plus, for every sphere with s_n >= 2, a scalar block of multiplicity
/// s_n - 1 whose entry is the laplacian b_n (1 for normalized, 0 for
/// adjacency). Truncated at `depth` with the boundary entry taken from the
/// tail value s_{depth+1} (0 when the sequence ends there).
Decomposition antitree_closed_form(const SequenceSpec& s, int depth,
                                   OperatorKind kind);

/// Closed form for trees with complete spheres (laplacian): block 0 carries
/// b0_0 = k_1, b0_n = k_{n+1} + 1, a0_n = sqrt(k_{n+1}); for l >= 1 with
/// m_l = prod_{j<=l} k_j - prod_{j<l} k_j >= 1, a block of multiplicity m_l
/// with a_n = a0_{n+l} and b_n = b0_{n+l} + v_{n+l}, where
/// v_n = gamma_n * prod_{j<=n} k_j.
Decomposition tree_cs_closed_form(const SequenceSpec& k, const SequenceSpec& gamma,
                                  int depth);

/// Exact integer check that on an antitree every sphere function orthogonal
/// to the constants is an eigenfunction of the compressed Laplacian for the
/// eigenvalue s_{n-1} + s_{n+1}. Residuals are computed in int64 arithmetic
/// and must vanish identically.
struct EigenfunctionReport {
  bool pass = true;
  int vectors_checked = 0;
  std::vector<std::pair<int, std::int64_t>> eigenvalues;  // (sphere, value)
};

EigenfunctionReport verify_finitely_supported_eigenfunctions(const LayeredGraph& g);

/// Matches two decompositions up to block order, multiplicity grouping and
/// the sign convention on a. Coefficients are compared pairwise after
/// canonical sorting within each (start sphere, length) group.
struct ReconcileReport {
  bool pass = true;
  double max_deviation = 0.0;
  std::vector<std::string> mismatches;
};

ReconcileReport reconcile(const Decomposition& d1, const Decomposition& d2,
                          double tol);

/// CSV with a block table (block_id,start_sphere,multiplicity,length) followed
/// by a coefficient table (block_id,index,a,b; the last index has no a).
std::string decomposition_csv(const Decomposition& d);

/// First `length` entries of the infinite antitree laplacian coefficient
/// sequences a_n = sqrt(s_n s_{n+1}), b_n = s_{n-1} + s_{n+1}. These are
/// eventually periodic exactly when s is; pairs with
/// detect_eventually_periodic.
std::pair<std::vector<double>, std::vector<double>> antitree_coefficient_sequences(
    const SequenceSpec& s, std::size_t length);

}  // namespace spectral_layers

#endif
