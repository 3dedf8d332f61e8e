#ifndef SPECTRAL_LAYERS_LAYERED_GRAPH_HPP
#define SPECTRAL_LAYERS_LAYERED_GRAPH_HPP

#include <cstdint>
#include <vector>

#include "spectral_layers/sequence.hpp"
#include "spectral_layers/types.hpp"

namespace spectral_layers {

/// A rooted graph stored sphere by sphere: sphere sizes s_0..s_N with
/// s_0 = 1, cross-sphere incidence blocks E_n (s_{n+1} x s_n, entry (i,j) = 1
/// when vertex j of S_n is joined to vertex i of S_{n+1}), intra-sphere
/// adjacency blocks V_n (symmetric, zero diagonal), and for each vertex of
/// the outermost sphere the number of its neighbors in S_{N+1} of the
/// ambient graph (0 when the graph genuinely ends).
///
/// Immutable after construction; the constructor validates every invariant
/// (root sphere of size 1, V_0 = 0, 0/1 entries, symmetry, and connectivity:
/// every vertex of S_{n+1} has at least one neighbor in S_n).
class LayeredGraph {
 public:
  LayeredGraph(std::vector<int> sphere_sizes,
               std::vector<IntMatrix> cross_blocks,
               std::vector<IntMatrix> intra_blocks,
               std::vector<std::int64_t> outward_degrees);

  int depth() const { return static_cast<int>(sphere_sizes_.size()) - 1; }
  int sphere_size(int n) const { return sphere_sizes_[n]; }
  const std::vector<int>& sphere_sizes() const { return sphere_sizes_; }
  int total_size() const { return total_size_; }

  const IntMatrix& cross_block(int n) const;  // E_n, 0 <= n <= depth-1
  const IntMatrix& intra_block(int n) const;  // V_n, 0 <= n <= depth
  const std::vector<std::int64_t>& outward_degrees() const { return outward_degrees_; }

  /// Ambient degree: backward + intra + forward neighbors, where the forward
  /// count at the outermost sphere comes from outward_degrees.
  std::int64_t degree(VertexId v) const;
  IntVector sphere_degrees(int n) const;

  int flat_index(VertexId v) const;  // sphere-major vertex order
  VertexId vertex_at(int flat) const;

  bool is_antitree() const;

 private:
  std::vector<int> sphere_sizes_;
  std::vector<IntMatrix> cross_blocks_;
  std::vector<IntMatrix> intra_blocks_;
  std::vector<std::int64_t> outward_degrees_;
  std::vector<int> sphere_offsets_;
  int total_size_ = 0;
};

/// Incremental construction helper used by parsers, fixtures and tests.
class LayeredGraphBuilder {
 public:
  explicit LayeredGraphBuilder(std::vector<int> sphere_sizes);

  /// Edge between vertex `lower` of S_n and vertex `upper` of S_{n+1}.
  LayeredGraphBuilder& cross_edge(int n, int upper, int lower);
  /// Edge inside S_n between distinct vertices i and j (stored symmetrized).
  LayeredGraphBuilder& intra_edge(int n, int i, int j);
  LayeredGraphBuilder& outward(int vertex, std::int64_t degree);

  LayeredGraph build() const;

 private:
  std::vector<int> sphere_sizes_;
  std::vector<IntMatrix> cross_blocks_;
  std::vector<IntMatrix> intra_blocks_;
  std::vector<std::int64_t> outward_degrees_;
};

/// Antitree ball of the given depth: every vertex of S_n joined to all of
/// S_{n-1} and S_{n+1}, nothing inside a sphere. s must give s_0 = 1 and
/// s_n >= 1 up to `depth`; if s is exhausted at exactly depth+1 the graph
/// ends there (outward degrees 0), while exhaustion earlier is an error.
LayeredGraph build_antitree(const SequenceSpec& s, int depth);

/// The graph G(k, gamma): spherically symmetric tree with branching numbers
/// k_1, k_2, ... (vertex i of S_{n+1} attaches to parent floor(i / k_{n+1})),
/// with S_n turned into a complete graph whenever gamma_n = 1.
LayeredGraph build_tree_complete_spheres(const SequenceSpec& k,
                                         const SequenceSpec& gamma, int depth);

/// Compression of the ambient operator to the ball: block tridiagonal in
/// sphere-major order. Degrees include the outward contributions at the
/// boundary sphere, so the direct-sum spectral identity is exact at finite
/// depth. The normalized kind is the symmetric form I - D^{-1/2} A D^{-1/2}
/// and rejects zero-degree vertices.
RealMatrix compress_operator(const LayeredGraph& g, OperatorKind kind);

/// Integer-exact variant for adjacency and laplacian kinds.
IntMatrix compress_operator_integer(const LayeredGraph& g, OperatorKind kind);

}  // namespace spectral_layers

#endif
