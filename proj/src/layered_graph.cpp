#include "spectral_layers/layered_graph.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spectral_layers {

std::string to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::adjacency: return "adjacency";
    case OperatorKind::laplacian: return "laplacian";
    case OperatorKind::normalized: return "normalized";
  }
  return "?";
}

OperatorKind operator_kind_from_string(const std::string& name) {
  if (name == "adjacency") return OperatorKind::adjacency;
  if (name == "laplacian") return OperatorKind::laplacian;
  if (name == "normalized") return OperatorKind::normalized;
  throw std::invalid_argument("unknown operator kind '" + name + "'");
}

std::string to_string(const VertexId& v) {
  return "(" + std::to_string(v.sphere) + "," + std::to_string(v.index) + ")";
}

namespace {

void require(bool cond, const std::string& message) {
  if (!cond) throw std::invalid_argument(message);
}

bool is_zero_one(const IntMatrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (m(r, c) != 0 && m(r, c) != 1) return false;
  return true;
}

}  // namespace

LayeredGraph::LayeredGraph(std::vector<int> sphere_sizes,
                           std::vector<IntMatrix> cross_blocks,
                           std::vector<IntMatrix> intra_blocks,
                           std::vector<std::int64_t> outward_degrees)
    : sphere_sizes_(std::move(sphere_sizes)),
      cross_blocks_(std::move(cross_blocks)),
      intra_blocks_(std::move(intra_blocks)),
      outward_degrees_(std::move(outward_degrees)) {
  require(!sphere_sizes_.empty(), "layered graph: no spheres");
  require(sphere_sizes_[0] == 1, "layered graph: root sphere must have size 1");
  for (int s : sphere_sizes_) require(s >= 1, "layered graph: empty sphere");

  const int n_spheres = static_cast<int>(sphere_sizes_.size());
  require(static_cast<int>(cross_blocks_.size()) == n_spheres - 1,
          "layered graph: expected one cross block per sphere gap");
  require(static_cast<int>(intra_blocks_.size()) == n_spheres,
          "layered graph: expected one intra block per sphere");
  require(static_cast<int>(outward_degrees_.size()) == sphere_sizes_.back(),
          "layered graph: outward degrees must cover the outermost sphere");

  for (int n = 0; n + 1 < n_spheres; ++n) {
    const IntMatrix& e = cross_blocks_[n];
    require(e.rows() == sphere_sizes_[n + 1] && e.cols() == sphere_sizes_[n],
            "layered graph: cross block " + std::to_string(n) + " has wrong shape");
    require(is_zero_one(e), "layered graph: cross block entries must be 0/1");
    for (Eigen::Index r = 0; r < e.rows(); ++r)
      require(e.row(r).sum() > 0,
              "layered graph: disconnected vertex " +
                  to_string(VertexId{n + 1, static_cast<int>(r)}));
  }
  for (int n = 0; n < n_spheres; ++n) {
    const IntMatrix& v = intra_blocks_[n];
    require(v.rows() == sphere_sizes_[n] && v.cols() == sphere_sizes_[n],
            "layered graph: intra block " + std::to_string(n) + " has wrong shape");
    require(is_zero_one(v), "layered graph: intra block entries must be 0/1");
    require(v == v.transpose().eval(), "layered graph: intra block not symmetric");
    for (Eigen::Index i = 0; i < v.rows(); ++i)
      require(v(i, i) == 0, "layered graph: self loop in sphere " + std::to_string(n));
  }
  for (std::int64_t d : outward_degrees_)
    require(d >= 0, "layered graph: negative outward degree");

  sphere_offsets_.resize(n_spheres);
  for (int n = 0; n < n_spheres; ++n) {
    sphere_offsets_[n] = total_size_;
    total_size_ += sphere_sizes_[n];
  }
}

const IntMatrix& LayeredGraph::cross_block(int n) const {
  if (n < 0 || n >= static_cast<int>(cross_blocks_.size()))
    throw std::out_of_range("cross block index " + std::to_string(n));
  return cross_blocks_[n];
}

const IntMatrix& LayeredGraph::intra_block(int n) const {
  if (n < 0 || n >= static_cast<int>(intra_blocks_.size()))
    throw std::out_of_range("intra block index " + std::to_string(n));
  return intra_blocks_[n];
}

std::int64_t LayeredGraph::degree(VertexId v) const {
  if (v.sphere < 0 || v.sphere > depth() || v.index < 0 ||
      v.index >= sphere_size(v.sphere))
    throw std::out_of_range("vertex " + to_string(v) + " out of range");
  std::int64_t deg = intra_blocks_[v.sphere].row(v.index).sum();
  if (v.sphere > 0) deg += cross_blocks_[v.sphere - 1].row(v.index).sum();
  if (v.sphere < depth())
    deg += cross_blocks_[v.sphere].col(v.index).sum();
  else
    deg += outward_degrees_[v.index];
  return deg;
}

IntVector LayeredGraph::sphere_degrees(int n) const {
  IntVector deg(sphere_size(n));
  for (int i = 0; i < sphere_size(n); ++i) deg[i] = degree({n, i});
  return deg;
}

int LayeredGraph::flat_index(VertexId v) const {
  return sphere_offsets_[v.sphere] + v.index;
}

VertexId LayeredGraph::vertex_at(int flat) const {
  int n = 0;
  while (n < depth() && flat >= sphere_offsets_[n + 1]) ++n;
  return {n, flat - sphere_offsets_[n]};
}

bool LayeredGraph::is_antitree() const {
  for (int n = 0; n <= depth(); ++n)
    if (!intra_blocks_[n].isZero()) return false;
  for (int n = 0; n < depth(); ++n)
    if (cross_blocks_[n].minCoeff() != 1) return false;
  for (std::size_t i = 1; i < outward_degrees_.size(); ++i)
    if (outward_degrees_[i] != outward_degrees_[0]) return false;
  return true;
}

LayeredGraphBuilder::LayeredGraphBuilder(std::vector<int> sphere_sizes)
    : sphere_sizes_(std::move(sphere_sizes)) {
  require(!sphere_sizes_.empty() && sphere_sizes_[0] == 1,
          "builder: need at least the root sphere of size 1");
  for (int s : sphere_sizes_) require(s >= 1, "builder: empty sphere");
  for (std::size_t n = 0; n + 1 < sphere_sizes_.size(); ++n)
    cross_blocks_.push_back(IntMatrix::Zero(sphere_sizes_[n + 1], sphere_sizes_[n]));
  for (int s : sphere_sizes_) intra_blocks_.push_back(IntMatrix::Zero(s, s));
  outward_degrees_.assign(sphere_sizes_.back(), 0);
}

LayeredGraphBuilder& LayeredGraphBuilder::cross_edge(int n, int upper, int lower) {
  require(n >= 0 && n + 1 < static_cast<int>(sphere_sizes_.size()),
          "builder: cross edge sphere out of range");
  require(lower >= 0 && lower < sphere_sizes_[n] && upper >= 0 &&
              upper < sphere_sizes_[n + 1],
          "builder: cross edge vertex out of range");
  cross_blocks_[n](upper, lower) = 1;
  return *this;
}

LayeredGraphBuilder& LayeredGraphBuilder::intra_edge(int n, int i, int j) {
  require(n >= 0 && n < static_cast<int>(sphere_sizes_.size()),
          "builder: intra edge sphere out of range");
  require(i >= 0 && i < sphere_sizes_[n] && j >= 0 && j < sphere_sizes_[n],
          "builder: intra edge vertex out of range");
  require(i != j, "builder: self loop");
  intra_blocks_[n](i, j) = 1;
  intra_blocks_[n](j, i) = 1;
  return *this;
}

LayeredGraphBuilder& LayeredGraphBuilder::outward(int vertex, std::int64_t degree) {
  require(vertex >= 0 && vertex < sphere_sizes_.back(),
          "builder: outward vertex out of range");
  outward_degrees_[vertex] = degree;
  return *this;
}

LayeredGraph LayeredGraphBuilder::build() const {
  return LayeredGraph(sphere_sizes_, cross_blocks_, intra_blocks_, outward_degrees_);
}

namespace {

// Shared boundary rule: exhaustion at exactly depth+1 means the graph ends
// there (missing value read as 0); earlier exhaustion is the caller's error.
std::int64_t boundary_value(const SequenceSpec& seq, int depth) {
  return seq.defined_at(static_cast<std::size_t>(depth) + 1)
             ? seq.value_at(static_cast<std::size_t>(depth) + 1)
             : 0;
}

}  // namespace

LayeredGraph build_antitree(const SequenceSpec& s, int depth) {
  if (depth < 0) throw std::invalid_argument("antitree: negative depth");
  if (s.value_at(0) != 1) throw std::invalid_argument("antitree: s_0 must be 1");
  std::vector<int> sizes(depth + 1);
  for (int n = 0; n <= depth; ++n) {
    std::int64_t v = s.value_at(n);
    if (v < 1)
      throw std::invalid_argument("antitree: sphere " + std::to_string(n) + " empty");
    sizes[n] = static_cast<int>(v);
  }
  std::int64_t outward = boundary_value(s, depth);

  std::vector<IntMatrix> cross, intra;
  for (int n = 0; n < depth; ++n)
    cross.push_back(IntMatrix::Ones(sizes[n + 1], sizes[n]));
  for (int n = 0; n <= depth; ++n) intra.push_back(IntMatrix::Zero(sizes[n], sizes[n]));
  std::vector<std::int64_t> out(sizes[depth], outward);
  return LayeredGraph(std::move(sizes), std::move(cross), std::move(intra),
                      std::move(out));
}

LayeredGraph build_tree_complete_spheres(const SequenceSpec& k,
                                         const SequenceSpec& gamma, int depth) {
  if (depth < 0) throw std::invalid_argument("tree: negative depth");
  std::vector<int> sizes(depth + 1, 1);
  std::vector<std::int64_t> branching(depth + 1, 0);
  for (int n = 1; n <= depth; ++n) {
    branching[n] = k.value_at(n);
    if (branching[n] < 1)
      throw std::invalid_argument("tree: branching number k_" + std::to_string(n) +
                                  " must be >= 1");
    std::int64_t size = static_cast<std::int64_t>(sizes[n - 1]) * branching[n];
    sizes[n] = static_cast<int>(size);
  }
  std::int64_t outward = boundary_value(k, depth);

  std::vector<IntMatrix> cross;
  for (int n = 0; n < depth; ++n) {
    IntMatrix e = IntMatrix::Zero(sizes[n + 1], sizes[n]);
    for (int i = 0; i < sizes[n + 1]; ++i)
      e(i, i / static_cast<int>(branching[n + 1])) = 1;
    cross.push_back(std::move(e));
  }

  std::vector<IntMatrix> intra;
  intra.push_back(IntMatrix::Zero(1, 1));
  for (int n = 1; n <= depth; ++n) {
    std::int64_t g = gamma.value_at(n);
    if (g != 0 && g != 1)
      throw std::invalid_argument("tree: gamma_" + std::to_string(n) +
                                  " must be 0 or 1");
    if (g == 1)
      intra.push_back(IntMatrix::Ones(sizes[n], sizes[n]) -
                      IntMatrix::Identity(sizes[n], sizes[n]));
    else
      intra.push_back(IntMatrix::Zero(sizes[n], sizes[n]));
  }

  std::vector<std::int64_t> out(sizes[depth], outward);
  return LayeredGraph(std::move(sizes), std::move(cross), std::move(intra),
                      std::move(out));
}

IntMatrix compress_operator_integer(const LayeredGraph& g, OperatorKind kind) {
  if (kind == OperatorKind::normalized)
    throw std::invalid_argument("integer compression needs adjacency or laplacian");
  const int total = g.total_size();
  IntMatrix m = IntMatrix::Zero(total, total);
  for (int n = 0; n <= g.depth(); ++n) {
    const int off = g.flat_index({n, 0});
    const int s = g.sphere_size(n);
    if (kind == OperatorKind::adjacency) {
      m.block(off, off, s, s) = g.intra_block(n);
    } else {
      IntMatrix diag = -g.intra_block(n);
      for (int i = 0; i < s; ++i) diag(i, i) += g.degree({n, i});
      m.block(off, off, s, s) = diag;
    }
    if (n < g.depth()) {
      const int off_up = g.flat_index({n + 1, 0});
      const int s_up = g.sphere_size(n + 1);
      IntMatrix e = g.cross_block(n);
      if (kind == OperatorKind::laplacian) e = -e;
      m.block(off_up, off, s_up, s) = e;
      m.block(off, off_up, s, s_up) = e.transpose();
    }
  }
  return m;
}

RealMatrix compress_operator(const LayeredGraph& g, OperatorKind kind) {
  if (kind != OperatorKind::normalized)
    return compress_operator_integer(g, kind).cast<double>();

  const int total = g.total_size();
  RealVector inv_sqrt_deg(total);
  for (int flat = 0; flat < total; ++flat) {
    std::int64_t deg = g.degree(g.vertex_at(flat));
    if (deg == 0)
      throw std::invalid_argument("normalized operator: zero-degree vertex " +
                                  to_string(g.vertex_at(flat)));
    inv_sqrt_deg[flat] = 1.0 / std::sqrt(static_cast<double>(deg));
  }
  RealMatrix adj = compress_operator_integer(g, OperatorKind::adjacency).cast<double>();
  RealMatrix m = RealMatrix::Identity(total, total) -
                 inv_sqrt_deg.asDiagonal() * adj * inv_sqrt_deg.asDiagonal();
  return m;
}

}  // namespace spectral_layers
