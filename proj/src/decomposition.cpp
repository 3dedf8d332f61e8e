#include "spectral_layers/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "spectral_layers/path_analysis.hpp"

namespace spectral_layers {

ResidualError::ResidualError(int at_sphere, double norm)
    : std::runtime_error("tridiagonalize: residual " + std::to_string(norm) +
                         " at sphere " + std::to_string(at_sphere) +
                         " (input not path commuting, or tol too tight)"),
      sphere(at_sphere),
      residual(norm) {}

std::size_t Decomposition::total_dimension() const {
  std::size_t total = 0;
  for (const JacobiBlock& blk : blocks)
    total += blk.length() * static_cast<std::size_t>(blk.multiplicity);
  return total;
}

namespace {

// Blockwise view of the compressed operator: diag(n) on ell^2(S_n) and
// up(n): ell^2(S_n) -> ell^2(S_{n+1}).
struct BlockOperator {
  std::vector<RealMatrix> diag;
  std::vector<RealMatrix> up;
  double norm_bound = 1.0;
};

BlockOperator make_block_operator(const LayeredGraph& g, OperatorKind kind) {
  BlockOperator op;
  std::vector<RealVector> inv_sqrt_deg;
  if (kind == OperatorKind::normalized) {
    for (int n = 0; n <= g.depth(); ++n) {
      RealVector v(g.sphere_size(n));
      for (int i = 0; i < g.sphere_size(n); ++i) {
        std::int64_t deg = g.degree({n, i});
        if (deg == 0)
          throw std::invalid_argument("normalized operator: zero-degree vertex " +
                                      to_string(VertexId{n, i}));
        v[i] = 1.0 / std::sqrt(static_cast<double>(deg));
      }
      inv_sqrt_deg.push_back(std::move(v));
    }
  }
  for (int n = 0; n <= g.depth(); ++n) {
    const int s = g.sphere_size(n);
    RealMatrix v = g.intra_block(n).cast<double>();
    switch (kind) {
      case OperatorKind::adjacency:
        op.diag.push_back(v);
        break;
      case OperatorKind::laplacian: {
        RealMatrix d = -v;
        for (int i = 0; i < s; ++i) d(i, i) += static_cast<double>(g.degree({n, i}));
        op.diag.push_back(std::move(d));
        break;
      }
      case OperatorKind::normalized: {
        RealMatrix d = RealMatrix::Identity(s, s) -
                       inv_sqrt_deg[n].asDiagonal() * v * inv_sqrt_deg[n].asDiagonal();
        op.diag.push_back(std::move(d));
        break;
      }
    }
    if (n < g.depth()) {
      RealMatrix e = g.cross_block(n).cast<double>();
      if (kind == OperatorKind::laplacian)
        e = -e;
      else if (kind == OperatorKind::normalized)
        e = -(inv_sqrt_deg[n + 1].asDiagonal() * e * inv_sqrt_deg[n].asDiagonal());
      op.up.push_back(std::move(e));
    }
  }
  std::int64_t max_deg = 1;
  for (int n = 0; n <= g.depth(); ++n)
    max_deg = std::max(max_deg, g.sphere_degrees(n).maxCoeff());
  op.norm_bound = kind == OperatorKind::normalized ? 2.0
                                                   : 2.0 * static_cast<double>(max_deg);
  return op;
}

struct RawBlock {
  int start_sphere;
  RealVector seed;
  std::vector<double> a, b;
};

// Grows one cyclic-subspace chain; appends each sphere vector to `supports`.
RawBlock grow_block(const LayeredGraph& g, const BlockOperator& op, int start,
                    RealVector seed, double tol,
                    std::vector<std::vector<RealVector>>& supports) {
  RawBlock blk{start, seed, {}, {}};
  const double scale = std::max(1.0, op.norm_bound);
  RealVector phi = std::move(seed);
  RealVector phi_prev;
  supports[start].push_back(phi);

  for (int sphere = start;; ++sphere) {
    RealVector intra = op.diag[sphere] * phi;
    const double b_k = phi.dot(intra);
    double residual = (intra - b_k * phi).norm();
    if (sphere > start) {
      RealVector down = op.up[sphere - 1].transpose() * phi;
      const double coupling = phi_prev.dot(down);
      residual = std::max(residual, (down - coupling * phi_prev).norm());
      residual = std::max(residual, std::abs(std::abs(coupling) - blk.a.back()));
    } else if (sphere > 0) {
      // seeds are orthogonal to everything the previous spheres reach
      residual = std::max(residual, (op.up[sphere - 1].transpose() * phi).norm());
    }
    if (residual > tol * scale) throw ResidualError(sphere, residual);
    blk.b.push_back(b_k);

    if (sphere == g.depth()) break;
    RealVector upward = op.up[sphere] * phi;
    const double a_k = upward.norm();
    if (a_k < tol * scale) break;  // forward direction exhausted
    blk.a.push_back(a_k);
    phi_prev = phi;
    phi = upward / a_k;
    supports[sphere + 1].push_back(phi);
  }
  return blk;
}

// Deterministic orthonormal basis of the orthocomplement of `vectors` inside
// ell^2(S_m), via Householder QR of the accumulated column matrix.
RealMatrix orthocomplement(const std::vector<RealVector>& vectors, int dim) {
  const int count = static_cast<int>(vectors.size());
  if (count == 0) return RealMatrix::Identity(dim, dim);
  RealMatrix span(dim, count);
  for (int c = 0; c < count; ++c) span.col(c) = vectors[c];
  Eigen::HouseholderQR<RealMatrix> qr(span);
  RealMatrix q = qr.householderQ();
  return q.rightCols(dim - count);
}

// Sequential joint-eigenspace refinement: diagonalize the first operator on
// the current cluster, split by eigenvalue gaps, recurse with the next.
std::vector<RealMatrix> refine_clusters(std::vector<RealMatrix> clusters,
                                        const RealMatrix& op) {
  const double cluster_tol = 1e-8 * std::max(1.0, op.cwiseAbs().maxCoeff());
  std::vector<RealMatrix> refined;
  for (const RealMatrix& c : clusters) {
    if (c.cols() == 1) {
      refined.push_back(c);
      continue;
    }
    RealMatrix compressed = c.transpose() * op * c;
    compressed = 0.5 * (compressed + compressed.transpose().eval());
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(compressed);
    RealMatrix rotated = c * es.eigenvectors();
    const RealVector& values = es.eigenvalues();
    int begin = 0;
    for (int i = 1; i <= values.size(); ++i) {
      if (i == values.size() || values[i] - values[begin] > cluster_tol) {
        refined.push_back(rotated.middleCols(begin, i - begin));
        begin = i;
      }
    }
  }
  return refined;
}

std::vector<RealVector> joint_eigenbasis(const LayeredGraph& g, int m,
                                         const RealMatrix& complement, double tol) {
  std::vector<RealMatrix> operators;
  operators.push_back(g.intra_block(m).cast<double>());
  for (int r = 1; m + r <= g.depth(); ++r) {
    operators.push_back(forward_path_matrix(g, m, r).cast<double>());
    if (!g.intra_block(m + r).isZero())
      operators.push_back(forward_intra_conjugate(g, m, r).cast<double>());
  }

  std::vector<RealMatrix> clusters{complement};
  for (const RealMatrix& op : operators) clusters = refine_clusters(clusters, op);

  std::vector<RealVector> basis;
  for (const RealMatrix& c : clusters)
    for (int col = 0; col < c.cols(); ++col) basis.push_back(c.col(col));

  for (const RealVector& psi : basis)
    for (const RealMatrix& op : operators) {
      RealVector image = op * psi;
      const double eig = psi.dot(image);
      const double limit =
          std::max(tol, 1e-7) * std::max(1.0, op.cwiseAbs().maxCoeff());
      if ((image - eig * psi).norm() > limit)
        throw std::runtime_error(
            "tridiagonalize: commuting family not simultaneously diagonalizable "
            "at sphere " + std::to_string(m));
    }
  return basis;
}

}  // namespace

Decomposition tridiagonalize(const LayeredGraph& g, OperatorKind kind, double tol,
                             std::vector<RealMatrix>* sphere_bases) {
  if (tol <= 0) throw std::invalid_argument("tridiagonalize: tol must be positive");
  BlockOperator op = make_block_operator(g, kind);

  std::vector<std::vector<RealVector>> supports(g.depth() + 1);
  std::vector<RawBlock> raw;

  RealVector root = RealVector::Zero(1);
  root[0] = 1.0;
  raw.push_back(grow_block(g, op, 0, std::move(root), tol, supports));

  for (int m = 1; m <= g.depth(); ++m) {
    const int covered = static_cast<int>(supports[m].size());
    if (covered > g.sphere_size(m))
      throw std::runtime_error("tridiagonalize: sphere " + std::to_string(m) +
                               " over-covered");
    if (covered == g.sphere_size(m)) continue;
    RealMatrix complement = orthocomplement(supports[m], g.sphere_size(m));
    for (const RealVector& seed : joint_eigenbasis(g, m, complement, tol))
      raw.push_back(grow_block(g, op, m, seed, tol, supports));
  }

  if (sphere_bases) {
    sphere_bases->clear();
    for (int m = 0; m <= g.depth(); ++m) {
      RealMatrix basis(g.sphere_size(m), supports[m].size());
      for (std::size_t c = 0; c < supports[m].size(); ++c)
        basis.col(c) = supports[m][c];
      sphere_bases->push_back(std::move(basis));
    }
  }

  Decomposition out;
  out.kind = kind;
  out.depth = g.depth();
  // group identical blocks (same start sphere and coefficients) by multiplicity
  constexpr double kGroupTol = 1e-10;
  for (RawBlock& blk : raw) {
    bool grouped = false;
    for (JacobiBlock& existing : out.blocks) {
      if (existing.start_sphere != blk.start_sphere ||
          existing.length() != blk.b.size())
        continue;
      double dev = 0.0;
      for (std::size_t i = 0; i < blk.b.size(); ++i)
        dev = std::max(dev, std::abs(existing.b[i] - blk.b[i]));
      for (std::size_t i = 0; i < blk.a.size(); ++i)
        dev = std::max(dev, std::abs(existing.a[i] - blk.a[i]));
      if (dev <= kGroupTol) {
        ++existing.multiplicity;
        grouped = true;
        break;
      }
    }
    if (!grouped)
      out.blocks.push_back({blk.start_sphere, std::move(blk.seed),
                            std::move(blk.a), std::move(blk.b), 1});
  }

  if (out.total_dimension() != static_cast<std::size_t>(g.total_size()))
    throw std::runtime_error("tridiagonalize: basis incomplete (" +
                             std::to_string(out.total_dimension()) + " of " +
                             std::to_string(g.total_size()) + ")");
  return out;
}

namespace {

RealVector canonical_pair_seed(int dim) {
  RealVector seed = RealVector::Zero(dim);
  seed[0] = 1.0 / std::sqrt(2.0);
  seed[1] = -seed[0];
  return seed;
}

}  // namespace

Decomposition antitree_closed_form(const SequenceSpec& s, int depth,
                                   OperatorKind kind) {
  if (depth < 0) throw std::invalid_argument("antitree closed form: negative depth");
  if (s.value_at(0) != 1)
    throw std::invalid_argument("antitree closed form: s_0 must be 1");
  std::vector<std::int64_t> size(depth + 2);
  for (int n = 0; n <= depth; ++n) {
    size[n] = s.value_at(n);
    if (size[n] < 1)
      throw std::invalid_argument("antitree closed form: empty sphere");
  }
  size[depth + 1] = s.defined_at(depth + 1) ? s.value_at(depth + 1) : 0;
  auto lap_b = [&](int n) {  // s_{-1} = 0, so b_0 = deg(root)
    return static_cast<double>((n >= 1 ? size[n - 1] : 0) + size[n + 1]);
  };

  Decomposition out;
  out.kind = kind;
  out.depth = depth;

  JacobiBlock symmetric;
  symmetric.start_sphere = 0;
  symmetric.seed = RealVector::Ones(1);
  for (int n = 0; n <= depth; ++n) {
    switch (kind) {
      case OperatorKind::laplacian: symmetric.b.push_back(lap_b(n)); break;
      case OperatorKind::adjacency: symmetric.b.push_back(0.0); break;
      case OperatorKind::normalized: symmetric.b.push_back(1.0); break;
    }
    if (n < depth) {
      double a = std::sqrt(static_cast<double>(size[n] * size[n + 1]));
      if (kind == OperatorKind::normalized) {
        double bn = lap_b(n), bn1 = lap_b(n + 1);
        if (bn <= 0 || bn1 <= 0)
          throw std::invalid_argument("antitree closed form: zero degree");
        a /= std::sqrt(bn * bn1);
      }
      symmetric.a.push_back(a);
    }
  }
  out.blocks.push_back(std::move(symmetric));

  for (int n = 1; n <= depth; ++n) {
    if (size[n] < 2) continue;
    JacobiBlock scalar;
    scalar.start_sphere = n;
    scalar.seed = canonical_pair_seed(static_cast<int>(size[n]));
    switch (kind) {
      case OperatorKind::laplacian: scalar.b.push_back(lap_b(n)); break;
      case OperatorKind::adjacency: scalar.b.push_back(0.0); break;
      case OperatorKind::normalized: scalar.b.push_back(1.0); break;
    }
    scalar.multiplicity = static_cast<int>(size[n]) - 1;
    out.blocks.push_back(std::move(scalar));
  }
  return out;
}

Decomposition tree_cs_closed_form(const SequenceSpec& k, const SequenceSpec& gamma,
                                  int depth) {
  if (depth < 0) throw std::invalid_argument("tree closed form: negative depth");
  std::vector<std::int64_t> branching(depth + 2, 0);
  for (int n = 1; n <= depth; ++n) {
    branching[n] = k.value_at(n);
    if (branching[n] < 1)
      throw std::invalid_argument("tree closed form: k_" + std::to_string(n) +
                                  " must be >= 1");
  }
  branching[depth + 1] =
      k.defined_at(depth + 1) ? k.value_at(depth + 1) : 0;

  std::vector<std::int64_t> size(depth + 1, 1);  // s_n = prod k_j
  for (int n = 1; n <= depth; ++n) size[n] = size[n - 1] * branching[n];

  std::vector<double> potential(depth + 1, 0.0);  // v_n = gamma_n * s_n
  for (int n = 1; n <= depth; ++n) {
    std::int64_t gn = gamma.value_at(n);
    if (gn != 0 && gn != 1)
      throw std::invalid_argument("tree closed form: gamma_" + std::to_string(n) +
                                  " must be 0 or 1");
    potential[n] = static_cast<double>(gn * size[n]);
  }

  auto base_b = [&](int n) {
    return n == 0 ? static_cast<double>(branching[1])
                  : static_cast<double>(branching[n + 1] + 1);
  };
  auto base_a = [&](int n) { return std::sqrt(static_cast<double>(branching[n + 1])); };

  Decomposition out;
  out.kind = OperatorKind::laplacian;
  out.depth = depth;

  JacobiBlock block0;
  block0.start_sphere = 0;
  block0.seed = RealVector::Ones(1);
  for (int n = 0; n <= depth; ++n) {
    block0.b.push_back(base_b(n));
    if (n < depth) block0.a.push_back(base_a(n));
  }
  out.blocks.push_back(std::move(block0));

  for (int l = 1; l <= depth; ++l) {
    const std::int64_t mult = size[l] - size[l - 1];
    if (mult < 1) continue;
    JacobiBlock blk;
    blk.start_sphere = l;
    blk.seed = RealVector::Zero(static_cast<int>(size[l]));
    blk.seed[0] = 1.0 / std::sqrt(2.0);  // children of parent 0 are 0..k_l-1
    blk.seed[1] = -blk.seed[0];
    blk.multiplicity = static_cast<int>(mult);
    for (int n = 0; n + l <= depth; ++n) {
      blk.b.push_back(base_b(n + l) + potential[n + l]);
      if (n + l < depth) blk.a.push_back(base_a(n + l));
    }
    out.blocks.push_back(std::move(blk));
  }
  return out;
}

EigenfunctionReport verify_finitely_supported_eigenfunctions(const LayeredGraph& g) {
  if (!g.is_antitree())
    throw std::invalid_argument("eigenfunction check: input is not an antitree");
  EigenfunctionReport report;
  for (int n = 1; n <= g.depth(); ++n) {
    const int s = g.sphere_size(n);
    if (s < 2) continue;
    const std::int64_t eigenvalue = g.degree({n, 0});  // s_{n-1} + s_{n+1}
    report.eigenvalues.push_back({n, eigenvalue});
    for (int i = 1; i < s; ++i) {
      // integer zero-sum vector delta_0 - delta_i; check Delta v = lambda v
      IntVector v = IntVector::Zero(s);
      v[0] = 1;
      v[i] = -1;
      IntVector on_sphere = -g.intra_block(n) * v;
      for (int idx : {0, i}) on_sphere[idx] += g.degree({n, idx}) * v[idx];
      IntVector below = -(g.cross_block(n - 1).transpose() * v);
      auto exactly_zero = [](const IntVector& w) {
        for (Eigen::Index r = 0; r < w.size(); ++r)
          if (w[r] != 0) return false;
        return true;
      };
      bool ok = exactly_zero(on_sphere - eigenvalue * v);
      ok = ok && exactly_zero(below);
      if (n < g.depth()) ok = ok && exactly_zero(g.cross_block(n) * v);
      if (!ok) report.pass = false;
      ++report.vectors_checked;
    }
  }
  return report;
}

namespace {

struct FlatBlock {
  std::vector<double> a, b;
};

bool lex_less(const FlatBlock& lhs, const FlatBlock& rhs) {
  if (lhs.b != rhs.b) return lhs.b < rhs.b;
  return lhs.a < rhs.a;
}

}  // namespace

ReconcileReport reconcile(const Decomposition& d1, const Decomposition& d2,
                          double tol) {
  if (d1.kind != d2.kind)
    throw std::invalid_argument("reconcile: operator kinds differ");
  if (d1.depth != d2.depth)
    throw std::invalid_argument("reconcile: depths differ");

  ReconcileReport report;
  auto flatten = [](const Decomposition& d) {
    std::map<std::pair<int, std::size_t>, std::vector<FlatBlock>> grouped;
    for (const JacobiBlock& blk : d.blocks)
      for (int copy = 0; copy < blk.multiplicity; ++copy)
        grouped[{blk.start_sphere, blk.length()}].push_back({blk.a, blk.b});
    for (auto& [key, blocks] : grouped)
      std::sort(blocks.begin(), blocks.end(), lex_less);
    return grouped;
  };
  auto g1 = flatten(d1);
  auto g2 = flatten(d2);

  for (const auto& [key, blocks1] : g1) {
    auto it = g2.find(key);
    const std::size_t n2 = it == g2.end() ? 0 : it->second.size();
    if (blocks1.size() != n2) {
      report.pass = false;
      report.mismatches.push_back(
          "start " + std::to_string(key.first) + " length " +
          std::to_string(key.second) + ": " + std::to_string(blocks1.size()) +
          " blocks vs " + std::to_string(n2));
      continue;
    }
    for (std::size_t i = 0; i < blocks1.size(); ++i) {
      const FlatBlock& lhs = blocks1[i];
      const FlatBlock& rhs = it->second[i];
      double dev = 0.0;
      for (std::size_t j = 0; j < lhs.b.size(); ++j)
        dev = std::max(dev, std::abs(lhs.b[j] - rhs.b[j]));
      for (std::size_t j = 0; j < lhs.a.size(); ++j)
        dev = std::max(dev, std::abs(lhs.a[j] - rhs.a[j]));
      report.max_deviation = std::max(report.max_deviation, dev);
      if (dev >= tol) {
        report.pass = false;
        report.mismatches.push_back("start " + std::to_string(key.first) +
                                    " block " + std::to_string(i) +
                                    ": coefficient deviation " + std::to_string(dev));
      }
    }
  }
  for (const auto& [key, blocks2] : g2) {
    if (g1.count(key)) continue;
    report.pass = false;
    report.mismatches.push_back("start " + std::to_string(key.first) + " length " +
                                std::to_string(key.second) + ": 0 blocks vs " +
                                std::to_string(blocks2.size()));
  }
  return report;
}

std::pair<std::vector<double>, std::vector<double>> antitree_coefficient_sequences(
    const SequenceSpec& s, std::size_t length) {
  std::vector<double> a(length), b(length);
  for (std::size_t n = 0; n < length; ++n) {
    a[n] = std::sqrt(static_cast<double>(s.value_at(n) * s.value_at(n + 1)));
    b[n] = static_cast<double>((n >= 1 ? s.value_at(n - 1) : 0) + s.value_at(n + 1));
  }
  return {std::move(a), std::move(b)};
}

std::string decomposition_csv(const Decomposition& d) {
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  std::ostringstream out;
  out << "block_id,start_sphere,multiplicity,length\n";
  for (std::size_t id = 0; id < d.blocks.size(); ++id) {
    const JacobiBlock& blk = d.blocks[id];
    out << id << ',' << blk.start_sphere << ',' << blk.multiplicity << ','
        << blk.length() << '\n';
  }
  out << "block_id,index,a,b\n";
  for (std::size_t id = 0; id < d.blocks.size(); ++id) {
    const JacobiBlock& blk = d.blocks[id];
    for (std::size_t i = 0; i < blk.length(); ++i) {
      out << id << ',' << i << ',';
      if (i + 1 < blk.length()) out << fmt(blk.a[i]);
      out << ',' << fmt(blk.b[i]) << '\n';
    }
  }
  return out.str();
}

}  // namespace spectral_layers
