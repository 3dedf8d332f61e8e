#include "spectral_layers/path_analysis.hpp"

#include <stdexcept>

namespace spectral_layers {

namespace {

void require_sphere(const LayeredGraph& g, int n) {
  if (n < 0 || n > g.depth())
    throw std::out_of_range("sphere index " + std::to_string(n) + " out of range");
}

// E_{n+j-1} ... E_n, mapping S_n upward j spheres.
IntMatrix upward_chain(const LayeredGraph& g, int n, int j) {
  IntMatrix chain = IntMatrix::Identity(g.sphere_size(n), g.sphere_size(n));
  for (int step = 0; step < j; ++step) chain = g.cross_block(n + step) * chain;
  return chain;
}

// E_{n-1} E_{n-2} ... E_{n-j}, mapping S_{n-j} upward to S_n.
IntMatrix downward_chain_transposed(const LayeredGraph& g, int n, int j) {
  return upward_chain(g, n - j, j);
}

}  // namespace

IntMatrix forward_path_matrix(const LayeredGraph& g, int n, int radius) {
  require_sphere(g, n);
  if (radius < 0) throw std::invalid_argument("negative path radius");
  if (radius == 0) return IntMatrix::Identity(g.sphere_size(n), g.sphere_size(n));
  if (n + radius > g.depth())
    throw std::out_of_range("forward radius " + std::to_string(radius) +
                            " from sphere " + std::to_string(n) +
                            " exceeds depth " + std::to_string(g.depth()));
  IntMatrix u = upward_chain(g, n, radius);
  return u.transpose() * u;
}

IntMatrix backward_path_matrix(const LayeredGraph& g, int n, int radius) {
  require_sphere(g, n);
  if (radius < 0) throw std::invalid_argument("negative path radius");
  if (radius == 0) return IntMatrix::Identity(g.sphere_size(n), g.sphere_size(n));
  if (radius > n) return IntMatrix::Zero(g.sphere_size(n), g.sphere_size(n));
  IntMatrix m = downward_chain_transposed(g, n, radius);
  return m * m.transpose();
}

IntMatrix lambda(const LayeredGraph& g, LambdaKind kind) {
  require_sphere(g, kind.n);
  if (kind.j < 0) throw std::invalid_argument("lambda: negative radius");
  if (kind.direction == LambdaKind::Direction::plus)
    return forward_path_matrix(g, kind.n, kind.j);
  // paper convention: identity for n = 0 or j > n
  if (kind.n == 0 || kind.j > kind.n)
    return IntMatrix::Identity(g.sphere_size(kind.n), g.sphere_size(kind.n));
  return backward_path_matrix(g, kind.n, kind.j);
}

IntMatrix forward_intra_conjugate(const LayeredGraph& g, int n, int radius) {
  require_sphere(g, n);
  if (radius < 0) throw std::invalid_argument("negative radius");
  if (n + radius > g.depth())
    throw std::out_of_range("forward radius exceeds depth");
  IntMatrix u = upward_chain(g, n, radius);
  return u.transpose() * g.intra_block(n + radius) * u;
}

IntMatrix backward_intra_conjugate(const LayeredGraph& g, int n, int radius) {
  require_sphere(g, n);
  if (radius < 0 || radius > n)
    throw std::out_of_range("backward radius exceeds sphere index");
  IntMatrix m = downward_chain_transposed(g, n, radius);
  return m * g.intra_block(n - radius) * m.transpose();
}

namespace {

// Step profile of a species: +1 up a sphere, -1 down, 0 within the sphere.
std::vector<int> step_profile(PathSpecies species, int r1, int r2) {
  std::vector<int> steps;
  auto forward = [&](int k) {
    steps.insert(steps.end(), k, +1);
    steps.insert(steps.end(), k, -1);
  };
  auto backward = [&](int k) {
    steps.insert(steps.end(), k, -1);
    steps.insert(steps.end(), k, +1);
  };
  switch (species) {
    case PathSpecies::forward_backward: forward(r1); backward(r2); break;
    case PathSpecies::backward_forward: backward(r1); forward(r2); break;
    case PathSpecies::tailed_forward: forward(r1); steps.push_back(0); break;
    case PathSpecies::headed_forward: steps.push_back(0); forward(r1); break;
    case PathSpecies::tailed_backward: backward(r1); steps.push_back(0); break;
    case PathSpecies::headed_backward: steps.push_back(0); backward(r1); break;
  }
  return steps;
}

std::int64_t enumerate_paths(const LayeredGraph& g, const std::vector<int>& steps,
                             std::size_t at, VertexId current, VertexId target) {
  if (at == steps.size()) return current == target ? 1 : 0;
  std::int64_t total = 0;
  const int n = current.sphere;
  if (steps[at] == +1) {
    const IntMatrix& e = g.cross_block(n);
    for (int i = 0; i < g.sphere_size(n + 1); ++i)
      if (e(i, current.index))
        total += enumerate_paths(g, steps, at + 1, {n + 1, i}, target);
  } else if (steps[at] == -1) {
    const IntMatrix& e = g.cross_block(n - 1);
    for (int j = 0; j < g.sphere_size(n - 1); ++j)
      if (e(current.index, j))
        total += enumerate_paths(g, steps, at + 1, {n - 1, j}, target);
  } else {
    const IntMatrix& v = g.intra_block(n);
    for (int j = 0; j < g.sphere_size(n); ++j)
      if (v(current.index, j))
        total += enumerate_paths(g, steps, at + 1, {n, j}, target);
  }
  return total;
}

bool single_leg(PathSpecies s) {
  return s != PathSpecies::forward_backward && s != PathSpecies::backward_forward;
}

}  // namespace

std::int64_t count_paths(const LayeredGraph& g, PathSpecies species, int radius1,
                         int radius2, VertexId x, VertexId y, CountMethod method) {
  if (x.sphere != y.sphere)
    throw std::invalid_argument("count_paths: endpoints in different spheres");
  require_sphere(g, x.sphere);
  if (radius1 < 0 || radius2 < 0)
    throw std::invalid_argument("count_paths: negative radius");
  if (single_leg(species) && radius2 != 0)
    throw std::invalid_argument("count_paths: species takes a single radius");
  const int n = x.sphere;

  // forward legs must stay inside the stored ball
  int fwd = 0;
  switch (species) {
    case PathSpecies::forward_backward:
    case PathSpecies::tailed_forward:
    case PathSpecies::headed_forward: fwd = radius1; break;
    case PathSpecies::backward_forward: fwd = radius2; break;
    default: break;
  }
  if (n + fwd > g.depth())
    throw std::out_of_range("count_paths: forward radius exceeds depth");

  if (method == CountMethod::enumerate) {
    // backward legs deeper than the root simply admit no paths
    int bwd = 0;
    switch (species) {
      case PathSpecies::forward_backward: bwd = radius2; break;
      case PathSpecies::backward_forward: bwd = radius1; break;
      case PathSpecies::tailed_backward:
      case PathSpecies::headed_backward: bwd = radius1; break;
      default: break;
    }
    if (bwd > n) return 0;
    return enumerate_paths(g, step_profile(species, radius1, radius2), 0, x, y);
  }

  IntMatrix m;
  switch (species) {
    case PathSpecies::forward_backward:
      m = backward_path_matrix(g, n, radius2) * forward_path_matrix(g, n, radius1);
      break;
    case PathSpecies::backward_forward:
      m = forward_path_matrix(g, n, radius2) * backward_path_matrix(g, n, radius1);
      break;
    case PathSpecies::tailed_forward:
      m = g.intra_block(n) * forward_path_matrix(g, n, radius1);
      break;
    case PathSpecies::headed_forward:
      m = forward_path_matrix(g, n, radius1) * g.intra_block(n);
      break;
    case PathSpecies::tailed_backward:
      m = g.intra_block(n) * backward_path_matrix(g, n, radius1);
      break;
    case PathSpecies::headed_backward:
      m = backward_path_matrix(g, n, radius1) * g.intra_block(n);
      break;
  }
  return m(y.index, x.index);
}

namespace {

void record_matrix_mismatch(PathCommutingReport& report, int n, PathEquality eq,
                            int k, int l, const IntMatrix& lhs, const IntMatrix& rhs) {
  for (Eigen::Index xi = 0; xi < lhs.cols(); ++xi)
    for (Eigen::Index yi = 0; yi < lhs.rows(); ++yi)
      if (lhs(yi, xi) != rhs(yi, xi))
        report.violations.push_back({n, eq, k, l,
                                     VertexId{n, static_cast<int>(xi)},
                                     VertexId{n, static_cast<int>(yi)},
                                     lhs(yi, xi), rhs(yi, xi)});
}

}  // namespace

PathCommutingReport check_path_commuting(const LayeredGraph& g, int n_max, int k_max) {
  PathCommutingReport report;
  report.tested_n_max = std::min(n_max, g.depth());
  report.tested_k_max = k_max;
  if (n_max > g.depth())
    report.warnings.push_back("n_max clamped to depth " + std::to_string(g.depth()));

  for (int n = 0; n <= report.tested_n_max; ++n) {
    const int fwd_limit = std::min(k_max, g.depth() - n);
    if (fwd_limit < k_max)
      report.warnings.push_back("sphere " + std::to_string(n) +
                                ": forward radius clamped to " +
                                std::to_string(fwd_limit));
    std::vector<IntMatrix> fwd, bwd;
    for (int k = 0; k <= fwd_limit; ++k) fwd.push_back(forward_path_matrix(g, n, k));
    const int bwd_limit = std::min(k_max, n);  // deeper radii have zero counts
    for (int l = 0; l <= bwd_limit; ++l) bwd.push_back(backward_path_matrix(g, n, l));
    const IntMatrix& v = g.intra_block(n);

    for (int k = 0; k <= fwd_limit; ++k) {
      for (int l = 0; l <= bwd_limit; ++l) {
        IntMatrix fb = bwd[l] * fwd[k];  // entry (y,x) = #fb_(k,l)(x,y)
        IntMatrix bf = fwd[k] * bwd[l];  // entry (y,x) = #bf_(l,k)(x,y)
        record_matrix_mismatch(report, n, PathEquality::fb_vs_bf, k, l, fb, bf);
      }
      record_matrix_mismatch(report, n, PathEquality::tailed_vs_headed_forward, k, 0,
                             IntMatrix(v * fwd[k]), IntMatrix(fwd[k] * v));
    }
    for (int l = 0; l <= bwd_limit; ++l)
      record_matrix_mismatch(report, n, PathEquality::tailed_vs_headed_backward, l, 0,
                             IntMatrix(v * bwd[l]), IntMatrix(bwd[l] * v));
  }
  report.pass = report.violations.empty();
  return report;
}

PathCommutingReport check_strongly_path_commuting(const LayeredGraph& g, int n_max,
                                                  int k_max) {
  PathCommutingReport report = check_path_commuting(g, n_max, k_max);
  for (int n = 0; n <= report.tested_n_max; ++n) {
    IntVector deg = g.sphere_degrees(n);
    for (int i = 1; i < deg.size(); ++i)
      if (deg[i] != deg[0])
        report.degree_violations.push_back(
            {n, VertexId{n, 0}, VertexId{n, i}, deg[0], deg[i]});
  }
  report.pass = report.violations.empty() && report.degree_violations.empty();
  return report;
}

CommutationReport check_commuting_family(const LayeredGraph& g, int n, int j_max) {
  require_sphere(g, n);
  CommutationReport report;
  report.n = n;
  report.j_max = j_max;

  struct Named {
    std::string name;
    IntMatrix m;
  };
  std::vector<Named> family;
  family.push_back({"V", g.intra_block(n)});
  const int fwd_limit = std::min(j_max, g.depth() - n);
  for (int j = 1; j <= fwd_limit; ++j)
    family.push_back({"L+" + std::to_string(j), forward_path_matrix(g, n, j)});
  const int bwd_limit = std::min(j_max, n);
  for (int j = 1; j <= bwd_limit; ++j)
    family.push_back({"L-" + std::to_string(j), backward_path_matrix(g, n, j)});

  auto commutator_norm = [](const IntMatrix& a, const IntMatrix& b) {
    return (a * b - b * a).cwiseAbs().maxCoeff();
  };
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      report.entries.push_back({family[i].name, family[j].name,
                                commutator_norm(family[i].m, family[j].m)});

  // conjugated intra-sphere operators against their matching lambda
  for (int j = 1; j <= fwd_limit; ++j)
    report.entries.push_back(
        {"L+" + std::to_string(j), "T+" + std::to_string(j),
         commutator_norm(forward_path_matrix(g, n, j),
                         forward_intra_conjugate(g, n, j))});
  for (int j = 1; j <= bwd_limit; ++j)
    report.entries.push_back(
        {"L-" + std::to_string(j), "T-" + std::to_string(j),
         commutator_norm(backward_path_matrix(g, n, j),
                         backward_intra_conjugate(g, n, j))});

  for (const CommutatorEntry& e : report.entries)
    if (e.max_abs != 0) report.pass = false;
  return report;
}

}  // namespace spectral_layers
