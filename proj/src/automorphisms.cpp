#include "spectral_layers/automorphisms.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace spectral_layers {

Automorphism Automorphism::identity(const LayeredGraph& g) {
  Automorphism a;
  a.perm.resize(g.depth() + 1);
  for (int n = 0; n <= g.depth(); ++n) {
    a.perm[n].resize(g.sphere_size(n));
    for (int i = 0; i < g.sphere_size(n); ++i) a.perm[n][i] = i;
  }
  return a;
}

Automorphism compose(const Automorphism& outer, const Automorphism& inner) {
  if (outer.perm.size() != inner.perm.size())
    throw std::invalid_argument("compose: depth mismatch");
  Automorphism out;
  out.perm.resize(outer.perm.size());
  for (std::size_t n = 0; n < outer.perm.size(); ++n) {
    out.perm[n].resize(outer.perm[n].size());
    for (std::size_t i = 0; i < outer.perm[n].size(); ++i)
      out.perm[n][i] = outer.perm[n][inner.perm[n][i]];
  }
  return out;
}

Automorphism inverse(const Automorphism& a) {
  Automorphism out;
  out.perm.resize(a.perm.size());
  for (std::size_t n = 0; n < a.perm.size(); ++n) {
    out.perm[n].resize(a.perm[n].size());
    for (std::size_t i = 0; i < a.perm[n].size(); ++i)
      out.perm[n][a.perm[n][i]] = static_cast<int>(i);
  }
  return out;
}

bool is_rooted_automorphism(const LayeredGraph& g, const Automorphism& a) {
  if (static_cast<int>(a.perm.size()) != g.depth() + 1) return false;
  for (int n = 0; n <= g.depth(); ++n) {
    const int s = g.sphere_size(n);
    if (static_cast<int>(a.perm[n].size()) != s) return false;
    std::vector<bool> seen(s, false);
    for (int i = 0; i < s; ++i) {
      int j = a.perm[n][i];
      if (j < 0 || j >= s || seen[j]) return false;
      seen[j] = true;
    }
  }
  if (a.perm[0][0] != 0) return false;
  for (int n = 0; n < g.depth(); ++n) {
    const IntMatrix& e = g.cross_block(n);
    for (Eigen::Index i = 0; i < e.rows(); ++i)
      for (Eigen::Index j = 0; j < e.cols(); ++j)
        if (e(i, j) != e(a.perm[n + 1][i], a.perm[n][j])) return false;
  }
  for (int n = 0; n <= g.depth(); ++n) {
    const IntMatrix& v = g.intra_block(n);
    for (Eigen::Index i = 0; i < v.rows(); ++i)
      for (Eigen::Index j = 0; j < v.cols(); ++j)
        if (v(i, j) != v(a.perm[n][i], a.perm[n][j])) return false;
  }
  const auto& out = g.outward_degrees();
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i] != out[a.perm[g.depth()][i]]) return false;
  return true;
}

namespace {

struct SearchContext {
  const LayeredGraph& g;
  // per sphere, per vertex: sorted backward neighbor lists and profiles
  std::vector<std::vector<std::vector<int>>> back_nbrs;
  std::vector<std::vector<std::array<std::int64_t, 3>>> profile;
  std::vector<std::vector<int>> forced;  // -1 = free
  std::vector<std::vector<int>> perm;    // -1 = unassigned
  std::vector<std::vector<bool>> used;
};

bool assign_sphere(SearchContext& ctx, int n, int i);

bool assign_from(SearchContext& ctx, int n, int i) {
  if (i == ctx.g.sphere_size(n)) {
    if (n == ctx.g.depth()) return true;
    return assign_sphere(ctx, n + 1, 0);
  }
  return assign_sphere(ctx, n, i);
}

bool candidate_ok(SearchContext& ctx, int n, int i, int j) {
  if (ctx.used[n][j]) return false;
  if (ctx.profile[n][i] != ctx.profile[n][j]) return false;
  if (n == ctx.g.depth() &&
      ctx.g.outward_degrees()[i] != ctx.g.outward_degrees()[j])
    return false;
  if (n > 0) {
    // image's backward neighborhood must be the mapped one
    const std::vector<int>& src = ctx.back_nbrs[n][i];
    const std::vector<int>& dst = ctx.back_nbrs[n][j];
    if (src.size() != dst.size()) return false;
    std::vector<int> mapped;
    mapped.reserve(src.size());
    for (int p : src) mapped.push_back(ctx.perm[n - 1][p]);
    std::sort(mapped.begin(), mapped.end());
    if (mapped != dst) return false;
  }
  const IntMatrix& v = ctx.g.intra_block(n);
  for (int prev = 0; prev < i; ++prev)
    if (v(i, prev) != v(j, ctx.perm[n][prev])) return false;
  return true;
}

bool assign_sphere(SearchContext& ctx, int n, int i) {
  const int forced = ctx.forced[n][i];
  if (forced >= 0) {
    if (!candidate_ok(ctx, n, i, forced)) return false;
    ctx.perm[n][i] = forced;
    ctx.used[n][forced] = true;
    if (assign_from(ctx, n, i + 1)) return true;
    ctx.perm[n][i] = -1;
    ctx.used[n][forced] = false;
    return false;
  }
  for (int j = 0; j < ctx.g.sphere_size(n); ++j) {
    if (!candidate_ok(ctx, n, i, j)) continue;
    ctx.perm[n][i] = j;
    ctx.used[n][j] = true;
    if (assign_from(ctx, n, i + 1)) return true;
    ctx.perm[n][i] = -1;
    ctx.used[n][j] = false;
  }
  return false;
}

}  // namespace

std::optional<Automorphism> find_rooted_automorphism(
    const LayeredGraph& g, const AutomorphismConstraint& constraint) {
  for (const auto& [from, to] : constraint.required_images) {
    if (from.sphere != to.sphere)
      throw std::invalid_argument("constraint pairs vertices of different spheres");
    if (from.sphere < 0 || from.sphere > g.depth() || from.index < 0 ||
        from.index >= g.sphere_size(from.sphere) || to.index < 0 ||
        to.index >= g.sphere_size(to.sphere))
      throw std::invalid_argument("constraint vertex out of range");
  }
  for (int n : constraint.pointwise_fixed_spheres)
    if (n < 0 || n > g.depth())
      throw std::invalid_argument("fixed sphere out of range");

  SearchContext ctx{g, {}, {}, {}, {}, {}};
  ctx.back_nbrs.resize(g.depth() + 1);
  ctx.profile.resize(g.depth() + 1);
  ctx.forced.resize(g.depth() + 1);
  ctx.perm.resize(g.depth() + 1);
  ctx.used.resize(g.depth() + 1);
  for (int n = 0; n <= g.depth(); ++n) {
    const int s = g.sphere_size(n);
    ctx.back_nbrs[n].resize(s);
    ctx.profile[n].resize(s);
    ctx.forced[n].assign(s, -1);
    ctx.perm[n].assign(s, -1);
    ctx.used[n].assign(s, false);
    for (int i = 0; i < s; ++i) {
      std::int64_t back = 0;
      if (n > 0) {
        const IntMatrix& e = g.cross_block(n - 1);
        for (Eigen::Index j = 0; j < e.cols(); ++j)
          if (e(i, j)) ctx.back_nbrs[n][i].push_back(static_cast<int>(j));
        back = static_cast<std::int64_t>(ctx.back_nbrs[n][i].size());
      }
      std::int64_t fwd = n < g.depth() ? g.cross_block(n).col(i).sum()
                                       : g.outward_degrees()[i];
      ctx.profile[n][i] = {back, g.intra_block(n).row(i).sum(), fwd};
    }
  }

  ctx.forced[0][0] = 0;
  for (int n : constraint.pointwise_fixed_spheres)
    for (int i = 0; i < g.sphere_size(n); ++i) ctx.forced[n][i] = i;

  auto add_forced = [&](VertexId from, VertexId to) -> bool {
    int& slot = ctx.forced[from.sphere][from.index];
    if (slot >= 0) return slot == to.index;
    slot = to.index;
    return true;
  };
  // propagate required images, forcing parents when both sides have a unique
  // backward neighbor (true for trees; prunes the ancestor chain up front)
  std::vector<std::pair<VertexId, VertexId>> queue = constraint.required_images;
  while (!queue.empty()) {
    auto [from, to] = queue.back();
    queue.pop_back();
    if (!add_forced(from, to)) return std::nullopt;
    if (from.sphere > 0) {
      const auto& src = ctx.back_nbrs[from.sphere][from.index];
      const auto& dst = ctx.back_nbrs[to.sphere][to.index];
      if (src.size() != dst.size()) return std::nullopt;
      if (src.size() == 1) {
        VertexId pf{from.sphere - 1, src[0]};
        VertexId pt{to.sphere - 1, dst[0]};
        if (ctx.forced[pf.sphere][pf.index] != pt.index) queue.push_back({pf, pt});
      }
    }
  }
  // distinct vertices forced onto the same image can never extend
  for (int n = 0; n <= g.depth(); ++n) {
    std::vector<bool> taken(g.sphere_size(n), false);
    for (int i = 0; i < g.sphere_size(n); ++i) {
      int j = ctx.forced[n][i];
      if (j < 0) continue;
      if (taken[j]) return std::nullopt;
      taken[j] = true;
    }
  }

  if (!assign_sphere(ctx, 0, 0)) return std::nullopt;
  Automorphism result;
  result.perm = ctx.perm;
  return result;
}

SphericalSymmetryReport check_spherically_symmetric(const LayeredGraph& g) {
  SphericalSymmetryReport report;
  report.depth = g.depth();
  for (int n = 1; n <= g.depth(); ++n) {
    for (int y = 1; y < g.sphere_size(n); ++y) {
      AutomorphismConstraint c;
      c.required_images.push_back({{n, 0}, {n, y}});
      if (!find_rooted_automorphism(g, c)) {
        report.pass = false;
        report.failed_spheres.push_back(n);
        if (!report.first_failure)
          report.first_failure = std::make_pair(VertexId{n, 0}, VertexId{n, y});
        break;
      }
    }
  }
  return report;
}

FamilyPreservingReport check_family_preserving(const LayeredGraph& g, int n_max,
                                               bool store_witnesses) {
  FamilyPreservingReport report;
  report.depth = g.depth();
  report.tested_n_max = std::min(n_max, g.depth());

  auto run = [&](int condition, int n, int i, int j,
                 AutomorphismConstraint constraint, bool& pass_flag) {
    auto found = find_rooted_automorphism(g, constraint);
    if (!found) {
      pass_flag = false;
      report.counterexamples.push_back(
          {condition, VertexId{n, i}, VertexId{n, j}});
    } else if (store_witnesses) {
      report.witnesses.push_back(
          {condition, VertexId{n, i}, VertexId{n, j}, std::move(*found)});
    }
  };

  // (i) forward brothers, spheres above pinned
  for (int n = 0; n <= std::min(report.tested_n_max, g.depth() - 1); ++n) {
    IntMatrix shared = g.cross_block(n).transpose() * g.cross_block(n);
    for (int i = 0; i < g.sphere_size(n); ++i)
      for (int j = i + 1; j < g.sphere_size(n); ++j) {
        if (shared(i, j) == 0) continue;
        AutomorphismConstraint c;
        c.required_images.push_back({{n, i}, {n, j}});
        for (int m = n + 1; m <= g.depth(); ++m) c.pointwise_fixed_spheres.insert(m);
        run(1, n, i, j, std::move(c), report.pass_i);
      }
  }
  // (ii) backward brothers, spheres below pinned
  for (int n = 1; n <= report.tested_n_max; ++n) {
    IntMatrix shared = g.cross_block(n - 1) * g.cross_block(n - 1).transpose();
    for (int i = 0; i < g.sphere_size(n); ++i)
      for (int j = i + 1; j < g.sphere_size(n); ++j) {
        if (shared(i, j) == 0) continue;
        AutomorphismConstraint c;
        c.required_images.push_back({{n, i}, {n, j}});
        for (int m = 0; m < n; ++m) c.pointwise_fixed_spheres.insert(m);
        run(2, n, i, j, std::move(c), report.pass_ii);
      }
  }
  // (iii) intra-sphere neighbors swapped
  for (int n = 1; n <= report.tested_n_max; ++n) {
    const IntMatrix& v = g.intra_block(n);
    for (int i = 0; i < g.sphere_size(n); ++i)
      for (int j = i + 1; j < g.sphere_size(n); ++j) {
        if (v(i, j) == 0) continue;
        AutomorphismConstraint c;
        c.required_images.push_back({{n, i}, {n, j}});
        c.required_images.push_back({{n, j}, {n, i}});
        run(3, n, i, j, std::move(c), report.pass_iii);
      }
  }
  return report;
}

}  // namespace spectral_layers
