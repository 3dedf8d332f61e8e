#include "spectral_layers/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace spectral_layers {

JacobiMatrix::JacobiMatrix(std::vector<double> diagonal,
                           std::vector<double> off_diagonal)
    : b(std::move(diagonal)), a(std::move(off_diagonal)) {
  if (b.empty()) throw std::invalid_argument("jacobi matrix: empty diagonal");
  if (a.size() + 1 != b.size())
    throw std::invalid_argument("jacobi matrix: need exactly size-1 off-diagonals");
  for (double v : a)
    if (!(v > 0.0))
      throw std::invalid_argument("jacobi matrix: off-diagonal entries must be positive");
}

PeriodicJacobi::PeriodicJacobi(std::vector<double> a_periodic,
                               std::vector<double> b_periodic,
                               std::vector<double> a_pre, std::vector<double> b_pre)
    : a_per(std::move(a_periodic)),
      b_per(std::move(b_periodic)),
      a_prefix(std::move(a_pre)),
      b_prefix(std::move(b_pre)) {
  if (a_per.empty() || a_per.size() != b_per.size())
    throw std::invalid_argument("periodic jacobi: need equal-length period lists");
  for (double v : a_per)
    if (!(v > 0.0)) throw std::invalid_argument("periodic jacobi: a must be positive");
  for (double v : a_prefix)
    if (!(v > 0.0)) throw std::invalid_argument("periodic jacobi: a must be positive");
}

double PeriodicJacobi::a_at(std::size_t n) const {
  return n < a_prefix.size() ? a_prefix[n] : a_per[n % a_per.size()];
}

double PeriodicJacobi::b_at(std::size_t n) const {
  return n < b_prefix.size() ? b_prefix[n] : b_per[n % b_per.size()];
}

JacobiMatrix PeriodicJacobi::truncate(std::size_t length) const {
  std::vector<double> b(length), a(length == 0 ? 0 : length - 1);
  for (std::size_t n = 0; n < length; ++n) b[n] = b_at(n);
  for (std::size_t n = 0; n + 1 < length; ++n) a[n] = a_at(n);
  return JacobiMatrix(std::move(b), std::move(a));
}

bool BandStructure::contains(double x, double slack) const {
  for (const auto& [lo, hi] : bands)
    if (x >= lo - slack && x <= hi + slack) return true;
  return false;
}

double BandStructure::distance(double x) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [lo, hi] : bands) {
    if (x < lo)
      best = std::min(best, lo - x);
    else if (x > hi)
      best = std::min(best, x - hi);
    else
      return 0.0;
  }
  return best;
}

namespace {

double infinity_norm(const JacobiMatrix& j) {
  double norm = 0.0;
  const std::size_t n = j.size();
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(j.b[i]);
    if (i > 0) row += std::abs(j.a[i - 1]);
    if (i + 1 < n) row += std::abs(j.a[i]);
    norm = std::max(norm, row);
  }
  return norm;
}

int sturm_count_with_pivmin(const JacobiMatrix& j, double lambda, double pivmin) {
  int count = 0;
  double d = j.b[0] - lambda;
  if (std::abs(d) < pivmin) d = d < 0.0 ? -pivmin : pivmin;
  if (d < 0.0) ++count;
  for (std::size_t i = 1; i < j.size(); ++i) {
    d = (j.b[i] - lambda) - j.a[i - 1] * j.a[i - 1] / d;
    if (std::abs(d) < pivmin) d = d < 0.0 ? -pivmin : pivmin;
    if (d < 0.0) ++count;
  }
  return count;
}

}  // namespace

int sturm_count(const JacobiMatrix& j, double lambda) {
  const double pivmin = std::max(
      std::numeric_limits<double>::epsilon() * infinity_norm(j), 1e-300);
  return sturm_count_with_pivmin(j, lambda, pivmin);
}

std::vector<double> eigenvalues_tridiagonal(const JacobiMatrix& j, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("eigenvalues: tol must be positive");
  const std::size_t n = j.size();
  const double pivmin = std::max(
      std::numeric_limits<double>::epsilon() * infinity_norm(j), 1e-300);

  // Gershgorin enclosure of the whole spectrum
  double glo = std::numeric_limits<double>::infinity(), ghi = -glo;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(j.a[i - 1]);
    if (i + 1 < n) radius += std::abs(j.a[i]);
    glo = std::min(glo, j.b[i] - radius);
    ghi = std::max(ghi, j.b[i] + radius);
  }
  const double pad = std::max(1.0, std::abs(glo) + std::abs(ghi)) *
                     std::numeric_limits<double>::epsilon() * 4;
  glo -= pad;
  ghi += pad;

  std::vector<double> eigenvalues(n);
  for (std::size_t k = 0; k < n; ++k) {
    double lo = glo, hi = ghi;
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;  // interval at floating resolution
      if (sturm_count_with_pivmin(j, mid, pivmin) <= static_cast<int>(k))
        lo = mid;
      else
        hi = mid;
    }
    eigenvalues[k] = 0.5 * (lo + hi);
  }
  return eigenvalues;
}

double floquet_discriminant(const PeriodicJacobi& pj, double lambda) {
  const int q = pj.period();
  double m00 = 1.0, m01 = 0.0, m10 = 0.0, m11 = 1.0;
  for (int n = 0; n < q; ++n) {
    const double an = pj.a_per[n];
    const double aprev = pj.a_per[(n + q - 1) % q];
    const double t00 = (lambda - pj.b_per[n]) / an;
    const double t01 = -aprev / an;
    const double new00 = t00 * m00 + t01 * m10;
    const double new01 = t00 * m01 + t01 * m11;
    const double new10 = m00;
    const double new11 = m01;
    m00 = new00;
    m01 = new01;
    m10 = new10;
    m11 = new11;
  }
  return m00 + m11;
}

namespace {

double bisect_root(const PeriodicJacobi& pj, double offset, double lo, double hi,
                   double flo) {
  // root of d(lambda) + offset between lo and hi, sign change assumed
  for (int iter = 0; iter < 200 && hi - lo > 1e-10; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = floquet_discriminant(pj, mid) + offset;
    if (fmid == 0.0) return mid;
    if ((fmid < 0) == (flo < 0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// The solutions of d(lambda) = +-2 are the eigenvalues of the q x q periodic
// (theta = +1) and antiperiodic (theta = -1) restrictions of the operator.
// Sampling grids can miss gaps narrower than their spacing, so the edge
// candidates come from these exact eigenproblems instead.
std::vector<double> boundary_condition_eigenvalues(const PeriodicJacobi& pj,
                                                   double theta) {
  const int q = pj.period();
  if (q == 1) return {pj.b_per[0] + 2.0 * theta * pj.a_per[0]};
  RealMatrix h = RealMatrix::Zero(q, q);
  for (int i = 0; i < q; ++i) h(i, i) = pj.b_per[i];
  for (int i = 0; i + 1 < q; ++i) h(i, i + 1) = h(i + 1, i) = pj.a_per[i];
  h(0, q - 1) += theta * pj.a_per[q - 1];
  h(q - 1, 0) += theta * pj.a_per[q - 1];
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(h);
  return {es.eigenvalues().data(), es.eigenvalues().data() + q};
}

}  // namespace

BandStructure bands_periodic(const PeriodicJacobi& pj) {
  std::vector<double> edges = boundary_condition_eigenvalues(pj, +1.0);
  std::vector<double> anti = boundary_condition_eigenvalues(pj, -1.0);
  edges.insert(edges.end(), anti.begin(), anti.end());
  std::sort(edges.begin(), edges.end());

  // polish each candidate with the discriminant where it brackets a crossing
  for (double& edge : edges) {
    const double offset = floquet_discriminant(pj, edge) > 0.0 ? -2.0 : 2.0;
    const double width = 1e-6 * std::max(1.0, std::abs(edge));
    const double flo = floquet_discriminant(pj, edge - width) + offset;
    const double fhi = floquet_discriminant(pj, edge + width) + offset;
    if ((flo < 0.0) != (fhi < 0.0))
      edge = bisect_root(pj, offset, edge - width, edge + width, flo);
  }
  std::sort(edges.begin(), edges.end());

  BandStructure out;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double span_lo = edges[i], span_hi = edges[i + 1];
    if (span_hi - span_lo < 1e-12) continue;
    const double probe = 0.5 * (span_lo + span_hi);
    if (std::abs(floquet_discriminant(pj, probe)) <= 2.0) {
      if (!out.bands.empty() && span_lo - out.bands.back().second <= 1e-9)
        out.bands.back().second = span_hi;  // touching endpoints merged
      else
        out.bands.push_back({span_lo, span_hi});
    }
  }
  return out;
}

std::optional<std::pair<int, int>> detect_eventually_periodic(
    std::span<const double> seq, int max_period, int min_repeats) {
  if (max_period < 1 || min_repeats < 1)
    throw std::invalid_argument("detect: max_period and min_repeats must be >= 1");
  const int len = static_cast<int>(seq.size());
  if (len < max_period * min_repeats)
    throw std::invalid_argument("detect: sequence shorter than max_period * min_repeats");
  for (int q = 1; q <= max_period; ++q) {
    int start = 0;
    for (int n = len - q - 1; n >= 0; --n) {
      if (seq[n + q] != seq[n]) {
        start = n + 1;
        break;
      }
    }
    // evidence rule: the periodic tail must cover at least min_repeats full
    // periods and at least half of the observed window, so a trailing sliver
    // (e.g. the zeros after the last sparse bump) cannot pass as periodic
    if (len - start >= q * min_repeats && start <= len / 2)
      return std::make_pair(start, q);
  }
  return std::nullopt;
}

double essential_point_tcs2(int kappa) {
  if (kappa < 2) throw std::invalid_argument("essential point: kappa must be >= 2");
  return 2.0 + std::sqrt(4.0 + static_cast<double>(kappa) * kappa);
}

std::vector<double> SpectrumTable::expanded() const {
  std::vector<double> out;
  for (const SpectrumRow& row : rows)
    out.insert(out.end(), row.multiplicity, row.value);
  std::sort(out.begin(), out.end());
  return out;
}

SpectrumTable spectrum_union(const Decomposition& d, double tol) {
  SpectrumTable table;
  for (std::size_t id = 0; id < d.blocks.size(); ++id) {
    const JacobiBlock& blk = d.blocks[id];
    JacobiMatrix j(blk.b, blk.a);
    for (double value : eigenvalues_tridiagonal(j, tol))
      table.rows.push_back({value, static_cast<int>(id), blk.multiplicity});
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const SpectrumRow& x, const SpectrumRow& y) {
              return std::tie(x.value, x.block_id) < std::tie(y.value, y.block_id);
            });
  return table;
}

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

}  // namespace

std::string spectrum_csv(const SpectrumTable& table) {
  std::ostringstream out;
  out << "value,block_id,multiplicity\n";
  for (const SpectrumRow& row : table.rows)
    out << format_double(row.value) << ',' << row.block_id << ','
        << row.multiplicity << '\n';
  return out.str();
}

std::string bands_csv(const BandStructure& bands) {
  std::ostringstream out;
  out << "lo,hi\n";
  for (const auto& [lo, hi] : bands.bands)
    out << format_double(lo) << ',' << format_double(hi) << '\n';
  return out.str();
}

}  // namespace spectral_layers
