#ifndef SPECTRAL_LAYERS_JACOBI_HPP
#define SPECTRAL_LAYERS_JACOBI_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spectral_layers/decomposition.hpp"

namespace spectral_layers {

/// Finite symmetric tridiagonal matrix: diagonal b (length L >= 1) and
/// positive off-diagonal a (length L - 1).
struct JacobiMatrix {
  std::vector<double> b;
  std::vector<double> a;

  JacobiMatrix(std::vector<double> diagonal, std::vector<double> off_diagonal);
  std::size_t size() const { return b.size(); }
};

/// Eventually periodic coefficient pair: optional finite prefixes, then
/// a_per[n mod q], b_per[n mod q] for n past the prefix.
struct PeriodicJacobi {
  std::vector<double> a_per, b_per;            // length q
  std::vector<double> a_prefix, b_prefix;      // finite perturbation

  PeriodicJacobi(std::vector<double> a_periodic, std::vector<double> b_periodic,
                 std::vector<double> a_pre = {}, std::vector<double> b_pre = {});
  int period() const { return static_cast<int>(a_per.size()); }
  double a_at(std::size_t n) const;
  double b_at(std::size_t n) const;
  JacobiMatrix truncate(std::size_t length) const;
};

/// Closed disjoint intervals, sorted; touching endpoints merged.
struct BandStructure {
  std::vector<std::pair<double, double>> bands;

  bool contains(double x, double slack = 0.0) const;
  double distance(double x) const;
};

/// Number of eigenvalues strictly below lambda, by the sign count of the
/// Sturm sequence d_k = (b_k - lambda) - a_{k-1}^2 / d_{k-1} with a
/// sign-preserving floor on near-zero pivots.
int sturm_count(const JacobiMatrix& j, double lambda);

/// All eigenvalues (with multiplicity, ascending) by Sturm-count bisection;
/// each is bracketed to width < tol.
std::vector<double> eigenvalues_tridiagonal(const JacobiMatrix& j, double tol);

/// Band structure of the periodic operator via the Floquet discriminant
/// d(lambda) = tr prod over one period of [[(lambda-b_n)/a_n, -a_{n-1}/a_n],[1,0]];
/// bands are where |d| <= 2, located by root isolation of d -+ 2 on an
/// adaptively refined Chebyshev grid and bisection to 1e-10.
BandStructure bands_periodic(const PeriodicJacobi& pj);
double floquet_discriminant(const PeriodicJacobi& pj, double lambda);

/// Smallest period q <= max_period (then smallest N) with seq[n+q] = seq[n]
/// for all observed n >= N, provided the periodic tail covers at least
/// q * min_repeats entries. A verdict about the observed window only.
std::optional<std::pair<int, int>> detect_eventually_periodic(
    std::span<const double> seq, int max_period, int min_repeats);

/// The accumulation point 2 + sqrt(4 + kappa^2) of the sparse complete-sphere
/// construction.
double essential_point_tcs2(int kappa);

struct SpectrumRow {
  double value;
  int block_id;
  int multiplicity;
};

struct SpectrumTable {
  std::vector<SpectrumRow> rows;  // sorted by value

  /// Values repeated by multiplicity, ascending.
  std::vector<double> expanded() const;
};

/// Multiset union of the blocks' eigenvalues, each row carrying its block id
/// and the block multiplicity.
SpectrumTable spectrum_union(const Decomposition& d, double tol);

std::string spectrum_csv(const SpectrumTable& table);
std::string bands_csv(const BandStructure& bands);

}  // namespace spectral_layers

#endif
