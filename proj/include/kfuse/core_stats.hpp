#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "kfuse/matrix.hpp"

namespace kfuse {

// Ascending sample; what every CDF-based statistic here operates on.
struct SortedSample {
  std::vector<double> values;

  // Sorts; rejects empty input and NaN values.
  static SortedSample from_unsorted(std::vector<double> v);
  std::size_t size() const { return values.size(); }
};

// Right-continuous empirical CDF: #{v <= x} / n.
double empirical_cdf(const SortedSample& s, double x);

// sup_x |F_a(x) - F_b(x)| via one merged scan of both samples. The sup of the
// step-function difference is attained at union sample points, so the result
// is exact.
double ks_two_sample(const SortedSample& a, const SortedSample& b);

// Reference implementation: evaluates both ECDFs at every union point by
// counting. Kept as the testing oracle for the merged scan.
double ks_two_sample_bruteforce(const SortedSample& a, const SortedSample& b);

// Ranks 1..n by ascending value, ties broken by original index.
std::vector<std::size_t> ranks_stable(std::span<const double> v);

// Cumulative rank cutoffs c_l = ceil(l*n/G), l = 1..G; the observation of
// rank r belongs to slice l iff c_{l-1} < r <= c_l. Every slice is nonempty
// and sizes differ by at most one.
std::vector<std::size_t> quantile_rank_thresholds(std::size_t n, std::size_t G);

// Sample Pearson correlation; throws on zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

// Kendall tau_a ((concordant - discordant) / (n(n-1)/2); ties count as
// neither). Merge-count implementation, O(n log n); must agree exactly with
// the pair enumeration below.
double kendall_tau(std::span<const double> x, std::span<const double> y);
double kendall_tau_bruteforce(std::span<const double> x, std::span<const double> y);

// Response side of the sample distance correlation, precomputed once and
// shared across covariate columns: doubly centered distance matrix of the
// rows of Y plus its distance variance. O(n^2) memory.
class DistanceCorrelationReference {
 public:
  explicit DistanceCorrelationReference(const Matrix& y);

  // Distance correlation of x against the stored response. Returns 0 for a
  // constant x or constant response; *degenerate is set accordingly when
  // provided.
  double dcor(std::span<const double> x, bool* degenerate = nullptr) const;

  std::size_t n() const { return n_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> centered_;  // n x n
  double dvar_y_ = 0.0;
};

// Sample distance correlation of scalar x and the rows of Y (n x q).
double distance_correlation(std::span<const double> x, const Matrix& y,
                            bool* degenerate = nullptr);

// Adaptive Simpson quadrature with Richardson correction; |error| <= tol for
// smooth integrands. Throws if f evaluates to a non-finite value.
double adaptive_quadrature(const std::function<double(double)>& f, double a,
                           double b, double tol);

}  // namespace kfuse
