#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace kfuse {

// Structured covariance: identity, compound symmetry CS(rho) with unit
// diagonal, or AR(rho) with Sigma_ij = rho^|i-j|.
struct CovarianceSpec {
  enum class Kind { identity, compound_symmetry, ar1 };
  Kind kind = Kind::identity;
  double rho = 0.0;
  std::size_t p = 0;

  void validate() const;
};

// Population sliced statistic K^G under a bivariate Gaussian copula with
// correlation rho and G equiprobable slices:
//   K^G = G * int_{-inf}^{Phi^-1(1/G)} (2 Phi(-|rho| y / sqrt(1-rho^2)) - 1) phi(y) dy.
// The lower limit is truncated at -10 (tail mass < 1e-20). Strictly
// increasing in |rho|.
double oracle_kg_normal(double rho, int G, double tol = 1e-8);

// Population limit statistic K*: 1 if rho != 0, else 0.
double kstar_normal(double rho);

// alpha = Sigma * beta in O(p) using the covariance structure.
std::vector<double> alpha_vector(const CovarianceSpec& sigma,
                                 std::span<const double> beta);

struct C1Result {
  std::vector<std::size_t> set;  // 1-based indices of S, ascending
  double margin = 0.0;           // min_{j in S}|alpha_j| - max_{j not in S}|alpha_j|
  // Size bound d + ceil(log(min_D|alpha|/|alpha_d|)/log|rho|) for AR
  // covariance with contiguous support 1..d.
  std::optional<std::size_t> ar_bound;
};

// Separation diagnostic: the smallest prefix S of the |alpha|-descending
// ranking that contains the support of beta and satisfies
// min_{j in S}|alpha_j| > max_{j not in S}|alpha_j|. Throws when no such
// separating set exists.
C1Result condition_c1_set(const CovarianceSpec& sigma, std::span<const double> beta);

}  // namespace kfuse
