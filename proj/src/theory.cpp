#include "kfuse/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "kfuse/core_stats.hpp"
#include "kfuse/normal.hpp"

namespace kfuse {

void CovarianceSpec::validate() const {
  if (p == 0) throw std::invalid_argument("covariance dimension must be >= 1");
  if (kind == Kind::identity) return;
  if (!(std::fabs(rho) < 1.0)) throw std::invalid_argument("|rho| must be < 1");
  if (kind == Kind::compound_symmetry && p > 1 &&
      rho <= -1.0 / static_cast<double>(p - 1)) {
    throw std::invalid_argument("compound symmetry not positive definite");
  }
}

double oracle_kg_normal(double rho, int G, double tol) {
  if (!(std::fabs(rho) < 1.0)) throw std::invalid_argument("|rho| must be < 1");
  if (G < 2) throw std::invalid_argument("need at least 2 slices");
  if (rho == 0.0) return 0.0;
  const double a1 = norm_quantile(1.0 / static_cast<double>(G));
  const double c = std::fabs(rho) / std::sqrt(1.0 - rho * rho);
  const auto integrand = [c](double y) {
    return (2.0 * norm_cdf(-c * y) - 1.0) * norm_pdf(y);
  };
  const double v = adaptive_quadrature(integrand, -10.0, a1, tol);
  return std::clamp(static_cast<double>(G) * v, 0.0, 1.0);
}

double kstar_normal(double rho) {
  if (!(std::fabs(rho) < 1.0)) throw std::invalid_argument("|rho| must be < 1");
  return rho != 0.0 ? 1.0 : 0.0;
}

std::vector<double> alpha_vector(const CovarianceSpec& sigma,
                                 std::span<const double> beta) {
  sigma.validate();
  const std::size_t p = sigma.p;
  if (beta.size() != p) throw std::invalid_argument("beta length mismatch");
  std::vector<double> alpha(p);
  switch (sigma.kind) {
    case CovarianceSpec::Kind::identity: {
      std::copy(beta.begin(), beta.end(), alpha.begin());
      break;
    }
    case CovarianceSpec::Kind::compound_symmetry: {
      double total = 0.0;
      for (double b : beta) total += b;
      for (std::size_t j = 0; j < p; ++j) {
        alpha[j] = (1.0 - sigma.rho) * beta[j] + sigma.rho * total;
      }
      break;
    }
    case CovarianceSpec::Kind::ar1: {
      // alpha_j = sum_k rho^|j-k| beta_k via forward/backward recursions:
      // L_j = rho L_{j-1} + beta_j, R_j = rho R_{j+1} + beta_j.
      std::vector<double> left(p), right(p);
      left[0] = beta[0];
      for (std::size_t j = 1; j < p; ++j) left[j] = sigma.rho * left[j - 1] + beta[j];
      right[p - 1] = beta[p - 1];
      for (std::size_t j = p - 1; j-- > 0;) right[j] = sigma.rho * right[j + 1] + beta[j];
      for (std::size_t j = 0; j < p; ++j) alpha[j] = left[j] + right[j] - beta[j];
      break;
    }
  }
  return alpha;
}

C1Result condition_c1_set(const CovarianceSpec& sigma, std::span<const double> beta) {
  const auto alpha = alpha_vector(sigma, beta);
  const std::size_t p = alpha.size();
  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double va = std::fabs(alpha[a]);
    const double vb = std::fabs(alpha[b]);
    if (va != vb) return va > vb;
    return a < b;
  });

  // S must contain the support of beta; search for the first strict gap in
  // the |alpha| ranking at or after the deepest support position.
  std::size_t min_size = 0;
  for (std::size_t pos = 0; pos < p; ++pos) {
    if (beta[order[pos]] != 0.0) min_size = pos + 1;
  }
  min_size = std::max<std::size_t>(min_size, 1);

  std::size_t cut = 0;
  for (std::size_t k = min_size; k < p; ++k) {
    if (std::fabs(alpha[order[k - 1]]) > std::fabs(alpha[order[k]])) {
      cut = k;
      break;
    }
  }
  if (cut == 0) throw std::runtime_error("C1 unverifiable: no separating |alpha| gap");

  C1Result res;
  res.margin = std::fabs(alpha[order[cut - 1]]) - std::fabs(alpha[order[cut]]);
  res.set.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(cut));
  for (auto& j : res.set) j += 1;
  std::sort(res.set.begin(), res.set.end());

  if (sigma.kind == CovarianceSpec::Kind::ar1) {
    // Lemma-style bound needs a contiguous support 1..d.
    std::size_t d = 0;
    for (std::size_t j = 0; j < p; ++j) {
      if (beta[j] != 0.0) d = j + 1;
    }
    bool contiguous = d > 0;
    for (std::size_t j = 0; j < d && contiguous; ++j) {
      if (beta[j] == 0.0) contiguous = false;
    }
    if (contiguous) {
      double min_abs = std::fabs(alpha[0]);
      for (std::size_t j = 0; j < d; ++j) {
        min_abs = std::min(min_abs, std::fabs(alpha[j]));
      }
      const double ad = std::fabs(alpha[d - 1]);
      std::size_t extra = 0;
      if (sigma.rho != 0.0 && min_abs > 0.0 && ad > 0.0) {
        const double ratio = min_abs / ad;
        extra = static_cast<std::size_t>(
            std::max(0.0, std::ceil(std::log(ratio) / std::log(std::fabs(sigma.rho)))));
      }
      res.ar_bound = d + extra;
    }
  }
  return res;
}

}  // namespace kfuse
