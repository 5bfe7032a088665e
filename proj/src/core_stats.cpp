#include "kfuse/core_stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace kfuse {

SortedSample SortedSample::from_unsorted(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("empty sample");
  for (double x : v) {
    if (std::isnan(x)) throw std::invalid_argument("NaN in sample");
  }
  std::sort(v.begin(), v.end());
  SortedSample s;
  s.values = std::move(v);
  return s;
}

double empirical_cdf(const SortedSample& s, double x) {
  if (s.values.empty()) throw std::invalid_argument("empty sample");
  const auto it = std::upper_bound(s.values.begin(), s.values.end(), x);
  return static_cast<double>(it - s.values.begin()) /
         static_cast<double>(s.values.size());
}

double ks_two_sample(const SortedSample& a, const SortedSample& b) {
  const auto& av = a.values;
  const auto& bv = b.values;
  if (av.empty() || bv.empty()) throw std::invalid_argument("empty sample");
  const double na = static_cast<double>(av.size());
  const double nb = static_cast<double>(bv.size());
  std::size_t i = 0, j = 0;
  double best = 0.0;
  while (i < av.size() || j < bv.size()) {
    double v;
    if (i == av.size()) {
      v = bv[j];
    } else if (j == bv.size()) {
      v = av[i];
    } else {
      v = std::min(av[i], bv[j]);
    }
    while (i < av.size() && av[i] == v) ++i;
    while (j < bv.size() && bv[j] == v) ++j;
    const double d = std::fabs(static_cast<double>(i) / na -
                               static_cast<double>(j) / nb);
    if (d > best) best = d;
  }
  return best;
}

double ks_two_sample_bruteforce(const SortedSample& a, const SortedSample& b) {
  if (a.values.empty() || b.values.empty()) {
    throw std::invalid_argument("empty sample");
  }
  std::vector<double> pts(a.values);
  pts.insert(pts.end(), b.values.begin(), b.values.end());
  double best = 0.0;
  for (double x : pts) {
    const double d = std::fabs(empirical_cdf(a, x) - empirical_cdf(b, x));
    if (d > best) best = d;
  }
  return best;
}

std::vector<std::size_t> ranks_stable(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (v[a] != v[b]) return v[a] < v[b];
    return a < b;
  });
  std::vector<std::size_t> ranks(n);
  for (std::size_t r = 0; r < n; ++r) ranks[order[r]] = r + 1;
  return ranks;
}

std::vector<std::size_t> quantile_rank_thresholds(std::size_t n, std::size_t G) {
  if (G < 2) throw std::invalid_argument("need at least 2 slices");
  if (G > n) throw std::invalid_argument("more slices than observations");
  std::vector<std::size_t> cuts(G);
  for (std::size_t l = 1; l <= G; ++l) {
    // ceil(l*n/G) in integer arithmetic
    cuts[l - 1] = (l * n + G - 1) / G;
  }
  return cuts;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("need at least 2 observations");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw std::invalid_argument("degenerate variable");
  return sxy / std::sqrt(sxx * syy);
}

namespace {

// Counts strict inversions (i < j with v[i] > v[j]) while merge-sorting.
// Equal elements are taken from the left run first and never counted.
long long merge_count(std::vector<double>& v, std::vector<double>& tmp,
                      std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  long long cnt = merge_count(v, tmp, lo, mid) + merge_count(v, tmp, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      cnt += static_cast<long long>(mid - i);
      tmp[k++] = v[j++];
    } else {
      tmp[k++] = v[i++];
    }
  }
  while (i < mid) tmp[k++] = v[i++];
  while (j < hi) tmp[k++] = v[j++];
  std::copy(tmp.begin() + static_cast<std::ptrdiff_t>(lo),
            tmp.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return cnt;
}

long long tied_pairs(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  long long total = 0;
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    const long long t = static_cast<long long>(j - i);
    total += t * (t - 1) / 2;
    i = j;
  }
  return total;
}

void check_pair_input(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("length mismatch");
  if (x.size() < 2) throw std::invalid_argument("need at least 2 observations");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::isnan(x[i]) || std::isnan(y[i])) {
      throw std::invalid_argument("NaN in sample");
    }
  }
}

}  // namespace

double kendall_tau(std::span<const double> x, std::span<const double> y) {
  check_pair_input(x, y);
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (x[a] != x[b]) return x[a] < x[b];
    if (y[a] != y[b]) return y[a] < y[b];
    return a < b;
  });

  // Pairs tied in x (n1) and tied in both (n3), from runs of the sorted order.
  long long n1 = 0, n3 = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && x[order[j]] == x[order[i]]) ++j;
    const long long t = static_cast<long long>(j - i);
    n1 += t * (t - 1) / 2;
    std::size_t k = i;
    while (k < j) {
      std::size_t m = k;
      while (m < j && y[order[m]] == y[order[k]]) ++m;
      const long long u = static_cast<long long>(m - k);
      n3 += u * (u - 1) / 2;
      k = m;
    }
    i = j;
  }

  std::vector<double> ys(n);
  for (std::size_t r = 0; r < n; ++r) ys[r] = y[order[r]];
  long long n2 = tied_pairs(ys);
  std::vector<double> tmp(n);
  const long long discordant = merge_count(ys, tmp, 0, n);

  const long long n0 = static_cast<long long>(n) * (static_cast<long long>(n) - 1) / 2;
  const long long num = n0 - n1 - n2 + n3 - 2 * discordant;
  return static_cast<double>(num) / static_cast<double>(n0);
}

double kendall_tau_bruteforce(std::span<const double> x,
                              std::span<const double> y) {
  check_pair_input(x, y);
  const std::size_t n = x.size();
  long long num = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0.0 || dy == 0.0) continue;
      num += ((dx > 0.0) == (dy > 0.0)) ? 1 : -1;
    }
  }
  const long long n0 = static_cast<long long>(n) * (static_cast<long long>(n) - 1) / 2;
  return static_cast<double>(num) / static_cast<double>(n0);
}

DistanceCorrelationReference::DistanceCorrelationReference(const Matrix& y)
    : n_(y.rows) {
  if (n_ < 4) throw std::invalid_argument("distance correlation needs n >= 4");
  if (y.cols < 1) throw std::invalid_argument("response matrix has no columns");
  centered_.assign(n_ * n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = i + 1; k < n_; ++k) {
      double s = 0.0;
      for (std::size_t c = 0; c < y.cols; ++c) {
        const double d = y(i, c) - y(k, c);
        s += d * d;
      }
      const double dist = std::sqrt(s);
      centered_[i * n_ + k] = dist;
      centered_[k * n_ + i] = dist;
    }
  }
  std::vector<double> rowmean(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < n_; ++k) s += centered_[i * n_ + k];
    rowmean[i] = s / static_cast<double>(n_);
  }
  double grand = 0.0;
  for (double m : rowmean) grand += m;
  grand /= static_cast<double>(n_);
  dvar_y_ = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k) {
      double& c = centered_[i * n_ + k];
      c = c - rowmean[i] - rowmean[k] + grand;
      dvar_y_ += c * c;
    }
  }
  dvar_y_ /= static_cast<double>(n_) * static_cast<double>(n_);
}

double DistanceCorrelationReference::dcor(std::span<const double> x,
                                          bool* degenerate) const {
  if (x.size() != n_) throw std::invalid_argument("length mismatch");
  if (degenerate) *degenerate = false;
  std::vector<double> rowmean(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < n_; ++k) s += std::fabs(x[i] - x[k]);
    rowmean[i] = s / static_cast<double>(n_);
  }
  double grand = 0.0;
  for (double m : rowmean) grand += m;
  grand /= static_cast<double>(n_);

  double dcov = 0.0, dvar_x = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k) {
      const double a = std::fabs(x[i] - x[k]) - rowmean[i] - rowmean[k] + grand;
      dcov += a * centered_[i * n_ + k];
      dvar_x += a * a;
    }
  }
  const double nn = static_cast<double>(n_) * static_cast<double>(n_);
  dcov /= nn;
  dvar_x /= nn;
  if (dvar_x <= 0.0 || dvar_y_ <= 0.0) {
    if (degenerate) *degenerate = true;
    return 0.0;
  }
  const double r2 = dcov / std::sqrt(dvar_x * dvar_y_);
  return r2 > 0.0 ? std::sqrt(r2) : 0.0;
}

double distance_correlation(std::span<const double> x, const Matrix& y,
                            bool* degenerate) {
  DistanceCorrelationReference ref(y);
  return ref.dcor(x, degenerate);
}

namespace {

double eval_checked(const std::function<double(double)>& f, double t) {
  const double v = f(t);
  if (!std::isfinite(v)) {
    throw std::runtime_error("adaptive_quadrature: non-finite integrand value at x=" +
                             std::to_string(t));
  }
  return v;
}

double simpson_step(const std::function<double(double)>& f, double a, double b,
                    double fa, double fm, double fb, double whole, double tol,
                    int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = eval_checked(f, lm);
  const double frm = eval_checked(f, rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_quadrature(const std::function<double(double)>& f, double a,
                           double b, double tol) {
  if (!(a < b)) throw std::invalid_argument("adaptive_quadrature: need a < b");
  if (!(tol > 0.0)) throw std::invalid_argument("adaptive_quadrature: need tol > 0");
  const double fa = eval_checked(f, a);
  const double fb = eval_checked(f, b);
  const double m = 0.5 * (a + b);
  const double fm = eval_checked(f, m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 50);
}

}  // namespace kfuse
