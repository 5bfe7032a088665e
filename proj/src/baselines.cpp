#include "kfuse/baselines.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "kfuse/core_stats.hpp"

namespace kfuse {

namespace {

bool has_nan(std::span<const double> v) {
  for (double x : v) {
    if (std::isnan(x)) return true;
  }
  return false;
}

template <typename ScoreFn>
ScreeningResult screen_by(const Matrix& x, std::size_t d_n, int threads,
                          std::string label, ScoreFn&& score_fn) {
  const std::size_t p = x.cols;
  if (p == 0) throw std::invalid_argument("empty matrix");
  std::vector<VariableScore> scores(p);
  std::vector<char> bad(p, 0);
  const int nt = resolve_threads(threads);
#pragma omp parallel for num_threads(nt) schedule(static)
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(p); ++j) {
    const auto col = x.col(static_cast<std::size_t>(j));
    if (has_nan(col)) {
      bad[static_cast<std::size_t>(j)] = 1;
      continue;
    }
    scores[static_cast<std::size_t>(j)] = score_fn(col);
  }
  for (std::size_t j = 0; j < p; ++j) {
    if (bad[j]) throw std::runtime_error("NaN in column " + std::to_string(j + 1));
  }
  return make_screening_result(std::move(scores), d_n, std::move(label));
}

bool is_constant(std::span<const double> v) {
  for (double x : v) {
    if (x != v[0]) return false;
  }
  return true;
}

}  // namespace

ScreeningResult sis_screen(const Matrix& x, std::span<const double> y,
                           std::size_t d_n, int threads) {
  if (y.size() != x.rows) throw std::invalid_argument("response length mismatch");
  if (has_nan(y)) throw std::invalid_argument("NaN in response");
  if (is_constant(y)) throw std::invalid_argument("degenerate variable");
  return screen_by(x, d_n, threads, "sis", [&](std::span<const double> col) {
    VariableScore s;
    if (is_constant(col)) {
      s.degenerate = true;
      return s;
    }
    s.score = std::fabs(pearson(col, y));
    return s;
  });
}

ScreeningResult rcs_screen(const Matrix& x, std::span<const double> y,
                           std::size_t d_n, int threads) {
  if (y.size() != x.rows) throw std::invalid_argument("response length mismatch");
  if (has_nan(y)) throw std::invalid_argument("NaN in response");
  return screen_by(x, d_n, threads, "rcs", [&](std::span<const double> col) {
    VariableScore s;
    s.score = std::fabs(kendall_tau(col, y));
    return s;
  });
}

ScreeningResult dcs_screen(const Matrix& x, const Response& resp,
                           std::size_t d_n, int threads) {
  resp.validate();
  if (resp.size() != x.rows) throw std::invalid_argument("response length mismatch");
  Matrix y;
  if (resp.kind == ResponseKind::categorical) {
    y = Matrix(x.rows, static_cast<std::size_t>(resp.levels));
    for (std::size_t i = 0; i < x.rows; ++i) {
      y(i, static_cast<std::size_t>(resp.values[i]) - 1) = 1.0;
    }
  } else {
    y = Matrix(x.rows, 1);
    for (std::size_t i = 0; i < x.rows; ++i) y(i, 0) = resp.values[i];
  }
  const DistanceCorrelationReference ref(y);
  return screen_by(x, d_n, threads, "dcs", [&](std::span<const double> col) {
    VariableScore s;
    s.score = ref.dcor(col, &s.degenerate);
    return s;
  });
}

}  // namespace kfuse
