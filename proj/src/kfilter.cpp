#include "kfuse/kfilter.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "kfuse/core_stats.hpp"

namespace kfuse {

int resolve_threads(int requested) {
  if (requested < 0) throw std::invalid_argument("thread count must be >= 0");
  return requested == 0 ? omp_get_max_threads() : requested;
}

std::size_t default_dn(std::size_t n, std::size_t p) {
  const auto dn = static_cast<std::size_t>(
      std::ceil(static_cast<double>(n) / std::log(static_cast<double>(n))));
  return std::min(std::max<std::size_t>(dn, 1), p);
}

namespace {

struct ColumnScratch {
  std::vector<std::uint32_t> order;
  std::vector<int> seen;  // per-slice running counts
};

// Merged scan over the column sorted ascending: maintain per-slice counts,
// evaluate the CDF spread only at boundaries between distinct values (the
// right-continuous sup is attained there).
double khat_scan(std::span<const double> x, const SliceAssignment& a,
                 ColumnScratch& scratch) {
  if (a.nonempty_slices() < 2) return 0.0;
  const std::size_t n = x.size();
  const int G = a.G;
  auto& seen = scratch.seen;
  seen.assign(static_cast<std::size_t>(G), 0);
  const auto& order = scratch.order;
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ++seen[static_cast<std::size_t>(a.H[order[i]] - 1)];
    if (i + 1 < n && x[order[i + 1]] == x[order[i]]) continue;
    double mx = -1.0, mn = 2.0;
    for (int l = 0; l < G; ++l) {
      const int total = a.counts[static_cast<std::size_t>(l)];
      if (total == 0) continue;
      const double f = static_cast<double>(seen[static_cast<std::size_t>(l)]) /
                       static_cast<double>(total);
      if (f > mx) mx = f;
      if (f < mn) mn = f;
    }
    if (mx - mn > best) best = mx - mn;
  }
  return best;
}

void sort_column(std::span<const double> x, ColumnScratch& scratch) {
  const std::size_t n = x.size();
  scratch.order.resize(n);
  std::iota(scratch.order.begin(), scratch.order.end(), std::uint32_t{0});
  std::sort(scratch.order.begin(), scratch.order.end(),
            [&](std::uint32_t a, std::uint32_t b) {
              if (x[a] != x[b]) return x[a] < x[b];
              return a < b;
            });
}

bool has_nan(std::span<const double> x) {
  for (double v : x) {
    if (std::isnan(v)) return true;
  }
  return false;
}

VariableScore score_column(std::span<const double> x, const SliceGrid& grid,
                           bool record_per_scheme, ColumnScratch& scratch) {
  VariableScore s;
  sort_column(x, scratch);
  if (record_per_scheme) s.per_scheme.reserve(grid.assignments.size());
  for (const auto& a : grid.assignments) {
    if (x.size() != a.H.size()) throw std::invalid_argument("length mismatch");
    const double k = khat_scan(x, a, scratch);
    if (a.nonempty_slices() < 2) s.degenerate = true;
    s.score += k;
    if (record_per_scheme) s.per_scheme.push_back(k);
  }
  return s;
}

}  // namespace

double khat_single(std::span<const double> x, const SliceAssignment& a) {
  if (x.size() != a.H.size()) throw std::invalid_argument("length mismatch");
  if (has_nan(x)) throw std::invalid_argument("NaN in sample");
  ColumnScratch scratch;
  sort_column(x, scratch);
  return khat_scan(x, a, scratch);
}

double khat_single_bruteforce(std::span<const double> x, const SliceAssignment& a) {
  if (x.size() != a.H.size()) throw std::invalid_argument("length mismatch");
  if (has_nan(x)) throw std::invalid_argument("NaN in sample");
  const int G = a.G;
  std::vector<std::vector<double>> groups(static_cast<std::size_t>(G));
  for (std::size_t i = 0; i < x.size(); ++i) {
    groups[static_cast<std::size_t>(a.H[i] - 1)].push_back(x[i]);
  }
  std::vector<SortedSample> samples;
  for (auto& g : groups) {
    if (!g.empty()) samples.push_back(SortedSample::from_unsorted(std::move(g)));
  }
  if (samples.size() < 2) return 0.0;
  double best = 0.0;
  for (std::size_t l = 0; l < samples.size(); ++l) {
    for (std::size_t m = l + 1; m < samples.size(); ++m) {
      best = std::max(best, ks_two_sample_bruteforce(samples[l], samples[m]));
    }
  }
  return best;
}

VariableScore khat_fused(std::span<const double> x, const SliceGrid& grid,
                         bool record_per_scheme) {
  if (grid.assignments.empty()) throw std::invalid_argument("empty slice grid");
  if (has_nan(x)) throw std::invalid_argument("NaN in sample");
  ColumnScratch scratch;
  return score_column(x, grid, record_per_scheme, scratch);
}

ScreeningResult make_screening_result(std::vector<VariableScore> scores_by_index,
                                      std::size_t d_n, std::string method_label) {
  const std::size_t p = scores_by_index.size();
  if (d_n < 1 || d_n > p) throw std::invalid_argument("d_n must be in 1..p");
  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores_by_index[a].score != scores_by_index[b].score) {
      return scores_by_index[a].score > scores_by_index[b].score;
    }
    return a < b;
  });
  ScreeningResult res;
  res.method_label = std::move(method_label);
  res.scores.reserve(p);
  res.ranking.reserve(p);
  for (std::size_t pos = 0; pos < p; ++pos) {
    res.ranking.push_back(order[pos] + 1);
    res.scores.push_back(std::move(scores_by_index[order[pos]]));
    res.scores.back().index = order[pos] + 1;
  }
  res.selected.assign(res.ranking.begin(),
                      res.ranking.begin() + static_cast<std::ptrdiff_t>(d_n));
  return res;
}

ScreeningResult screen(const Matrix& x, const Response& resp, const FilterConfig& cfg) {
  const std::size_t n = x.rows;
  const std::size_t p = x.cols;
  if (p == 0) throw std::invalid_argument("empty matrix");
  if (resp.size() != n) throw std::invalid_argument("response length mismatch");
  const SliceGrid grid =
      cfg.grid.assignments.empty() ? build_grid(resp) : cfg.grid;
  for (const auto& a : grid.assignments) {
    if (a.H.size() != n) throw std::invalid_argument("grid length mismatch");
  }
  const std::size_t d_n = cfg.d_n == 0 ? default_dn(n, p) : cfg.d_n;
  if (d_n > p) throw std::invalid_argument("d_n must be in 1..p");

  std::vector<VariableScore> scores(p);
  std::vector<char> bad(p, 0);
  const int nt = resolve_threads(cfg.threads);

#pragma omp parallel num_threads(nt)
  {
    ColumnScratch scratch;
#pragma omp for schedule(static)
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(p); ++j) {
      const auto col = x.col(static_cast<std::size_t>(j));
      if (has_nan(col)) {
        bad[static_cast<std::size_t>(j)] = 1;
        continue;
      }
      scores[static_cast<std::size_t>(j)] =
          score_column(col, grid, cfg.record_per_scheme, scratch);
    }
  }
  for (std::size_t j = 0; j < p; ++j) {
    if (bad[j]) {
      throw std::runtime_error("NaN in column " + std::to_string(j + 1));
    }
  }
  return make_screening_result(std::move(scores), d_n, cfg.method_label);
}

}  // namespace kfuse
