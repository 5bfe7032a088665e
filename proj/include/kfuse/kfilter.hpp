#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kfuse/matrix.hpp"
#include "kfuse/slicing.hpp"

namespace kfuse {

// 0 means all available cores.
int resolve_threads(int requested);

struct FilterConfig {
  SliceGrid grid;   // if empty, screen() builds the default grid from the response
  std::size_t d_n = 0;
  bool record_per_scheme = false;
  int threads = 1;
  std::string method_label = "fused";
};

struct VariableScore {
  std::size_t index = 0;  // 1-based variable id
  double score = 0.0;     // fused statistic (or the baseline's statistic)
  std::vector<double> per_scheme;
  bool degenerate = false;  // fewer than 2 nonempty slices / constant column
};

struct ScreeningResult {
  std::vector<VariableScore> scores;     // all p, in ranking order
  std::vector<std::size_t> ranking;      // 1-based ids, descending score, ties by id
  std::vector<std::size_t> selected;     // first d_n of ranking
  std::string method_label;
};

// Single-scheme statistic: max over pairs of nonempty slices of the
// two-sample KS statistic between the slice subsamples of x. One sort plus
// one merged scan, O(n log n + nG). Returns 0 (degenerate) when fewer than 2
// slices are nonempty.
double khat_single(std::span<const double> x, const SliceAssignment& a);

// Testing oracle: explicit double loop over slice pairs with the KS
// statistic evaluated by counting at every sample point. O(n^2 G^2).
double khat_single_bruteforce(std::span<const double> x, const SliceAssignment& a);

// Fused statistic: sum of khat_single over all schemes of the grid.
VariableScore khat_fused(std::span<const double> x, const SliceGrid& grid,
                         bool record_per_scheme = false);

// Ranks all p columns by the fused statistic, descending, ties broken by
// ascending column index. Parallel over columns; output is deterministic and
// independent of thread count.
ScreeningResult screen(const Matrix& x, const Response& resp, const FilterConfig& cfg);

// Shared tail of every screener: order scores, build ranking and selection.
ScreeningResult make_screening_result(std::vector<VariableScore> scores_by_index,
                                      std::size_t d_n, std::string method_label);

// Default retention count ceil(n / ln n), capped at p.
std::size_t default_dn(std::size_t n, std::size_t p);

}  // namespace kfuse
