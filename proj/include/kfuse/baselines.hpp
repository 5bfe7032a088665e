#pragma once

#include <cstddef>
#include <span>

#include "kfuse/kfilter.hpp"
#include "kfuse/matrix.hpp"
#include "kfuse/slicing.hpp"

namespace kfuse {

// Marginal correlation screening (SIS): ranks by |pearson(x_j, y)|.
// Constant columns score 0 (flagged) instead of aborting the screen.
ScreeningResult sis_screen(const Matrix& x, std::span<const double> y,
                           std::size_t d_n, int threads = 1);

// Rank correlation screening (RCS): ranks by |kendall_tau(x_j, y)|; the
// ranking is invariant under strictly increasing transforms of y and of any
// column.
ScreeningResult rcs_screen(const Matrix& x, std::span<const double> y,
                           std::size_t d_n, int threads = 1);

// Distance correlation screening (DCS). Continuous and count responses enter
// as a real vector; a categorical response is expanded into an n x levels
// 0/1 indicator matrix.
ScreeningResult dcs_screen(const Matrix& x, const Response& resp,
                           std::size_t d_n, int threads = 1);

}  // namespace kfuse
