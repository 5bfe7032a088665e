#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kfuse {

// Column-major n x p data matrix. Columns are the unit of parallel work
// throughout, so per-variable access stays contiguous.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[j * rows + i]; }
  double operator()(std::size_t i, std::size_t j) const { return data[j * rows + i]; }

  std::span<double> col(std::size_t j) { return {data.data() + j * rows, rows}; }
  std::span<const double> col(std::size_t j) const { return {data.data() + j * rows, rows}; }
};

}  // namespace kfuse
