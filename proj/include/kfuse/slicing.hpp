#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kfuse {

enum class ResponseKind { continuous, count, categorical };

const char* to_string(ResponseKind k);
ResponseKind response_kind_from_string(const std::string& s);

// Typed response vector. Count and categorical values are stored as doubles
// but must be integral; validate() enforces the kind's constraints.
struct Response {
  ResponseKind kind = ResponseKind::continuous;
  std::vector<double> values;
  int levels = 0;  // categorical only

  std::size_t size() const { return values.size(); }
  void validate() const;
};

// One partition of the sample into slices 1..G.
struct SliceAssignment {
  int G = 0;
  std::vector<int> H;       // slice label per observation, 1..G
  std::vector<int> counts;  // size G
  bool has_empty_slice = false;

  int nonempty_slices() const;
};

// The fusion grid: one assignment per slicing scheme.
struct SliceGrid {
  std::vector<SliceAssignment> assignments;
  std::vector<int> G_list;
};

// Continuous response: observation of stable rank r goes to the smallest l
// with r <= ceil(l*n/G). Depends only on the rank vector of y, hence
// invariant under strictly increasing transforms.
SliceAssignment assign_continuous(std::span<const double> y, int G);

// Count response: H = y+1 if y < G-1, else G. Slices may be empty (flagged).
SliceAssignment assign_count(std::span<const double> y, int G);

// Categorical response with levels 1..G: H = y. Absent levels are flagged.
SliceAssignment assign_categorical(std::span<const double> y, int levels);

// ceil(ln n), the largest slice count of the default grid.
int default_gmax(std::size_t n);

// Default grid: G = 3..ceil(ln n) for continuous and count responses (count
// through the truncation rule); the single H=Y assignment for categorical
// responses. An explicit G_list overrides the default (ignored for
// categorical); it is normalized to strictly increasing.
SliceGrid build_grid(const Response& resp,
                     std::optional<std::vector<int>> G_list = std::nullopt);

}  // namespace kfuse
