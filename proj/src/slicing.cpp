#include "kfuse/slicing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kfuse/core_stats.hpp"

namespace kfuse {

const char* to_string(ResponseKind k) {
  switch (k) {
    case ResponseKind::continuous: return "continuous";
    case ResponseKind::count: return "count";
    case ResponseKind::categorical: return "categorical";
  }
  return "?";
}

ResponseKind response_kind_from_string(const std::string& s) {
  if (s == "continuous") return ResponseKind::continuous;
  if (s == "count") return ResponseKind::count;
  if (s == "categorical") return ResponseKind::categorical;
  throw std::invalid_argument("unknown response kind: " + s);
}

namespace {

bool is_integral_value(double v) {
  return std::isfinite(v) && v == std::trunc(v);
}

}  // namespace

void Response::validate() const {
  if (values.size() < 2) throw std::invalid_argument("response needs n >= 2");
  switch (kind) {
    case ResponseKind::continuous:
      for (double v : values) {
        if (std::isnan(v)) throw std::invalid_argument("NaN in response");
      }
      break;
    case ResponseKind::count:
      for (double v : values) {
        if (!is_integral_value(v) || v < 0.0) {
          throw std::invalid_argument("count response must be non-negative integers");
        }
      }
      break;
    case ResponseKind::categorical:
      if (levels < 2) throw std::invalid_argument("categorical response needs levels >= 2");
      for (double v : values) {
        if (!is_integral_value(v) || v < 1.0 || v > static_cast<double>(levels)) {
          throw std::invalid_argument("categorical levels must be 1..G");
        }
      }
      break;
  }
}

int SliceAssignment::nonempty_slices() const {
  int k = 0;
  for (int c : counts) k += (c > 0);
  return k;
}

SliceAssignment assign_continuous(std::span<const double> y, int G) {
  const std::size_t n = y.size();
  if (G < 2) throw std::invalid_argument("need at least 2 slices");
  if (static_cast<std::size_t>(G) > n) {
    throw std::invalid_argument("more slices than observations");
  }
  const auto ranks = ranks_stable(y);
  const auto cuts = quantile_rank_thresholds(n, static_cast<std::size_t>(G));
  SliceAssignment a;
  a.G = G;
  a.H.resize(n);
  a.counts.assign(static_cast<std::size_t>(G), 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto it = std::lower_bound(cuts.begin(), cuts.end(), ranks[i]);
    const int l = static_cast<int>(it - cuts.begin()) + 1;
    a.H[i] = l;
    ++a.counts[static_cast<std::size_t>(l - 1)];
  }
  return a;
}

SliceAssignment assign_count(std::span<const double> y, int G) {
  if (G < 2) throw std::invalid_argument("need at least 2 slices");
  SliceAssignment a;
  a.G = G;
  a.H.resize(y.size());
  a.counts.assign(static_cast<std::size_t>(G), 0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double v = y[i];
    if (!is_integral_value(v) || v < 0.0) {
      throw std::invalid_argument("count response must be non-negative integers");
    }
    const int l = (v < static_cast<double>(G - 1))
                      ? static_cast<int>(v) + 1
                      : G;
    a.H[i] = l;
    ++a.counts[static_cast<std::size_t>(l - 1)];
  }
  a.has_empty_slice =
      std::any_of(a.counts.begin(), a.counts.end(), [](int c) { return c == 0; });
  return a;
}

SliceAssignment assign_categorical(std::span<const double> y, int levels) {
  if (levels < 2) throw std::invalid_argument("categorical response needs levels >= 2");
  SliceAssignment a;
  a.G = levels;
  a.H.resize(y.size());
  a.counts.assign(static_cast<std::size_t>(levels), 0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double v = y[i];
    if (!is_integral_value(v) || v < 1.0 || v > static_cast<double>(levels)) {
      throw std::invalid_argument("categorical levels must be 1..G");
    }
    const int l = static_cast<int>(v);
    a.H[i] = l;
    ++a.counts[static_cast<std::size_t>(l - 1)];
  }
  a.has_empty_slice =
      std::any_of(a.counts.begin(), a.counts.end(), [](int c) { return c == 0; });
  return a;
}

int default_gmax(std::size_t n) {
  return static_cast<int>(std::ceil(std::log(static_cast<double>(n))));
}

SliceGrid build_grid(const Response& resp, std::optional<std::vector<int>> G_list) {
  resp.validate();
  const std::size_t n = resp.size();
  SliceGrid grid;

  if (resp.kind == ResponseKind::categorical) {
    grid.assignments.push_back(assign_categorical(resp.values, resp.levels));
    grid.G_list.push_back(resp.levels);
    return grid;
  }

  std::vector<int> gs;
  if (G_list.has_value()) {
    gs = std::move(*G_list);
    if (gs.empty()) throw std::invalid_argument("empty slice list");
    std::sort(gs.begin(), gs.end());
    gs.erase(std::unique(gs.begin(), gs.end()), gs.end());
    for (int g : gs) {
      if (g < 2) throw std::invalid_argument("need at least 2 slices");
      if (static_cast<std::size_t>(g) > n) {
        throw std::invalid_argument("more slices than observations");
      }
    }
  } else {
    if (n < 8) throw std::invalid_argument("default grid needs n >= 8");
    for (int g = 3; g <= default_gmax(n); ++g) gs.push_back(g);
  }

  for (int g : gs) {
    grid.assignments.push_back(resp.kind == ResponseKind::count
                                   ? assign_count(resp.values, g)
                                   : assign_continuous(resp.values, g));
    grid.G_list.push_back(g);
  }
  return grid;
}

}  // namespace kfuse
