#pragma once

#include <string>
#include <vector>

#include "kfuse/kfilter.hpp"
#include "kfuse/simgen.hpp"

namespace kfuse {

// Shortest round-trip decimal rendering (std::to_chars); read_value parses it
// back bit-exactly.
std::string format_double(double v);

// Rectangular CSV with header; the response column is selected by name or by
// 1-based index. Cell errors are reported with data-row and column location.
Dataset read_csv(const std::string& path, const std::string& response_col,
                 ResponseKind kind);

// Header y,x1..xp, response first; full-precision values. Also writes a
// metadata sidecar at <path>.meta.json (model id, seed, truth, response kind).
void write_dataset_csv(const Dataset& ds, const std::string& path,
                       const std::string& model_id = "", std::uint64_t seed = 0);

// Ranking table: variable,method,statistic,rank,selected.
void write_screen_csv(const std::vector<ScreeningResult>& results,
                      const std::string& path);

}  // namespace kfuse
