#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kfuse/simgen.hpp"

namespace kfuse {

enum class MethodKind { fused, kolmogorov, sis, rcs, dcs };

struct MethodSpec {
  MethodKind kind = MethodKind::fused;
  int G = 0;  // kolmogorov only

  std::string label() const;
};

// Parses "fused", "sis", "rcs", "dcs", or "kolmogorov:G".
MethodSpec parse_method(const std::string& s);

struct BenchConfig {
  ModelSpec model;  // its seed field is ignored; replicate seeds derive from master_seed
  std::size_t replicates = 100;
  std::vector<MethodSpec> methods;
  std::uint64_t master_seed = 42;
  int threads = 1;
  std::size_t bootstrap_resamples = 1000;
};

struct MethodResult {
  std::string label;
  bool skipped = false;
  std::string skip_reason;
  std::vector<std::size_t> mms;  // per replicate
  double median = 0.0;
  double se = 0.0;  // bootstrap SE of the median
};

struct BenchReport {
  std::string model_id;
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t replicates = 0;
  std::uint64_t master_seed = 0;
  std::size_t eval_keep = 0;  // active predictors the MMS must retain
  std::size_t truth_size = 0;
  std::vector<MethodResult> per_method;
  double runtime_seconds = 0.0;  // informational; never serialized
};

// Smallest k such that the top-k of the ranking contains the whole truth set;
// equivalently the worst rank position over the truth.
std::size_t minimum_model_size(std::span<const std::size_t> ranking,
                               const std::vector<std::size_t>& truth);

// Smallest k whose top-k contains at least `keep` members of the truth set.
// keep = |truth| reduces to minimum_model_size.
std::size_t minimum_model_size_keep(std::span<const std::size_t> ranking,
                                    const std::vector<std::size_t>& truth,
                                    std::size_t keep);

// Runs `replicates` datasets with seeds derived from master_seed, screens each
// with every applicable method, and aggregates minimum model sizes. Replicates
// execute in parallel; output is byte-identical for any thread count.
BenchReport run_bench(const BenchConfig& cfg);

// Aligned text table, one row per method, "median (se)" cells, em-dash for
// skipped methods.
std::string format_table(const BenchReport& report);

// Machine-readable emission (JSON text).
std::string report_json(const BenchReport& report);

}  // namespace kfuse
