#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "kfuse/matrix.hpp"
#include "kfuse/slicing.hpp"

namespace kfuse {

// One of the simulation models 1a..7.
struct ModelSpec {
  std::string id;
  std::size_t n = 0;
  std::size_t p = 0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Dataset {
  Matrix x;
  Response resp;
  std::vector<std::size_t> truth;  // 1-based active set
  std::string label;
};

// Known model ids, in canonical order.
const std::vector<std::string>& model_ids();

// Minimum admissible p for the given model.
std::size_t model_min_p(const std::string& id);

// Deterministic generator: a pure function of the spec, seed included.
Dataset generate(const ModelSpec& spec);

enum class DrawKind { normal, cauchy, t2, uniform, poisson, mixture };

// iid draws from one named distribution; mu applies to poisson only.
std::vector<double> rng_draws(DrawKind kind, std::uint64_t seed, std::size_t n,
                              double mu = 0.0);

}  // namespace kfuse
