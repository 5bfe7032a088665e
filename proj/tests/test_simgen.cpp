#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "kfuse/core_stats.hpp"
#include "kfuse/simgen.hpp"

using namespace kfuse;

namespace {

double sample_cor(std::span<const double> a, std::span<const double> b) {
  return pearson(a, b);
}

double mean_of(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

TEST_CASE("generate is deterministic in the seed") {
  const ModelSpec spec{"2b", 60, 15, 987654321};
  const Dataset a = generate(spec);
  const Dataset b = generate(spec);
  CHECK(a.x.data == b.x.data);
  CHECK(a.resp.values == b.resp.values);
  CHECK(a.truth == b.truth);

  const Dataset c = generate({"2b", 60, 15, 987654322});
  CHECK(a.x.data != c.x.data);
}

TEST_CASE("compound symmetry and AR correlations match the construction") {
  const Dataset cs = generate({"1a", 100000, 2, 31});
  CHECK(sample_cor(cs.x.col(0), cs.x.col(1)) == doctest::Approx(0.7).epsilon(0.015));

  const Dataset ar = generate({"2a", 100000, 10, 37});
  CHECK(sample_cor(ar.x.col(0), ar.x.col(2)) == doctest::Approx(0.49).epsilon(0.021));
  CHECK(sample_cor(ar.x.col(0), ar.x.col(1)) == doctest::Approx(0.7).epsilon(0.015));
}

TEST_CASE("transform coupling between 1a/1b and 2a/2b/2c") {
  const std::uint64_t seed = 555;
  const Dataset a = generate({"1a", 150, 12, seed});
  const Dataset b = generate({"1b", 150, 12, seed});
  CHECK(a.resp.values == b.resp.values);
  for (std::size_t i = 0; i < a.x.data.size(); ++i) {
    CHECK(b.x.data[i] == std::pow(a.x.data[i], 9.0));
  }
  // ranks preserved column by column
  for (std::size_t j = 0; j < a.x.cols; ++j) {
    CHECK(ranks_stable(a.x.col(j)) == ranks_stable(b.x.col(j)));
  }

  const Dataset a2 = generate({"2a", 150, 12, seed});
  const Dataset b2 = generate({"2b", 150, 12, seed});
  const Dataset c2 = generate({"2c", 150, 12, seed});
  CHECK(a2.resp.values == b2.resp.values);
  CHECK(a2.x.data == c2.x.data);
  for (std::size_t i = 0; i < a2.resp.values.size(); ++i) {
    CHECK(c2.resp.values[i] == std::exp(a2.resp.values[i]));
  }
  for (std::size_t i = 0; i < a2.x.data.size(); ++i) {
    CHECK(b2.x.data[i] == std::exp(2.0 * a2.x.data[i]));
  }
}

TEST_CASE("model invariants") {
  CHECK_THROWS(generate({"5", 100, 21, 1}));   // p below the model minimum
  CHECK_THROWS(generate({"2a", 100, 9, 1}));
  CHECK_THROWS(generate({"9z", 100, 30, 1}));  // unknown id
  CHECK(generate({"5", 50, 22, 1}).truth ==
        std::vector<std::size_t>{1, 2, 3, 4, 5, 20, 21, 22});
  CHECK(generate({"6", 50, 4, 1}).resp.kind == ResponseKind::count);
  const Dataset m7 = generate({"7", 50, 12, 1});
  CHECK(m7.resp.kind == ResponseKind::categorical);
  CHECK(m7.resp.levels == 5);
  CHECK(m7.truth == std::vector<std::size_t>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
}

TEST_CASE("model 7 classes are balanced and signal columns bimodal") {
  const Dataset ds = generate({"7", 200, 14, 77});
  std::vector<int> counts(6, 0);
  for (double v : ds.resp.values) ++counts[static_cast<std::size_t>(v)];
  for (int g = 1; g <= 5; ++g) CHECK(counts[static_cast<std::size_t>(g)] == 40);

  // active column for class 1 clusters near +-3 on class-1 rows
  int inside = 0, total = 0;
  for (std::size_t i = 0; i < 200; ++i) {
    if (ds.resp.values[i] == 1.0) {
      ++total;
      const double v = std::fabs(ds.x(i, 0));
      inside += (v > 1.5 && v < 4.5);
    }
  }
  CHECK(total == 40);
  CHECK(inside == total);
}

TEST_CASE("model 6 responses are counts with plausible means") {
  const Dataset ds = generate({"6", 5000, 3, 3});
  double cap = 0.0;
  for (double v : ds.resp.values) {
    CHECK(v >= 0.0);
    CHECK(v == std::trunc(v));
    cap = std::max(cap, v);
  }
  CHECK(cap > 0.0);  // not all zero

  // conditional on a moderate linear predictor, mean(Y) tracks mean(exp(eta))
  const Dataset big = generate({"6", 40000, 2, 13});
  double sum_y = 0.0, sum_mu = 0.0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < 40000; ++i) {
    const double eta = 0.8 * big.x(i, 0) - 0.8 * big.x(i, 1);
    if (std::fabs(eta) < 1.0) {
      sum_y += big.resp.values[i];
      sum_mu += std::exp(eta);
      ++m;
    }
  }
  REQUIRE(m > 10000);
  CHECK(sum_y / static_cast<double>(m) ==
        doctest::Approx(sum_mu / static_cast<double>(m)).epsilon(0.05));
}

TEST_CASE("rng_draws distributions") {
  const auto zeros = rng_draws(DrawKind::poisson, 1, 100, 0.0);
  CHECK(std::all_of(zeros.begin(), zeros.end(), [](double v) { return v == 0.0; }));

  auto cauchy = rng_draws(DrawKind::cauchy, 2, 100000);
  std::nth_element(cauchy.begin(), cauchy.begin() + 50000, cauchy.end());
  CHECK(std::fabs(cauchy[50000]) < 0.02);

  const auto normal = rng_draws(DrawKind::normal, 3, 100000);
  CHECK(std::fabs(mean_of(normal)) < 0.01);
  double var = 0.0;
  for (double v : normal) var += v * v;
  var /= static_cast<double>(normal.size());
  CHECK(var == doctest::Approx(1.0).epsilon(0.02));

  const auto pois_small = rng_draws(DrawKind::poisson, 4, 20000, 3.0);
  CHECK(mean_of(pois_small) == doctest::Approx(3.0).epsilon(0.02));
  const auto pois_big = rng_draws(DrawKind::poisson, 5, 20000, 50.0);
  CHECK(mean_of(pois_big) == doctest::Approx(50.0).epsilon(0.01));
  for (double v : pois_big) CHECK(v == std::trunc(v));
  const auto pois_huge = rng_draws(DrawKind::poisson, 6, 100, 1e12);
  CHECK(mean_of(pois_huge) == doctest::Approx(1e12).epsilon(1e-5));

  const auto mix = rng_draws(DrawKind::mixture, 7, 20000);
  CHECK(std::fabs(mean_of(mix)) < 0.1);
  int near = 0;
  for (double v : mix) near += (std::fabs(std::fabs(v) - 3.0) < 1.8);  // 6 sigma
  CHECK(near == 20000);

  auto t2 = rng_draws(DrawKind::t2, 8, 100000);
  std::nth_element(t2.begin(), t2.begin() + 50000, t2.end());
  CHECK(std::fabs(t2[50000]) < 0.02);

  CHECK_THROWS(rng_draws(DrawKind::poisson, 1, 10, -1.0));
}
