#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "kfuse/core_stats.hpp"
#include "kfuse/kfilter.hpp"
#include "kfuse/rng.hpp"
#include "kfuse/simgen.hpp"

using namespace kfuse;

namespace {

SliceAssignment make_assignment(std::vector<int> h, int g) {
  SliceAssignment a;
  a.G = g;
  a.counts.assign(static_cast<std::size_t>(g), 0);
  for (int l : h) ++a.counts[static_cast<std::size_t>(l - 1)];
  a.H = std::move(h);
  for (int c : a.counts) {
    if (c == 0) a.has_empty_slice = true;
  }
  return a;
}

bool bitwise_equal(double a, double b) {
  return std::memcmp(&a, &b, sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("khat_single examples") {
  CHECK(khat_single(std::vector<double>{1, 2, 3, 4}, make_assignment({1, 1, 2, 2}, 2)) == 1.0);

  const std::vector<double> x{1, 2, 3, 4, 5, 6};
  const auto a = make_assignment({1, 2, 3, 1, 2, 3}, 3);
  CHECK(khat_single(x, a) == 0.5);
  CHECK(khat_single(x, a) == khat_single_bruteforce(x, a));

  CHECK_THROWS(khat_single(std::vector<double>{1, 2}, a));
}

TEST_CASE("binary khat reduces to the two-sample KS statistic") {
  Rng rng(41);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 6 + rng.uniform_below(50);
    std::vector<double> x(n);
    std::vector<int> h(n);
    std::vector<double> g1, g2;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = rng.normal();
      h[i] = 1 + static_cast<int>(rng.uniform_below(2));
      (h[i] == 1 ? g1 : g2).push_back(x[i]);
    }
    if (g1.empty() || g2.empty()) continue;
    const double k = khat_single(x, make_assignment(h, 2));
    const double ks = ks_two_sample(SortedSample::from_unsorted(g1),
                                    SortedSample::from_unsorted(g2));
    CHECK(k == ks);
  }
}

TEST_CASE("khat_single equals brute force on 1000 random instances") {
  Rng rng(43);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t n = 4 + rng.uniform_below(47);
    const int g = 2 + static_cast<int>(rng.uniform_below(3));
    std::vector<double> x(n);
    std::vector<int> h(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = (rep % 4 == 0) ? std::floor(rng.u01() * 6.0) : rng.normal();
      h[i] = 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(g)));
    }
    const auto a = make_assignment(h, g);
    const double fast = khat_single(x, a);
    CHECK(fast == khat_single_bruteforce(x, a));
    CHECK(fast >= 0.0);
    CHECK(fast <= 1.0);
  }
}

TEST_CASE("degenerate assignments contribute zero") {
  const std::vector<double> x{3, 1, 4, 1, 5};
  const auto single = make_assignment({2, 2, 2, 2, 2}, 3);
  CHECK(khat_single(x, single) == 0.0);
  CHECK(khat_single_bruteforce(x, single) == 0.0);

  SliceGrid grid;
  grid.assignments.push_back(single);
  grid.G_list.push_back(3);
  const auto score = khat_fused(x, grid, true);
  CHECK(score.score == 0.0);
  CHECK(score.degenerate);
}

TEST_CASE("khat_fused additivity and transform invariance") {
  Rng rng(47);
  std::vector<double> x(80), y(80);
  for (std::size_t i = 0; i < 80; ++i) {
    x[i] = rng.normal();
    y[i] = rng.normal() + 0.8 * x[i];
  }
  SliceGrid one;
  one.assignments.push_back(assign_continuous(y, 4));
  one.G_list.push_back(4);
  SliceGrid twice = one;
  twice.assignments.push_back(one.assignments[0]);
  twice.G_list.push_back(4);

  const double k1 = khat_fused(x, one).score;
  CHECK(khat_fused(x, twice).score == 2.0 * k1);
  CHECK(k1 == khat_single(x, one.assignments[0]));

  const auto grid = build_grid(Response{ResponseKind::continuous, y, 0});
  const auto fused = khat_fused(x, grid, true);
  CHECK(fused.per_scheme.size() == grid.assignments.size());
  double total = 0.0;
  for (double v : fused.per_scheme) total += v;
  CHECK(fused.score == total);

  std::vector<double> tx(x);
  for (auto& v : tx) v = std::exp(v);
  CHECK(bitwise_equal(khat_fused(tx, grid).score, fused.score));
}

TEST_CASE("screen ranks, breaks ties by index, and validates") {
  // crafted scores via make_screening_result
  std::vector<VariableScore> scores(3);
  scores[0].score = 0.9;
  scores[1].score = 0.1;
  scores[2].score = 0.5;
  auto res = make_screening_result(std::move(scores), 2, "fused");
  CHECK(res.ranking == std::vector<std::size_t>{1, 3, 2});
  CHECK(res.selected == std::vector<std::size_t>{1, 3});
  CHECK(res.scores[0].index == 1);
  CHECK(res.scores[2].index == 2);

  std::vector<VariableScore> tie(2);
  tie[0].score = 0.5;
  tie[1].score = 0.5;
  CHECK(make_screening_result(std::move(tie), 1, "fused").selected ==
        std::vector<std::size_t>{1});

  const Dataset ds = generate({"1a", 60, 8, 99});
  FilterConfig cfg;
  cfg.d_n = 2;
  const auto sr = screen(ds.x, ds.resp, cfg);
  CHECK(sr.ranking.size() == 8);
  CHECK(sr.selected.size() == 2);

  cfg.d_n = 9;
  CHECK_THROWS(screen(ds.x, ds.resp, cfg));

  Matrix bad = ds.x;
  bad(3, 4) = std::nan("");
  cfg.d_n = 2;
  CHECK_THROWS_WITH_AS(screen(bad, ds.resp, cfg), "NaN in column 5",
                       std::runtime_error);
}

TEST_CASE("screen output is identical across thread counts") {
  const Dataset ds = generate({"2a", 100, 40, 7});
  FilterConfig cfg;
  cfg.d_n = 10;
  cfg.record_per_scheme = true;
  cfg.threads = 1;
  const auto serial = screen(ds.x, ds.resp, cfg);
  for (int t : {2, 4}) {
    cfg.threads = t;
    const auto par = screen(ds.x, ds.resp, cfg);
    REQUIRE(par.ranking == serial.ranking);
    CHECK(par.selected == serial.selected);
    for (std::size_t i = 0; i < par.scores.size(); ++i) {
      CHECK(bitwise_equal(par.scores[i].score, serial.scores[i].score));
    }
  }
}

TEST_CASE("row permutation leaves fused statistics unchanged") {
  Rng rng(53);
  const Dataset ds = generate({"3", 50, 6, 5});
  FilterConfig cfg;
  cfg.d_n = 3;
  const auto base = screen(ds.x, ds.resp, cfg);

  std::vector<std::size_t> perm(50);
  for (std::size_t i = 0; i < 50; ++i) perm[i] = i;
  for (std::size_t i = 49; i > 0; --i) {
    std::swap(perm[i], perm[rng.uniform_below(i + 1)]);
  }
  Dataset shuffled = ds;
  for (std::size_t i = 0; i < 50; ++i) {
    shuffled.resp.values[i] = ds.resp.values[perm[i]];
    for (std::size_t j = 0; j < 6; ++j) shuffled.x(i, j) = ds.x(perm[i], j);
  }
  const auto moved = screen(shuffled.x, shuffled.resp, cfg);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(bitwise_equal(moved.scores[i].score, base.scores[i].score));
  }
}

TEST_CASE("signal separates from an independent noise column") {
  // Model 2a signal variable vs appended independent noise, 500 paired draws
  int wins = 0;
  const int reps = 500;
  for (int r = 0; r < reps; ++r) {
    const Dataset ds = generate({"2a", 200, 10, 1000 + static_cast<std::uint64_t>(r)});
    Rng rng(derive_seed(0xAB, static_cast<std::uint64_t>(r)));
    std::vector<double> noise(200);
    for (auto& v : noise) v = rng.normal();
    const auto grid = build_grid(ds.resp);
    const double signal = khat_fused(ds.x.col(0), grid).score;
    const double indep = khat_fused(noise, grid).score;
    wins += (signal > indep);
  }
  CHECK(wins >= 495);  // >= 99% of 500
}
