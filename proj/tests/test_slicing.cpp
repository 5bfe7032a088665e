#include <doctest.h>

#include <cmath>
#include <vector>

#include "kfuse/rng.hpp"
#include "kfuse/slicing.hpp"

using namespace kfuse;

TEST_CASE("assign_continuous example and rank invariance") {
  const std::vector<double> y{5, 1, 3, 2, 6, 4};
  const auto a = assign_continuous(y, 3);
  CHECK(a.H == std::vector<int>{3, 1, 2, 1, 3, 2});
  CHECK(a.counts == std::vector<int>{2, 2, 2});
  CHECK_FALSE(a.has_empty_slice);

  CHECK(assign_continuous(std::vector<double>{1, 2}, 2).H == std::vector<int>{1, 2});
  CHECK_THROWS(assign_continuous(std::vector<double>{1, 2}, 3));

  std::vector<double> cubed(y);
  for (auto& v : cubed) v = v * v * v;
  CHECK(assign_continuous(cubed, 3).H == a.H);
}

TEST_CASE("assign_continuous slice sizes are balanced") {
  Rng rng(3);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 10 + rng.uniform_below(400);
    const int g = 2 + static_cast<int>(rng.uniform_below(8));
    std::vector<double> y(n);
    for (auto& v : y) v = rng.normal();
    const auto a = assign_continuous(y, g);
    int mn = a.counts[0], mx = a.counts[0];
    for (int c : a.counts) {
      mn = std::min(mn, c);
      mx = std::max(mx, c);
    }
    CHECK(mn >= 1);
    CHECK(mx - mn <= 1);
    // finite-sample slice-probability bound
    CHECK(static_cast<double>(mx) / static_cast<double>(n) <= 2.0 / g);

    for (auto g2 : {+[](double x) { return std::atan(x); },
                    +[](double x) { return std::exp(x); }}) {
      std::vector<double> ty(y);
      for (auto& v : ty) v = g2(v);
      CHECK(assign_continuous(ty, g).H == a.H);
    }
  }
}

TEST_CASE("assign_count truncation rule") {
  const auto a = assign_count(std::vector<double>{0, 1, 2, 5}, 3);
  CHECK(a.H == std::vector<int>{1, 2, 3, 3});
  CHECK_FALSE(a.has_empty_slice);

  const auto zeros = assign_count(std::vector<double>{0, 0, 0}, 3);
  CHECK(zeros.H == std::vector<int>{1, 1, 1});
  CHECK(zeros.has_empty_slice);
  CHECK(zeros.nonempty_slices() == 1);

  CHECK(assign_count(std::vector<double>{7, 9}, 4).H == std::vector<int>{4, 4});
  CHECK_THROWS(assign_count(std::vector<double>{-1, 2}, 3));
  CHECK_THROWS(assign_count(std::vector<double>{0.5, 2}, 3));
}

TEST_CASE("assign_categorical") {
  const auto a = assign_categorical(std::vector<double>{1, 2, 1, 3}, 3);
  CHECK(a.H == std::vector<int>{1, 2, 1, 3});
  CHECK(a.counts == std::vector<int>{2, 1, 1});
  CHECK_FALSE(a.has_empty_slice);

  CHECK(assign_categorical(std::vector<double>{1, 2, 2, 1}, 2).G == 2);

  const auto missing = assign_categorical(std::vector<double>{2, 2}, 2);
  CHECK(missing.has_empty_slice);
  CHECK_THROWS(assign_categorical(std::vector<double>{0, 1}, 2));
}

TEST_CASE("build_grid defaults") {
  Rng rng(9);
  Response cont;
  cont.kind = ResponseKind::continuous;
  cont.values.resize(200);
  for (auto& v : cont.values) v = rng.normal();
  const auto grid = build_grid(cont);
  CHECK(grid.G_list == std::vector<int>{3, 4, 5, 6});

  Response small = cont;
  small.values.resize(25);
  CHECK(build_grid(small).G_list == std::vector<int>{3, 4});

  Response cat;
  cat.kind = ResponseKind::categorical;
  cat.levels = 5;
  cat.values = {1, 2, 3, 4, 5, 1, 2, 3};
  const auto cgrid = build_grid(cat);
  REQUIRE(cgrid.assignments.size() == 1);
  CHECK(cgrid.G_list == std::vector<int>{5});

  CHECK_THROWS(build_grid(small, std::vector<int>{3, 400}));

  Response count;
  count.kind = ResponseKind::count;
  count.values = {0, 1, 2, 3, 0, 1, 5, 9, 2, 4};
  CHECK(build_grid(count).G_list == std::vector<int>{3});  // ceil(ln 10) = 3
}
