#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "kfuse/csv.hpp"
#include "kfuse/simgen.hpp"

using namespace kfuse;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/kfuse_test_" + name) {}
  ~TempFile() {
    std::remove(path.c_str());
    std::remove((path + ".meta.json").c_str());
  }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("dataset round trip is bit exact") {
  for (const char* id : {"3", "6", "7"}) {
    TempFile f(std::string("roundtrip_") + id + ".csv");
    const Dataset ds = generate({id, 40, 12, 2024});
    write_dataset_csv(ds, f.path, id, 2024);
    const Dataset back = read_csv(f.path, "y", ds.resp.kind);
    REQUIRE(back.x.rows == ds.x.rows);
    REQUIRE(back.x.cols == ds.x.cols);
    CHECK(back.x.data == ds.x.data);
    CHECK(back.resp.values == ds.resp.values);
    if (ds.resp.kind == ResponseKind::categorical) {
      CHECK(back.resp.levels == ds.resp.levels);
    }
  }
}

TEST_CASE("small csv with named and indexed response") {
  TempFile f("named.csv");
  write_text(f.path, "a,y\n1,2\n3,4\n0.5,6\n");
  const Dataset byname = read_csv(f.path, "y", ResponseKind::continuous);
  CHECK(byname.x.rows == 3);
  CHECK(byname.x.cols == 1);
  CHECK(byname.resp.values == std::vector<double>{2, 4, 6});
  const Dataset byindex = read_csv(f.path, "2", ResponseKind::continuous);
  CHECK(byindex.resp.values == byname.resp.values);
  CHECK_THROWS_WITH_AS(read_csv(f.path, "zz", ResponseKind::continuous),
                       "unknown response column: zz", std::runtime_error);
}

TEST_CASE("csv error locations") {
  TempFile f("errors.csv");
  write_text(f.path, "y,x1\n1,2\n,3\n");
  try {
    read_csv(f.path, "y", ResponseKind::continuous);
    FAIL("expected a missing-value error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    CHECK(std::string(e.what()).find("column y") != std::string::npos);
  }

  write_text(f.path, "y,x1\n1,2\n3,4,5\n");
  CHECK_THROWS_WITH_AS(read_csv(f.path, "y", ResponseKind::continuous),
                       "ragged row 2: expected 2 cells, got 3", std::runtime_error);

  write_text(f.path, "y,x1\n1,abc\n3,4\n");
  try {
    read_csv(f.path, "y", ResponseKind::continuous);
    FAIL("expected a non-numeric error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("non-numeric") != std::string::npos);
    CHECK(std::string(e.what()).find("column x1") != std::string::npos);
  }
}

TEST_CASE("typed response validation") {
  TempFile f("typed.csv");
  write_text(f.path, "y,x1\n0,1\n2,2\n1,3\n");
  try {
    read_csv(f.path, "y", ResponseKind::categorical);
    FAIL("expected a level error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("levels must be 1..G") != std::string::npos);
  }

  write_text(f.path, "y,x1\n1.5,1\n2,2\n");
  CHECK_THROWS(read_csv(f.path, "y", ResponseKind::count));

  write_text(f.path, "y,x1\n-1,1\n2,2\n");
  CHECK_THROWS(read_csv(f.path, "y", ResponseKind::count));

  // integral-valued scientific notation is a valid count
  write_text(f.path, "y,x1\n1e2,1\n2,2\n");
  CHECK(read_csv(f.path, "y", ResponseKind::count).resp.values ==
        std::vector<double>{100, 2});
}

TEST_CASE("format_double round trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e300, -2.5e-17, 3.0, 0.0}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_double(3.0) == "3");
}
