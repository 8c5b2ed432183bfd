#include "svardag/csv.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

using namespace svardag;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("svardag_csv_test_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("matrix round trip preserves every bit") {
  TempDir dir;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Matrix m(7, 4);
  for (long j = 0; j < m.cols(); ++j) {
    for (long i = 0; i < m.rows(); ++i) {
      m(i, j) = unif(rng) * std::pow(10.0, static_cast<double>(static_cast<long>(rng() % 37)) - 18.0);
    }
  }
  m(0, 0) = 0.0;
  m(1, 1) = -0.1;
  const std::string path = dir.file("m.csv");
  write_csv_matrix(path, m);
  const Matrix back = read_csv_matrix(path);
  REQUIRE(back.rows() == m.rows());
  REQUIRE(back.cols() == m.cols());
  CHECK(back == m);
}

TEST_CASE("time series files store one row per time step") {
  TempDir dir;
  std::mt19937_64 rng(2);
  const TimeSeries series{testutil::random_nonneg(3, 11, 1.0, rng)};
  const std::string path = dir.file("x.csv");
  write_time_series(path, series);

  // file shape: t rows, n columns
  std::ifstream in(path);
  std::string line;
  long rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 2);
  }
  CHECK(rows == 11);

  const TimeSeries back = read_time_series(path);
  CHECK(back.n == 3);
  CHECK(back.t == 11);
  CHECK(back.x == series.x);
}

TEST_CASE("a single header row is tolerated") {
  TempDir dir;
  const std::string path = dir.file("h.csv");
  write_text(path, "a,b,c\n1,2,3\n4,5,6\n");
  const Matrix m = read_csv_matrix(path);
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 3);
  CHECK(m(1, 2) == 6.0);
}

TEST_CASE("parse errors carry the path and line number") {
  TempDir dir;
  const std::string bad_cell = dir.file("bad.csv");
  write_text(bad_cell, "1,2\n3,x\n");
  CHECK_THROWS_WITH_AS(read_csv_matrix(bad_cell),
                       (bad_cell + ":2: non-numeric cell").c_str(), std::runtime_error);

  const std::string ragged = dir.file("ragged.csv");
  write_text(ragged, "1,2,3\n4,5\n");
  CHECK_THROWS_WITH_AS(read_csv_matrix(ragged),
                       (ragged + ":2: expected 3 columns, got 2").c_str(), std::runtime_error);

  const std::string empty = dir.file("empty.csv");
  write_text(empty, "");
  CHECK_THROWS_AS(read_csv_matrix(empty), std::runtime_error);
}

TEST_CASE("missing files name the path") {
  const std::string path = "/nonexistent/svardag/x.csv";
  try {
    read_csv_matrix(path);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(path) != std::string::npos);
  }
}

TEST_CASE("two header rows are rejected") {
  TempDir dir;
  const std::string path = dir.file("hh.csv");
  write_text(path, "a,b\nc,d\n1,2\n");
  CHECK_THROWS_AS(read_csv_matrix(path), std::runtime_error);
}
