#include <cstring>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "relaxsim/csv.hpp"
#include "relaxsim/errors.hpp"
#include "relaxsim/models.hpp"

using namespace relaxsim;

namespace {

SnapshotSeries random_series(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> exponent(-300.0, 300.0), mant(-1.0, 1.0);
  SnapshotSeries s;
  s.grid = Grid1D{7, 0.1 / 3.0, -0.2, Boundary::Periodic};
  s.n_components = 3;
  for (double t : {0.0, 1.0 / 3.0, 2e-7}) {
    Field f(7, Vec(3));
    for (Vec& v : f)
      for (int k = 0; k < 3; ++k) v[k] = mant(rng) * std::pow(10.0, exponent(rng));
    s.snapshots.push_back({t, f});
  }
  s.snapshots[1].cells[2][1] = 0.0;
  s.snapshots[1].cells[3][1] = -0.0;
  s.snapshots[2].cells[0][0] = 5e-324;
  return s;
}

}  // namespace

TEST_CASE("snapshot CSV round trip is bit-identical") {
  const SnapshotSeries s = random_series(1);
  std::stringstream ss;
  write_snapshots_csv(ss, s, {{"model", "m1"}, {"epsilon", format_double(1e-3)}});
  const CsvSeries back = read_snapshots_csv(ss);
  REQUIRE(back.find("model") != nullptr);
  CHECK(*back.find("model") == "m1");
  CHECK(std::stod(*back.find("epsilon")) == 1e-3);
  CHECK(back.find("missing") == nullptr);
  CHECK(back.series.grid.cells == 7);
  CHECK(back.series.grid.dx == s.grid.dx);
  CHECK(back.series.grid.x0 == s.grid.x0);
  CHECK(back.series.grid.boundary == Boundary::Periodic);
  CHECK(back.series.n_components == 3);
  REQUIRE(back.series.snapshots.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(back.series.snapshots[k].t == s.snapshots[k].t);
    for (int i = 0; i < 7; ++i) {
      for (int c = 0; c < 3; ++c) {
        const double a = back.series.snapshots[k].cells[i][c], b = s.snapshots[k].cells[i][c];
        CHECK(std::memcmp(&a, &b, sizeof(double)) == 0);
      }
    }
  }
}

TEST_CASE("CSV output is deterministic") {
  std::stringstream a, b;
  write_snapshots_csv(a, random_series(5));
  write_snapshots_csv(b, random_series(5));
  CHECK(a.str() == b.str());
  CHECK(a.str().find("x,comp_0,comp_1,comp_2") != std::string::npos);
  CHECK(a.str().find("# t=") != std::string::npos);
}

TEST_CASE("format_double keeps 17 digits") {
  CHECK(std::stod(format_double(0.1)) == 0.1);
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("malformed CSV is rejected") {
  std::stringstream bad1("x,comp_0\n1.0,2.0\n");
  CHECK_THROWS_AS(read_snapshots_csv(bad1), ConfigError);
  std::stringstream good;
  write_snapshots_csv(good, random_series(2));
  std::string text = good.str();
  text += "0.5,abc,1,2\n";
  std::stringstream bad2(text);
  CHECK_THROWS_AS(read_snapshots_csv(bad2), ConfigError);
  CHECK_THROWS_AS(read_snapshots_csv(std::string("/nonexistent/file.csv")), ConfigError);
}

TEST_CASE("trace CSV") {
  const auto path = std::filesystem::temp_directory_path() / "relaxsim_trace_test.csv";
  write_trace_csv(path.string(), {{0.0, 1.5}, {0.1, 1.25}}, "S");
  std::ifstream in(path);
  std::string header, l1, l2;
  std::getline(in, header);
  std::getline(in, l1);
  std::getline(in, l2);
  CHECK(header == "t,S");
  CHECK(l1 == "0,1.5");
  CHECK(l2 == "0.10000000000000001,1.25");
  std::filesystem::remove(path);
}
