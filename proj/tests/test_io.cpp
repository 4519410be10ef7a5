#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "leslie/io.hpp"

using namespace leslie;

namespace {

State random_full_state(const Grid& g, std::uint64_t seed) {
  Rng rng(seed);
  State s;
  s.t = rng.uniform();
  s.v = VectorField(g);
  s.d = VectorField(g);
  s.p = ScalarField(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (int c = 0; c < 3; ++c) {
      s.v[i][c] = rng.normal() * std::pow(10.0, rng.uniform(-300, 300));
      s.d[i][c] = rng.normal();
    }
    s.p[i] = -rng.normal() * 1e-310;  // subnormal values survive too
  }
  return s;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("leslie_test_" + name);
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("snapshot round trip is bitwise exact") {
    for (const Grid& g : {Grid::cube(2, 8), Grid::cube(3, 5, 0.3, Boundary::dirichlet)}) {
      const State s = random_full_state(g, 4);
      const auto path = temp_path("snap.bin").string();
      write_snapshot(s, path);
      const State r = read_snapshot(path);
      CHECK(r == s);
      CHECK(encode_snapshot(r) == encode_snapshot(s));
      CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
      std::filesystem::remove(path);
    }
  }

  TEST_CASE("snapshot errors") {
    const State s = random_full_state(Grid::cube(2, 6), 1);
    const std::string bytes = encode_snapshot(s);
    CHECK_THROWS_WITH_AS(decode_snapshot(bytes.substr(0, bytes.size() - 3)), doctest::Contains("truncated"), IoError);
    CHECK_THROWS_WITH_AS(decode_snapshot(bytes.substr(0, 20)), doctest::Contains("header"), IoError);
    CHECK_THROWS_WITH_AS(decode_snapshot("XLSNAP1" + bytes.substr(7)), doctest::Contains("magic"), IoError);
    CHECK_THROWS_WITH_AS(decode_snapshot("ELSNAP2" + bytes.substr(7)), doctest::Contains("magic"), IoError);
    CHECK_THROWS_WITH_AS(decode_snapshot(bytes + "x"), doctest::Contains("trailing"), IoError);
    State bad = s;
    bad.d[3][1] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_WITH_AS(decode_snapshot(encode_snapshot(bad)), doctest::Contains("non-finite"), IoError);
    CHECK_THROWS_AS(read_snapshot(temp_path("does_not_exist").string()), IoError);
  }

  TEST_CASE("CSV round trip reproduces every value") {
    Rng rng(3);
    std::vector<CsvRow> rows(20);
    for (auto& r : rows) {
      r.t = rng.uniform();
      r.total = rng.normal() * 1e-7;
      r.E = std::pow(10.0, rng.uniform(-300, 10));
      r.residual_energy = -rng.uniform() / 3.0;
      r.cross_term = 0.1 + 0.2;
    }
    std::istringstream is(format_csv(rows));
    CHECK(read_csv(is) == rows);
  }

  TEST_CASE("CSV header and malformed lines") {
    std::istringstream wrong("t,energy\n1,2\n");
    CHECK_THROWS_AS(read_csv(wrong), IoError);
    std::istringstream short_line(std::string(csv_header) + "\n1,2,3\n");
    CHECK_THROWS_WITH_AS(read_csv(short_line), doctest::Contains("line 2"), IoError);
    std::istringstream junk(std::string(csv_header) + "\n1,2,3,4,5,6,7,8,9,10,11,12,13,14,abc\n");
    CHECK_THROWS_AS(read_csv(junk), IoError);
  }

  TEST_CASE("17 significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(parse_double(format_double(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK_THROWS_AS(parse_double("1.5e"), IoError);
    CHECK_THROWS_AS(parse_double(""), IoError);
  }

  TEST_CASE("energy rows carry the residual column") {
    std::vector<EnergySample> trace(3);
    for (int k = 0; k < 3; ++k) {
      trace[static_cast<std::size_t>(k)].t = k;
      trace[static_cast<std::size_t>(k)].energy.kinetic = 3.0 - k;
      trace[static_cast<std::size_t>(k)].diss.q = 1.0;
    }
    const auto rows = rows_from_energy(trace);
    CHECK(rows[2].residual_energy == 0.0);
    CHECK(rows[1].total == 2.0);
    CHECK(rows[1].E == 0.0);
  }
}
