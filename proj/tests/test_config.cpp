#include <doctest.h>

#include <string>

#include "leslie/config.hpp"

using namespace leslie;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("minimal config applies defaults") {
    const RunConfig c = parse_config("[grid]\nn = 16\n");
    CHECK(c.grid.n[0] == 16);
    CHECK(c.grid.dim == 2);
    CHECK(c.grid.bc == Boundary::periodic);
    CHECK(c.material.params.mu1 == 1.0);
    CHECK(c.material.elastic.is_isotropic());
    CHECK(c.stepper.scheme == Scheme::explicit_euler);
    CHECK(c.initial.kind == InitialSpec::Kind::smooth_random);
    CHECK(parse_config("").grid.n[0] == 32);
  }

  TEST_CASE("non-dissipative parameters name the inequality") {
    const std::string msg = error_of("[material]\nmu1 = -1\n");
    CHECK(msg.find("μ₁ > 0") != std::string::npos);
    CHECK_NOTHROW(parse_config("[material]\nmu1 = -1\n", true));
    const std::string coupling = error_of("[material]\nlambda = -3\nmu5 = 0\nmu6 = 0\n");
    CHECK(coupling.find("(μ₅+μ₆) − λ(μ₂+μ₃) > 0") == std::string::npos);
    CHECK(coupling.find("4γ") != std::string::npos);
  }

  TEST_CASE("unknown keys and sections are located") {
    CHECK(error_of("[grid]\nn = 16\nfoo = 1\n").find("line 3") != std::string::npos);
    CHECK(error_of("[grid]\nn = 16\nfoo = 1\n").find("foo") != std::string::npos);
    CHECK(error_of("\n[solver]\n").find("line 2") != std::string::npos);
    CHECK(error_of("n = 3\n").find("outside") != std::string::npos);
    CHECK(error_of("[grid]\nn = 1x\n").find("line 2") != std::string::npos);
    CHECK(error_of("[grid]\nn = 16\nn = 32\n").find("duplicate") != std::string::npos);
    CHECK(error_of("[grid\n").find("line 1") != std::string::npos);
    CHECK(error_of("[grid]\njust words\n").find("line 2") != std::string::npos);
    CHECK(error_of("[stepper]\nscheme = rk4\n").find("line 2") != std::string::npos);
    CHECK(error_of("[material]\nelastic = explicit\nelastic_entries = 1 2 3\n").find("81") != std::string::npos);
    CHECK(error_of("[grid]\nn = 2\n").find("grid") != std::string::npos);
    CHECK(error_of("[stepper]\ndt = -1\n").find("dt") != std::string::npos);
  }

  TEST_CASE("comments and whitespace") {
    const RunConfig c = parse_config("# header\n  [grid]  \n n=12 # trailing\n\n[initial]\ndirector = 0, 1, 0\n");
    CHECK(c.grid.n[0] == 12);
    CHECK(c.initial.director == Vec3{0.0, 1.0, 0.0});
  }

  TEST_CASE("format and parse round trip") {
    RunConfig c = parse_config(
        "[grid]\nn = 20\nbc = dirichlet\nlength = 2\n[material]\nlambda = 0.3\nforcing = sinusoidal\n"
        "forcing_amplitude = 0.25\nforcing_frequency = 3\n[stepper]\ndt = 3e-5\nscheme = semi-implicit\n"
        "gronwall_c = 0.5\n[initial]\nkind = perturbed\nseed = 99\n");
    const RunConfig d = parse_config(format_config(c));
    CHECK(format_config(d) == format_config(c));
    CHECK(d.grid == c.grid);
    CHECK(d.material.params.lambda == 0.3);
    CHECK(d.stepper.dt == 3e-5);
    CHECK(d.gronwall_c == 0.5);
    CHECK(d.initial.seed == 99);
  }

  TEST_CASE("explicit elastic tensor") {
    std::string entries;
    for (int a = 0; a < 9; ++a)
      for (int b = 0; b < 9; ++b) entries += a == b ? " 2" : " 0";
    const RunConfig c = parse_config("[material]\nelastic = explicit\nelastic_entries =" + entries + "\n");
    CHECK(c.material.elastic(0, 1, 0, 1) == 2.0);
    CHECK(c.material.elastic.operator_norm() == doctest::Approx(2.0));
    const RunConfig d = parse_config(format_config(c));
    CHECK(d.material.elastic.entries() == c.material.elastic.entries());
    std::string negative;
    for (int a = 0; a < 9; ++a)
      for (int b = 0; b < 9; ++b) negative += a == b ? " -1" : " 0";
    CHECK(error_of("[material]\nelastic = explicit\nelastic_entries =" + negative + "\n").find("elliptic") !=
          std::string::npos);
  }
}
