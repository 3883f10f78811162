#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cyqw/harness.hpp"
#include "doctest.h"

using namespace cyqw;

namespace {
std::string write_tmp(const std::string& body) {
  static int n = 0;
  std::string path = "cfg_test_" + std::to_string(n++) + ".ini";
  std::ofstream os(path);
  os << body;
  return path;
}
struct TmpFile {
  std::string path;
  explicit TmpFile(const std::string& body) : path(write_tmp(body)) {}
  ~TmpFile() { std::remove(path.c_str()); }
};
}  // namespace

TEST_CASE("number formatting round-trips doubles exactly") {
  for (double v : {1.0 / 3.0, 1e-300, -2.5e17, 0.1, 3.14159265358979}) {
    CHECK(std::stod(fmt(v)) == v);
  }
  CHECK(fmt(1.0) == "1");
}

TEST_CASE("csv writer emits header, rows and footer verbatim") {
  write_csv("csv_test.csv", "a,b", {{"1", "2"}, {"3", "4"}}, {"# tail"});
  std::ifstream is("csv_test.csv", std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  CHECK(ss.str() == "a,b\n1,2\n3,4\n# tail\n");
  std::remove("csv_test.csv");
}

TEST_CASE("config: full file parses with comments and all sections") {
  TmpFile f(
      "# comment\n"
      "[potential]\n"
      "type = harmonic\n"
      "a = 1.5\n"
      "B = 0.7 ; trailing comment\n"
      "[grids]\n"
      "nx = 32\nny = 64\nnz = 128\nLx = 12\nLy = 14\nLz = 9\nP = auto\nPz = 10\n"
      "[epsilon]\n"
      "list = 0.4, 0.2, 0.1\n"
      "[time]\n"
      "T = 0.5\ndt = 0.001\nsnap_dt = 0.1\n"
      "[solver]\n"
      "nonlinearity = F0\nguard_factor = 500\n"
      "[io]\n"
      "out = results\nprefix = demo\n"
      "[init]\n"
      "sx = 1.2\nkx = 0.5\nzmodes = 0:0.6, 1:0.8\nnormalize = true\n");
  const RunConfig c = parse_config(f.path);
  CHECK(c.pot.a == 1.5);
  CHECK(c.pot.B == 0.7);
  CHECK(c.nx == 32);
  CHECK(c.ny == 64);
  CHECK(c.P == 0);  // auto
  CHECK(c.eps_list == std::vector<double>{0.4, 0.2, 0.1});
  CHECK(c.nonlinearity == Nonlin::F0);
  CHECK(c.guard_factor == 500.0);
  CHECK(c.out_dir == "results");
  CHECK(c.zmodes.size() == 2);
  CHECK(c.zmodes[1].first == 1);
  CHECK(c.zmodes[1].second == 0.8);
}

TEST_CASE("config: rejection diagnostics") {
  CHECK_THROWS_AS(parse_config("does_not_exist.ini"), Error);
  {
    TmpFile f("[grids]\nnx = 48\n");  // not a power of two
    CHECK_THROWS_AS(parse_config(f.path), Error);
  }
  {
    TmpFile f("[mystery]\nx = 1\n");  // unknown section
    CHECK_THROWS_AS(parse_config(f.path), Error);
  }
  {
    TmpFile f("[grids]\nnq = 3\n");  // unknown key
    CHECK_THROWS_AS(parse_config(f.path), Error);
  }
  {
    TmpFile f("[epsilon]\nlist = 0.1, 0.2\n");  // not decreasing
    CHECK_THROWS_AS(parse_config(f.path), Error);
  }
  {
    TmpFile f("[epsilon]\nlist = 0.1, -0.05\n");  // negative
    CHECK_THROWS_AS(parse_config(f.path), Error);
  }
  {
    TmpFile f("[time]\ndt = -1\n");
    CHECK_THROWS_AS(parse_config(f.path), Error);
  }
  {
    TmpFile f("[grids]\nnz = 64\nP = 32\n");  // P > nz/4
    CHECK_THROWS_AS(parse_config(f.path), Error);
  }
  {
    TmpFile f("[potential]\na = abc\n");  // type error
    CHECK_THROWS_AS(parse_config(f.path), Error);
  }
}

TEST_CASE("initial datum: normalization and mode content") {
  RunConfig c;
  c.zmodes = {{0, 0.6}, {2, 0.8}};
  c.kx = 0.5;
  const Grid2D g2 = Grid2D::make(16.0, 16.0, 16, 16);
  const Grid1D g1 = Grid1D::make(10.0, 256);
  PotentialSpec s;
  s.a = 1.0;
  const EigenBasis b = solve_eigs(build_potential(s, g1), g1, 4);
  const Field3D f = build_initial_datum(c, g2, b);
  CHECK(l2_norm(f) == doctest::Approx(1.0).epsilon(1e-12));
  // mode 1 and 3 are unoccupied
  double tail = 0.0;
  const Field3D fm = project_modes(f, b, &tail);
  CHECK(tail < 1e-10);
  double m1 = 0.0, occ = 0.0;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      m1 = std::max({m1, std::abs(fm.at(i, j, 1)), std::abs(fm.at(i, j, 3))});
      occ = std::max(occ, std::abs(fm.at(i, j, 0)));
    }
  CHECK(m1 < 1e-10 * occ);

  c.zmodes = {{9, 1.0}};  // beyond the basis
  CHECK_THROWS_AS(build_initial_datum(c, g2, b), Error);
}

TEST_CASE("manifest format is key=value with hex fingerprints") {
  RunManifest m;
  m.add("tool_version", kToolVersion);
  m.add_artifact("x.csv", 0xdeadbeefull);
  m.write("manifest_test.txt");
  std::ifstream is("manifest_test.txt");
  std::string l1, l2;
  std::getline(is, l1);
  std::getline(is, l2);
  CHECK(l1 == std::string("tool_version=") + kToolVersion);
  CHECK(l2 == "artifact:x.csv=00000000deadbeef");
  std::remove("manifest_test.txt");
}

TEST_CASE("acceptance: unknown suite is rejected") {
  std::ostringstream log;
  CHECK_THROWS_AS(run_acceptance("bogus", "accept_test_out", log), Error);
}

TEST_CASE("sweep plumbing: shared limit trajectory, per-epsilon errors") {
  RunConfig c;
  c.pot.a = 1.0;
  c.pot.B = 0.5;
  c.nx = c.ny = 16;
  c.nz = 128;
  c.Lz = 8.0;
  c.P = 4;
  c.Pz = 6;
  c.eps_list = {0.4, 0.2};
  c.T = 0.1;
  c.dt = 0.05;
  c.snap_dt = 0.05;
  c.nonlinearity = Nonlin::None;
  std::ostringstream log;
  const SweepResult r = run_sweep(c, log);
  REQUIRE(r.eps.size() == 2);
  REQUIRE(r.sup_err.size() == 2);
  for (const std::string& f : r.failed) CHECK(f.empty());
  for (double e : r.sup_err) {
    CHECK(std::isfinite(e));
    CHECK(e >= 0.0);
  }
  CHECK(r.curves[0].t.size() == 3);  // t = 0, 0.05, 0.1
  write_error_csv("sweep_test.csv", r);
  std::ifstream is("sweep_test.csv");
  std::string header;
  std::getline(is, header);
  CHECK(header == "eps,t,e");
  is.close();
  std::remove("sweep_test.csv");
}
