#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <numeric>

#include "cyqw/fft.hpp"
#include "cyqw/field.hpp"
#include "cyqw/grid.hpp"
#include "doctest.h"

using namespace cyqw;

TEST_CASE("pairwise sum matches accumulate and is reproducible") {
  std::vector<double> v(1000);
  std::uint64_t s = 12345;
  for (double& x : v) {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    x = (double)(s >> 11) / (double)(1ull << 53) - 0.5;
  }
  const double ref = std::accumulate(v.begin(), v.end(), 0.0);
  const double p1 = pairwise_sum(v), p2 = pairwise_sum(v);
  CHECK(p1 == p2);  // bitwise
  CHECK(p1 == doctest::Approx(ref).epsilon(1e-13));
  CHECK(pairwise_sum(std::vector<double>(1000, 1.0)) == 1000.0);
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}

TEST_CASE("fnv1a frozen values") {
  CHECK(fnv1a(nullptr, 0) == 0xcbf29ce484222325ull);
  CHECK(fnv1a("a", 1) == 0xaf63dc4c8601ec8cull);  // standard FNV-1a 64 test vector
}

TEST_CASE("z grid: endpoints and reflection pairing") {
  const Grid1D g = Grid1D::make(10.0, 64);
  CHECK(g.dz == doctest::Approx(20.0 / 64));
  CHECK(g.z[0] == -10.0);
  CHECK(g.z[32] == doctest::Approx(0.0));
  for (int j = 1; j < 64; ++j) CHECK(g.z[j] == doctest::Approx(-g.z[64 - j]).epsilon(1e-15));
}

TEST_CASE("xy grid: wavevector wrap") {
  const Grid2D g = Grid2D::make(16.0, 8.0, 8, 4);
  CHECK(g.x[0] == -8.0);
  CHECK(g.xi[1] == doctest::Approx(2 * kPi / 16.0));
  CHECK(g.xi[7] == doctest::Approx(-2 * kPi / 16.0));
  CHECK(g.xi[4] == doctest::Approx(-4 * 2 * kPi / 16.0));
  CHECK(g.eta[3] == doctest::Approx(-2 * kPi / 8.0));
  CHECK_THROWS(Grid2D::make(16.0, 16.0, 12, 16));  // non power of two
}

TEST_CASE("batched 2D FFT: unitarity, inversion, plane wave") {
  const int nx = 8, ny = 8, hm = 3;
  std::vector<cplx> a((std::size_t)nx * ny * hm);
  std::uint64_t s = 7;
  for (cplx& c : a) {
    s = s * 6364136223846793005ull + 1;
    c = cplx((double)(s >> 40), (double)(s >> 44) * 1e-3);
  }
  std::vector<cplx> b = a;
  fft2_batch(b.data(), nx, ny, hm, -1);
  double na = 0, nb = 0;
  for (std::size_t k = 0; k < a.size(); ++k) { na += std::norm(a[k]); nb += std::norm(b[k]); }
  CHECK(nb == doctest::Approx(na).epsilon(1e-13));  // unitary
  fft2_batch(b.data(), nx, ny, hm, +1);
  double dev = 0;
  for (std::size_t k = 0; k < a.size(); ++k) dev = std::max(dev, std::abs(a[k] - b[k]));
  CHECK(dev < 1e-12 * std::sqrt(na));

  // plane wave e^{2 pi i (2 i' / nx)} concentrates on mode (2, 0)
  std::vector<cplx> pw((std::size_t)nx * ny, 0.0);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      pw[(std::size_t)i * ny + j] = std::polar(1.0, 2 * kPi * 2.0 * i / nx);
  fft2_batch(pw.data(), nx, ny, 1, -1);
  CHECK(std::abs(pw[(std::size_t)2 * ny + 0]) == doctest::Approx(8.0).epsilon(1e-12));
  pw[(std::size_t)2 * ny + 0] = 0.0;
  for (const cplx& c : pw) CHECK(std::abs(c) < 1e-12);
}

TEST_CASE("inner/outer 1D FFTs agree through a transpose") {
  const int n = 16, rest = 5;
  std::vector<cplx> a((std::size_t)n * rest);
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < rest; ++r)
      a[(std::size_t)i * rest + r] = cplx(std::sin(0.3 * i + r), std::cos(0.7 * i - r));
  std::vector<cplx> at((std::size_t)rest * n);
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < rest; ++r) at[(std::size_t)r * n + i] = a[(std::size_t)i * rest + r];
  fft1_outer_batch(a.data(), n, rest, -1);
  fft1_inner_batch(at.data(), n, rest, -1);
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < rest; ++r)
      CHECK(std::abs(a[(std::size_t)i * rest + r] - at[(std::size_t)r * n + i]) < 1e-13);
}

TEST_CASE("field container round trip and header layout") {
  const Grid2D g2 = Grid2D::make(12.0, 10.0, 8, 4);
  const Grid1D g1 = Grid1D::make(6.0, 16);
  Field3D f = Field3D::make(Repr::GridZ, g2, g1, g1.nz);
  std::uint64_t s = 99;
  for (cplx& c : f.v) {
    s = s * 2862933555777941757ull + 3037000493ull;
    c = cplx((double)(s >> 32) * 1e-9, (double)(s & 0xffffffffu) * 1e-9);
  }
  const char* path = "roundtrip_test.cyqw";
  write_field(path, f);

  std::ifstream is(path, std::ios::binary);
  char hdr[256];
  is.read(hdr, 256);
  CHECK(std::string(hdr, 4) == "CYQW");
  std::uint16_t ver;
  std::memcpy(&ver, hdr + 4, 2);
  CHECK(ver == 1);
  CHECK((unsigned char)hdr[6] == 0);  // grid-z tag
  std::uint32_t nx;
  std::memcpy(&nx, hdr + 8, 4);
  CHECK(nx == 8);
  double Lx;
  std::memcpy(&Lx, hdr + 24, 8);
  CHECK(Lx == 12.0);
  is.close();

  const Field3D r = read_field(path);
  REQUIRE(r.v.size() == f.v.size());
  CHECK(r.repr == f.repr);
  CHECK(r.g2.nx == f.g2.nx);
  CHECK(r.zgrid.nz == f.zgrid.nz);
  for (std::size_t k = 0; k < f.v.size(); ++k) CHECK(r.v[k] == f.v[k]);  // bitwise
  CHECK(field_fingerprint(r) == field_fingerprint(f));
  std::remove(path);
}

TEST_CASE("mode-z container keeps the quadrature grid") {
  const Grid2D g2 = Grid2D::make(8.0, 8.0, 4, 4);
  const Grid1D g1 = Grid1D::make(5.0, 32);
  Field3D f = Field3D::make(Repr::ModeZ, g2, g1, 3);
  for (std::size_t k = 0; k < f.v.size(); ++k) f.v[k] = cplx((double)k, -(double)k);
  write_field("modez_test.cyqw", f);
  const Field3D r = read_field("modez_test.cyqw");
  CHECK(r.repr == Repr::ModeZ);
  CHECK(r.nzp == 3);
  CHECK(r.zgrid.nz == 32);
  CHECK(r.zgrid.Lz == 5.0);
  for (std::size_t k = 0; k < f.v.size(); ++k) CHECK(r.v[k] == f.v[k]);
  std::remove("modez_test.cyqw");
}
