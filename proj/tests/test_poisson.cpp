#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "cyqw/poisson.hpp"
#include "cyqw/reference.hpp"
#include "cyqw/spectrum.hpp"
#include "doctest.h"

using namespace cyqw;

namespace {
std::vector<double> radial_rho(const Grid2D& g2, double s) {
  std::vector<double> rho((std::size_t)g2.nx * g2.ny);
  for (int i = 0; i < g2.nx; ++i)
    for (int j = 0; j < g2.ny; ++j)
      rho[(std::size_t)i * g2.ny + j] =
          std::exp(-(g2.x[i] * g2.x[i] + g2.y[j] * g2.y[j]) / (2 * s * s));
  return rho;
}
}  // namespace

TEST_CASE("2D convolution: FFT path matches the direct sum") {
  const Grid2D g2 = Grid2D::make(12.0, 12.0, 16, 16);
  const KernelMultiplier K = build_kernel2d(g2, true);
  const std::vector<double> rho = radial_rho(g2, 1.0);
  const std::vector<double> Wf = conv2d(rho, K, 16, 16);
  const std::vector<double> Wd = conv2d_direct(rho, K, 16, 16);
  double wmax = 0.0;
  for (double v : Wd) wmax = std::max(wmax, std::abs(v));
  for (std::size_t k = 0; k < Wf.size(); ++k)
    CHECK(std::abs(Wf[k] - Wd[k]) < 1e-12 * wmax);
}

TEST_CASE("2D convolution of a radial density is radial") {
  const Grid2D g2 = Grid2D::make(12.0, 12.0, 16, 16);
  const KernelMultiplier K = build_kernel2d(g2);
  std::vector<double> rho = radial_rho(g2, 1.0);
  // the leftmost node -L/2 has no mirror partner on the grid; drop it so the
  // discrete density is exactly reflection-symmetric
  for (int j = 0; j < 16; ++j) rho[(std::size_t)0 * 16 + j] = rho[(std::size_t)j * 16 + 0] = 0.0;
  const std::vector<double> W = conv2d(rho, K, 16, 16);
  // x <-> y exchange symmetry (square grid, radial input)
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      CHECK(W[(std::size_t)i * 16 + j] ==
            doctest::Approx(W[(std::size_t)j * 16 + i]).epsilon(1e-10));
  // reflection symmetry on paired nodes
  for (int i = 1; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      CHECK(W[(std::size_t)i * 16 + j] ==
            doctest::Approx(W[(std::size_t)(16 - i) * 16 + j]).epsilon(1e-10));
}

TEST_CASE("2D far field approaches mass/(4 pi d)") {
  const Grid2D g2 = Grid2D::make(32.0, 32.0, 64, 64);
  const KernelMultiplier K = build_kernel2d(g2);
  std::vector<double> rho((std::size_t)64 * 64, 0.0);
  rho[(std::size_t)32 * 64 + 32] = 1.0;  // point source at the origin node
  const std::vector<double> W = conv2d(rho, K, 64, 64);
  const double mass = g2.dx * g2.dy;
  for (double d : {4.0, 8.0}) {
    const int i = 32 + (int)(d / g2.dx);
    CHECK(W[(std::size_t)i * 64 + 32] ==
          doctest::Approx(mass / (4 * kPi * d)).epsilon(1e-10));
  }
}

TEST_CASE("3D convolution: FFT path matches the direct sum") {
  const Grid2D g2 = Grid2D::make(12.0, 12.0, 16, 16);
  const Grid1D g1 = Grid1D::make(6.0, 9);
  const KernelMultiplier K = build_kernel3d(g2, g1, 0.2, true);
  std::vector<double> rho((std::size_t)16 * 16 * 9);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      for (int k = 0; k < 9; ++k)
        rho[((std::size_t)i * 16 + j) * 9 + k] =
            std::exp(-(g2.x[i] * g2.x[i] + g2.y[j] * g2.y[j] + g1.z[k] * g1.z[k]) / 2.0);
  const std::vector<double> Vf = conv3d(rho, K, 16, 16, 9);
  const std::vector<double> Vd = conv3d_direct(rho, K, 16, 16, 9);
  double vmax = 0.0;
  for (double v : Vd) vmax = std::max(vmax, std::abs(v));
  for (std::size_t k = 0; k < Vf.size(); ++k)
    CHECK(std::abs(Vf[k] - Vd[k]) < 1e-12 * vmax);
}

TEST_CASE("isotropic 3D kernel reproduces the Gaussian closed form") {
  const Grid2D g2 = Grid2D::make(16.0, 16.0, 64, 64);
  const Grid1D g1 = Grid1D::make(8.0, 64);
  const KernelMultiplier K = build_kernel3d(g2, g1, 1.0);
  const double ss = 2.0;
  std::vector<double> rho((std::size_t)64 * 64 * 64);
  double mass = 0.0;
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j)
      for (int k = 0; k < 64; ++k) {
        const double r2 = g2.x[i] * g2.x[i] + g2.y[j] * g2.y[j] + g1.z[k] * g1.z[k];
        rho[((std::size_t)i * 64 + j) * 64 + k] = std::exp(-r2 / (2 * ss * ss));
        mass += rho[((std::size_t)i * 64 + j) * 64 + k];
      }
  mass *= g2.dx * g2.dy * g1.dz;
  const std::vector<double> V = conv3d(rho, K, 64, 64, 64);
  double dev = 0.0, vmax = 0.0;
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j)
      for (int k = 0; k < 64; ++k) {
        const double r = std::sqrt(g2.x[i] * g2.x[i] + g2.y[j] * g2.y[j] + g1.z[k] * g1.z[k]);
        const double ex = (r < 1e-12)
                              ? mass / (4 * kPi) * std::sqrt(2.0 / kPi) / ss
                              : mass * std::erf(r / (std::sqrt(2.0) * ss)) / (4 * kPi * r);
        vmax = std::max(vmax, std::abs(ex));
        dev = std::max(dev, std::abs(V[((std::size_t)i * 64 + j) * 64 + k] - ex));
      }
  CHECK(dev / vmax < 1e-3);
}

TEST_CASE("full nonlinearity is cubic-homogeneous") {
  const Grid2D g2 = Grid2D::make(12.0, 12.0, 16, 16);
  const Grid1D g1 = Grid1D::make(6.0, 9);
  const KernelMultiplier K = build_kernel3d(g2, g1, 0.3);
  Field3D u = Field3D::make(Repr::GridZ, g2, g1, 9);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      for (int k = 0; k < 9; ++k)
        u.at(i, j, k) = std::polar(
            std::exp(-(g2.x[i] * g2.x[i] + g2.y[j] * g2.y[j] + g1.z[k] * g1.z[k]) / 3.0),
            0.2 * g2.x[i] - 0.1 * g2.y[j]);
  const Field3D Fu = apply_F1(u, K);
  for (cplx lam : {cplx(2.0, 0.0), cplx(0.0, 1.0)}) {
    Field3D ul = u;
    for (cplx& c : ul.v) c *= lam;
    const Field3D Ful = apply_F1(ul, K);
    const cplx scale = std::norm(lam) * lam;  // |lam|^2 lam
    double dev = 0.0, ref = 0.0;
    for (std::size_t k = 0; k < Fu.v.size(); ++k) {
      dev = std::max(dev, std::abs(Ful.v[k] - scale * Fu.v[k]));
      ref = std::max(ref, std::abs(Fu.v[k]));
    }
    CHECK(dev < 1e-13 * std::abs(scale) * ref);
  }
}

TEST_CASE("limit nonlinearity: reduced and 3D paths agree on a separable state") {
  const Grid2D g2 = Grid2D::make(12.0, 12.0, 16, 16);
  const Grid1D g1 = Grid1D::make(8.0, 128);
  PotentialSpec s;
  s.a = 1.0;
  const EigenBasis b = solve_eigs(build_potential(s, g1), g1, 2);
  const KernelMultiplier K2 = build_kernel2d(g2);
  ModeSet m = ModeSet::make(g2, 2);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      const double e = std::exp(-(g2.x[i] * g2.x[i] + g2.y[j] * g2.y[j]) / 2.0);
      m.phi[0][(std::size_t)i * 16 + j] = e;
      m.phi[1][(std::size_t)i * 16 + j] = cplx(0.0, 0.5 * e);
    }
  const ModeSet Fm = apply_F0(m, K2);
  // same state as a 3D grid-z field
  Field3D f = Field3D::make(Repr::GridZ, g2, g1, g1.nz);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      for (int k = 0; k < g1.nz; ++k)
        f.at(i, j, k) = m.phi[0][(std::size_t)i * 16 + j] * b.mode(0)[k] +
                        m.phi[1][(std::size_t)i * 16 + j] * b.mode(1)[k];
  const Field3D Ff = apply_F0(f, K2);
  // project the 3D result back and compare mode by mode
  const Field3D Fp = project_modes(Ff, b);
  double ref = 0.0;
  for (int p = 0; p < 2; ++p)
    for (const cplx& c : Fm.phi[p]) ref = std::max(ref, std::abs(c));
  for (int p = 0; p < 2; ++p)
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j)
        CHECK(std::abs(Fp.at(i, j, p) - Fm.phi[p][(std::size_t)i * 16 + j]) < 1e-10 * ref);
}

TEST_CASE("self-consistent potential is nonnegative for any state") {
  const Grid2D g2 = Grid2D::make(12.0, 12.0, 16, 16);
  const KernelMultiplier K2 = build_kernel2d(g2);
  ModeSet m = ModeSet::make(g2, 1);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      m.phi[0][(std::size_t)i * 16 + j] =
          std::polar(std::exp(-(g2.x[i] * g2.x[i] + g2.y[j] * g2.y[j]) / 2.0), (double)(i - j));
  const std::vector<double> W = selfconsistent_W(m, K2);
  for (double w : W) CHECK(w >= 0.0);
}

TEST_CASE("anisotropic kernel gap shrinks with eps at rate >= 1/3") {
  const Grid2D g2 = Grid2D::make(16.0, 16.0, 16, 16);
  const Grid1D g1 = Grid1D::make(8.0, 17);
  PotentialSpec s;
  s.a = 1.0;
  const EigenBasis nb = solve_eigs(build_potential(s, g1), g1, 4);
  Field3D u = Field3D::make(Repr::GridZ, g2, g1, g1.nz);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      for (int k = 0; k < g1.nz; ++k)
        u.at(i, j, k) = std::exp(
            -(g2.x[i] * g2.x[i] + g2.y[j] * g2.y[j] + g1.z[k] * g1.z[k]) / 2.0);
  const KernelGapResult kg = kernel_gap_estimate(u, {0.4, 0.2, 0.1, 0.05}, nb);
  CHECK(kg.monotone);
  CHECK(kg.slope >= 1.0 / 3.0 - 0.05);
  CHECK(kg.u_b2 > 0.0);
  for (std::size_t i = 0; i < kg.eps.size(); ++i)
    CHECK(kg.ngap[i] == doctest::Approx(kg.gap[i] / std::pow(kg.u_b2, 3)).epsilon(1e-12));
}
