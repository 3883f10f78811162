#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "cyqw/full_solver.hpp"
#include "cyqw/limit_solver.hpp"
#include "doctest.h"

using namespace cyqw;

namespace {
struct Env {
  Grid2D g2 = Grid2D::make(16.0, 16.0, 16, 16);
  Grid1D g1 = Grid1D::make(10.0, 256);
  Potential pot;
  EigenBasis basis;
  Env(double a = 1.0, double B = 1.0) {
    PotentialSpec s;
    s.a = a;
    s.B = B;
    pot = build_potential(s, g1);
    basis = solve_eigs(pot, g1, 8);
  }
  Field3D state(int p, int ix, int jy) const {
    Field3D f = Field3D::make(Repr::GridZ, g2, g1, g1.nz);
    for (int i = 0; i < g2.nx; ++i)
      for (int j = 0; j < g2.ny; ++j) {
        const cplx pw = std::polar(1.0, g2.xi[ix] * g2.x[i] + g2.eta[jy] * g2.y[j]);
        for (int k = 0; k < g1.nz; ++k) f.at(i, j, k) = pw * basis.mode(p)[k];
      }
    return f;
  }
};
}  // namespace

TEST_CASE("eigenphase reduces huge phases in extended precision") {
  CHECK(std::abs(eigenphase(0.3, 2.0, 1.0) -
                 cplx(std::cos(0.6), -std::sin(0.6))) < 1e-15);
  // |phase| = 1 even for phases of order 1e8
  const cplx p = eigenphase(1.0, 7.0, 1e-4);
  CHECK(std::abs(std::abs(p) - 1.0) < 1e-15);
  // additivity: phase(t1 + t2) = phase(t1) phase(t2) despite the reduction
  const cplx p1 = eigenphase(0.37, 5.0, 1e-3), p2 = eigenphase(0.21, 5.0, 1e-3);
  const cplx p12 = eigenphase(0.58, 5.0, 1e-3);
  CHECK(std::abs(p1 * p2 - p12) < 1e-9);
}

TEST_CASE("shifted eigenvalue table: B = 0 gives lambda = E_p + (eps xi)^2") {
  const Env e(1.0, 0.0);
  const double eps = 0.3;
  const ShiftedBasisTable tab = build_shifted_table(e.pot, eps, e.g2, e.g1, 4);
  for (int i = 0; i < e.g2.nx; ++i)
    for (int p = 0; p < 4; ++p) {
      const double ex = e.basis.E[p] + eps * eps * e.g2.xi[i] * e.g2.xi[i];
      CHECK(tab.lambda[(std::size_t)i * 4 + p] == doctest::Approx(ex).epsilon(1e-7));
    }
  CHECK(tab.min_shift_margin > 0.0);
}

TEST_CASE("linear flow applies exact eigenphases to a product state") {
  const Env e(1.0, 0.0);  // B = 0: the z modes are xi-independent
  const double eps = 0.5, dt = 0.37;
  const ShiftedBasisTable tab = build_shifted_table(e.pot, eps, e.g2, e.g1, 8);
  const int p = 2, ix = 3, jy = 5;
  Field3D f = e.state(p, ix, jy);
  const Field3D f0 = f;
  step_full(f, tab, dt, Nonlin::None, nullptr);
  const double lam = tab.lambda[(std::size_t)ix * 8 + p];
  const cplx ph = std::polar(1.0, -dt * (lam / (eps * eps) + e.g2.eta[jy] * e.g2.eta[jy]));
  double dev = 0.0;
  for (std::size_t k = 0; k < f.v.size(); ++k)
    dev = std::max(dev, std::abs(f.v[k] - ph * f0.v[k]));
  CHECK(dev < 1e-8);
}

TEST_CASE("full step conserves mass for any substep content") {
  const Env e;
  const double eps = 0.4;
  const ShiftedBasisTable tab = build_shifted_table(e.pot, eps, e.g2, e.g1, 8);
  const KernelMultiplier K3 = build_kernel3d(e.g2, e.g1, eps);
  Field3D f = e.state(0, 1, 2);
  for (cplx& c : f.v) c *= 0.3;
  const double m0 = l2_norm(f);
  for (int k = 0; k < 5; ++k) step_full(f, tab, 0.05, Nonlin::F1, &K3);
  // the potential substep pushes a little mass beyond the P_z truncation,
  // which the next projection discards; only that tail can leak
  CHECK(l2_norm(f) == doctest::Approx(m0).epsilon(1e-8));
}

TEST_CASE("linear flow composition: two half steps equal one full step") {
  const Env e;
  const ShiftedBasisTable tab = build_shifted_table(e.pot, 0.25, e.g2, e.g1, 8);
  Field3D a = e.state(1, 2, 3);
  Field3D b = a;
  step_full(a, tab, 0.2, Nonlin::None, nullptr);
  step_full(b, tab, 0.1, Nonlin::None, nullptr);
  step_full(b, tab, 0.1, Nonlin::None, nullptr);
  double dev = 0.0;
  for (std::size_t k = 0; k < a.v.size(); ++k) dev = std::max(dev, std::abs(a.v[k] - b.v[k]));
  CHECK(dev < 1e-10);
}

TEST_CASE("analytic harmonic benchmark: identity at t = 0, matches the solver") {
  const Grid2D g2 = Grid2D::make(16.0, 16.0, 16, 16);
  const Grid1D g1 = Grid1D::make(10.0, 512);
  PotentialSpec s;
  s.a = 1.0;
  s.B = 1.0;
  const Potential pot = build_potential(s, g1);
  const EigenBasis bench = solve_eigs(pot, g1, 24);
  Field3D psi0 = Field3D::make(Repr::GridZ, g2, g1, g1.nz);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      const double env = std::exp(-(g2.x[i] * g2.x[i] + g2.y[j] * g2.y[j]) / 2.0);
      for (int k = 0; k < g1.nz; ++k)
        psi0.at(i, j, k) = env * (0.8 * bench.mode(0)[k] + 0.6 * bench.mode(1)[k]);
    }
  const double n0 = l2_norm(psi0);
  for (cplx& c : psi0.v) c /= n0;

  const Field3D id = analytic_harmonic_benchmark(psi0, 1.0, 1.0, 0.5, 0.0, bench);
  double dev = 0.0;
  for (std::size_t k = 0; k < id.v.size(); ++k)
    dev = std::max(dev, std::abs(id.v[k] - psi0.v[k]));
  CHECK(dev < 1e-8);

  const double eps = 0.5, T = 0.2;
  const ShiftedBasisTable tab = build_shifted_table(pot, eps, g2, g1, 10);
  Field3D f = psi0;
  step_full(f, tab, T / 2, Nonlin::None, nullptr);
  step_full(f, tab, T / 2, Nonlin::None, nullptr);
  const Field3D ex = analytic_harmonic_benchmark(psi0, 1.0, 1.0, eps, T, bench);
  for (std::size_t k = 0; k < f.v.size(); ++k) f.v[k] -= ex.v[k];
  CHECK(l2_norm(f) < 1e-6);
}

TEST_CASE("theorem error vanishes on a manufactured consistent pair") {
  const Env e;
  const double eps = 0.3;
  // limit state: one Gaussian per mode; full state: its mode-phased synthesis
  const Grid2D& g2 = e.g2;
  ModeSet m = ModeSet::make(g2, 8);
  for (int p = 0; p < 3; ++p)
    for (int i = 0; i < g2.nx; ++i)
      for (int j = 0; j < g2.ny; ++j)
        m.phi[p][(std::size_t)i * g2.ny + j] =
            std::exp(-(g2.x[i] * g2.x[i] + g2.y[j] * g2.y[j]) / 2.0) / (1.0 + p);
  const double t = 0.7;
  m.t = t;
  Field3D f = Field3D::make(Repr::GridZ, g2, e.g1, e.g1.nz);
  for (int p = 0; p < 3; ++p) {
    const cplx ph = eigenphase(t, e.basis.E[p], eps);
    for (int i = 0; i < g2.nx; ++i)
      for (int j = 0; j < g2.ny; ++j) {
        const cplx c = ph * m.phi[p][(std::size_t)i * g2.ny + j];
        for (int k = 0; k < e.g1.nz; ++k) f.at(i, j, k) += c * e.basis.mode(p)[k];
      }
  }
  const ErrorCurve ec = theorem_error({f}, {m}, {t}, e.basis, eps);
  REQUIRE(ec.e.size() == 1);
  CHECK(ec.sup < 1e-10);
  CHECK(ec.e[0] == ec.sup);
}

TEST_CASE("full trajectory records mass/energy and halts on NaN") {
  const Env e;
  const ShiftedBasisTable tab = build_shifted_table(e.pot, 0.5, e.g2, e.g1, 8);
  Field3D psi0 = e.state(0, 0, 0);
  const FullTrajectory tr = evolve_full(psi0, tab, 0.2, 0.05, 0.1, Nonlin::None, nullptr);
  REQUIRE(tr.halt.empty());
  CHECK(tr.times.size() == 3);
  for (double mv : tr.mass) CHECK(mv == doctest::Approx(tr.mass[0]).epsilon(1e-12));
  for (double ev : tr.energy) CHECK(ev == doctest::Approx(tr.energy[0]).epsilon(1e-10));

  Field3D bad = psi0;
  bad.v[17] = cplx(std::nan(""), 0.0);
  const FullTrajectory tb = evolve_full(bad, tab, 0.2, 0.05, 0.1, Nonlin::None, nullptr);
  CHECK(!tb.halt.empty());
  CHECK(tb.halt.find("NaN") != std::string::npos);
}
