// Timing comparison: OpenMP kernels vs their serial reference twins.
// The two flavors must agree bitwise (threads only split disjoint outputs);
// this target reports the speedup and verifies the agreement on the fly.
#include <omp.h>

#include <chrono>
#include <cstdio>

#include "cyqw/limit_solver.hpp"
#include "cyqw/reference.hpp"

using namespace cyqw;
using clk = std::chrono::steady_clock;

namespace {

double seconds(clk::time_point a, clk::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

template <class F>
double time_best(F&& f, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = clk::now();
    f();
    best = std::min(best, seconds(t0, clk::now()));
  }
  return best;
}

void report(const char* name, double ts, double tp, bool bitwise) {
  std::printf("%-28s serial %8.4f s  parallel %8.4f s  speedup %5.2fx  %s\n", name, ts, tp,
              ts / tp, bitwise ? "bitwise-identical" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  const Grid2D g2 = Grid2D::make(16.0, 16.0, 64, 64);
  const Grid1D g1 = Grid1D::make(10.0, 1024);
  PotentialSpec spec;
  spec.a = 1.0;
  spec.B = 1.0;
  const Potential pot = build_potential(spec, g1);
  const EigenBasis basis = solve_eigs(pot, g1, 12);

  Field3D f = Field3D::make(Repr::GridZ, g2, g1, g1.nz);
  std::uint64_t s = 1;
  for (cplx& c : f.v) {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    c = cplx((double)(s >> 33) * 1e-10, (double)((s >> 12) & 0xffffff) * 1e-8);
  }

  int bad = 0;

  {
    Field3D mp, ms;
    const double tp = time_best([&] { mp = project_modes(f, basis); });
    const double ts = time_best([&] { ms = project_modes_serial(f, basis); });
    const bool ok = mp.v == ms.v;
    report("mode projection", ts, tp, ok);
    bad += !ok;

    Field3D sp, ss;
    const double tp2 = time_best([&] { sp = synth_modes(mp, basis); });
    const double ts2 = time_best([&] { ss = synth_modes_serial(mp, basis); });
    const bool ok2 = sp.v == ss.v;
    report("mode synthesis", ts2, tp2, ok2);
    bad += !ok2;
  }

  {
    ModeSet m = ModeSet::make(g2, basis.P);
    for (int p = 0; p < basis.P; ++p)
      for (int i = 0; i < g2.nx; ++i)
        for (int j = 0; j < g2.ny; ++j)
          m.phi[p][(std::size_t)i * g2.ny + j] =
              std::exp(-(g2.x[i] * g2.x[i] + g2.y[j] * g2.y[j]) / 2.0) / (p + 1.0);
    fourier_xy(m, -1);
    const std::vector<double> alpha(basis.P, 0.5);
    ModeSet a, b;
    const double tp = time_best([&] {
      a = m;
      for (int r = 0; r < 200; ++r) kinetic_phase(a, alpha, 1e-3);
    });
    const double ts = time_best([&] {
      b = m;
      for (int r = 0; r < 200; ++r) kinetic_phase_serial(b, alpha, 1e-3);
    });
    bool ok = true;
    for (int p = 0; p < m.P; ++p) ok = ok && a.phi[p] == b.phi[p];
    report("kinetic phase x200", ts, tp, ok);
    bad += !ok;
  }

  {
    // density + self-consistent potential: the parallel path is exercised
    // through apply_F0 on the reduced state (fixed-order accumulation).
    ModeSet m = ModeSet::make(g2, basis.P);
    for (int p = 0; p < basis.P; ++p)
      for (int i = 0; i < g2.nx; ++i)
        for (int j = 0; j < g2.ny; ++j)
          m.phi[p][(std::size_t)i * g2.ny + j] =
              std::exp(-(g2.x[i] * g2.x[i] + g2.y[j] * g2.y[j]) / 2.0) / (p + 1.0);
    const KernelMultiplier K2 = build_kernel2d(g2);
    std::vector<double> W;
    const double t = time_best([&] {
      for (int r = 0; r < 50; ++r) W = selfconsistent_W(m, K2);
    });
    std::printf("%-28s %8.4f s (50 evaluations)\n", "density + potential", t);
  }

  return bad == 0 ? 0 : 1;
}
