// Command-line driver: quantum-waveguide dimension-reduction toolkit.
#include <omp.h>

#include <chrono>
#include <iostream>

#include "CLI11.hpp"
#include "cyqw/harness.hpp"
#include "cyqw/reference.hpp"

using namespace cyqw;

namespace {

struct Common {
  std::string config;
  std::string out;
  int threads = 0;
  bool override_negative_alpha = false;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "run configuration file (INI)");
  app->add_option("--out", c.out, "output directory (overrides io.out)");
  app->add_option("--threads", c.threads, "OpenMP thread count (0 = runtime default)");
  app->add_flag("--override-negative-alpha", c.override_negative_alpha,
                "proceed even when an effective-mass coefficient is non-positive");
}

struct Setup {
  RunConfig cfg;
  std::string out;
  RunManifest man;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  explicit Setup(const Common& c) {
    if (!c.config.empty()) cfg = parse_config(c.config);
    if (c.threads > 0) omp_set_num_threads(c.threads);
    if (c.override_negative_alpha) cfg.override_negative_alpha = true;
    out = c.out.empty() ? cfg.out_dir : c.out;
    ensure_dir(out);
    man.add("tool_version", kToolVersion);
    man.add("config", c.config.empty() ? "<defaults>" : c.config);
  }
  std::string path(const std::string& name) const { return out + "/" + cfg.prefix + "_" + name; }
  void finish(const std::string& phase) {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    man.add("seconds_" + phase, fmt(s));
    man.write(path("manifest.txt"));
  }
};

struct Stack {
  Grid2D g2;
  Grid1D g1;
  Potential pot;
  EigenBasis basis;

  explicit Stack(const RunConfig& cfg)
      : g2(Grid2D::make(cfg.Lx, cfg.Ly, cfg.nx, cfg.ny)),
        g1(Grid1D::make(cfg.Lz, cfg.nz)),
        pot(build_potential(cfg.pot, g1)),
        basis(solve_eigs(pot, g1, cfg.P > 0 ? cfg.P : select_P(pot, g1, 16))) {}
};

int cmd_eigs(const Common& c) {
  Setup s(c);
  Stack st(s.cfg);
  write_eigs_csv(s.path("eigs.csv"), st.basis, check_gap(st.basis));
  s.man.add("P", std::to_string(st.basis.P));
  s.man.add_artifact(s.path("eigs.csv"), st.basis.potential_fingerprint);
  s.finish("eigs");
  std::cout << "wrote " << s.path("eigs.csv") << " (P=" << st.basis.P << ")\n";
  return 0;
}

int cmd_effmass(const Common& c) {
  Setup s(c);
  Stack st(s.cfg);
  const CouplingData cd = effective_mass_coeffs(st.basis, s.cfg.pot.B);
  write_effmass_csv(s.path("effmass.csv"), st.basis, cd);
  s.man.add_artifact(s.path("effmass.csv"), cd.basis_fingerprint);
  s.finish("effmass");
  bool neg = false;
  for (int p = 0; p < cd.P; ++p)
    if (cd.trusted[p] && cd.alpha[p] <= 0.0) neg = true;
  std::cout << "wrote " << s.path("effmass.csv") << (neg ? " (non-positive alpha present)" : "")
            << "\n";
  if (neg && !s.cfg.override_negative_alpha) {
    std::cerr << "error: non-positive effective mass; transport model ill-posed "
                 "(--override-negative-alpha to ignore)\n";
    return 1;
  }
  return 0;
}

int cmd_dispersion(const Common& c) {
  Setup s(c);
  Stack st(s.cfg);
  const CouplingData cd = effective_mass_coeffs(st.basis, s.cfg.pot.B);
  const double eps = s.cfg.eps_list.front();
  const DispersionProbe pr = dispersion_check(st.pot, eps, {0.5, 1.0, 2.0}, st.basis, cd);
  write_dispersion_csv(s.path("dispersion.csv"), pr, st.basis.P);
  s.man.add("eps", fmt(eps));
  s.man.add("max_dev", fmt(pr.max_dev));
  s.finish("dispersion");
  std::cout << "wrote " << s.path("dispersion.csv") << " max_dev=" << pr.max_dev << "\n";
  return 0;
}

int cmd_kernels(const Common& c) {
  Setup s(c);
  Stack st(s.cfg);
  const Field3D u = build_initial_datum(s.cfg, st.g2, st.basis);
  const KernelGapResult kg = kernel_gap_estimate(u, s.cfg.eps_list, st.basis);
  write_kernelgap_csv(s.path("kernelgap.csv"), kg);
  s.finish("kernels");
  std::cout << "wrote " << s.path("kernelgap.csv") << " slope=" << kg.slope
            << " monotone=" << kg.monotone << "\n";
  return 0;
}

int cmd_evolve_limit(const Common& c) {
  Setup s(c);
  Stack st(s.cfg);
  const CouplingData cd = effective_mass_coeffs(st.basis, s.cfg.pot.B);
  const KernelMultiplier K2 = build_kernel2d(st.g2);
  const Field3D psi0 = build_initial_datum(s.cfg, st.g2, st.basis);
  const ModeSet m0 = init_modes(psi0, st.basis, s.cfg.tail_threshold);
  LimitRunConfig lc;
  lc.T = s.cfg.T;
  lc.dt = s.cfg.dt;
  lc.snap_dt = s.cfg.snap_dt;
  lc.use_W = s.cfg.nonlinearity != Nonlin::None;
  lc.guard_factor = s.cfg.guard_factor;
  lc.override_negative_alpha = s.cfg.override_negative_alpha;
  const LimitTrajectory tr = evolve_limit(m0, st.basis, cd.alpha, K2, lc);
  write_diag_csv(s.path("diag.csv"), tr.diag);
  // final state as a mode-z container
  const ModeSet& mf = tr.snaps.back();
  Field3D f = Field3D::make(Repr::ModeZ, st.g2, st.g1, mf.P);
  for (int p = 0; p < mf.P; ++p)
    for (int i = 0; i < st.g2.nx; ++i)
      for (int j = 0; j < st.g2.ny; ++j)
        f.at(i, j, p) = mf.phi[p][(std::size_t)i * st.g2.ny + j];
  write_field(s.path("limit_final.cyqw"), f);
  s.man.add("t_final", fmt(tr.times.back()));
  s.man.add("halt", tr.halt.empty() ? "none" : tr.halt);
  s.man.add_artifact(s.path("limit_final.cyqw"), field_fingerprint(f));
  s.finish("evolve_limit");
  std::cout << "limit run to t=" << tr.times.back()
            << (tr.halt.empty() ? "" : "  HALT: " + tr.halt) << "\n";
  return tr.halt.empty() ? 0 : 1;
}

int cmd_evolve_full(const Common& c) {
  Setup s(c);
  Stack st(s.cfg);
  const Field3D psi0 = build_initial_datum(s.cfg, st.g2, st.basis);
  KernelMultiplier K2;
  if (s.cfg.nonlinearity == Nonlin::F0) K2 = build_kernel2d(st.g2);
  int rc = 0;
  for (double eps : s.cfg.eps_list) {
    const ShiftedBasisTable tab = build_shifted_table(st.pot, eps, st.g2, st.g1, s.cfg.Pz);
    KernelMultiplier K3;
    const KernelMultiplier* K = nullptr;
    if (s.cfg.nonlinearity == Nonlin::F1) {
      K3 = build_kernel3d(st.g2, st.g1, eps);
      K = &K3;
    } else if (s.cfg.nonlinearity == Nonlin::F0) {
      K = &K2;
    }
    const FullTrajectory tr =
        evolve_full(psi0, tab, s.cfg.T, s.cfg.dt, s.cfg.snap_dt, s.cfg.nonlinearity, K);
    const std::string tag = "full_eps" + fmt(eps);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < tr.times.size(); ++k)
      rows.push_back({fmt(tr.times[k]), fmt(tr.mass[k]), fmt(tr.energy[k])});
    write_csv(s.path(tag + "_series.csv"), "t,mass,energy", rows);
    write_field(s.path(tag + "_final.cyqw"), tr.snaps.back());
    s.man.add_artifact(s.path(tag + "_final.cyqw"), field_fingerprint(tr.snaps.back()));
    std::cout << "eps=" << eps << " ran to t=" << tr.times.back()
              << (tr.halt.empty() ? "" : "  HALT: " + tr.halt) << "\n";
    if (!tr.halt.empty()) rc = 1;
  }
  s.finish("evolve_full");
  return rc;
}

int cmd_bench_harmonic(const Common& c) {
  Setup s(c);
  if (s.cfg.pot.kind != PotentialSpec::Kind::Harmonic)
    throw Error("config: bench-harmonic requires potential.type = harmonic");
  Stack st(s.cfg);
  const EigenBasis bench = solve_eigs(st.pot, st.g1, std::min(48, st.g1.nz / 4));
  const Field3D psi0 = build_initial_datum(s.cfg, st.g2, bench);
  std::vector<std::vector<std::string>> rows;
  double worst = 0.0;
  for (double eps : s.cfg.eps_list) {
    const ShiftedBasisTable tab = build_shifted_table(st.pot, eps, st.g2, st.g1, s.cfg.Pz);
    Field3D f = psi0;
    const long long n = std::llround(s.cfg.T / s.cfg.dt);
    for (long long k = 0; k < n; ++k) step_full(f, tab, s.cfg.dt, Nonlin::None, nullptr);
    const Field3D ex = analytic_harmonic_benchmark(psi0, s.cfg.pot.a, s.cfg.pot.B, eps,
                                                   s.cfg.T, bench);
    for (std::size_t k = 0; k < f.v.size(); ++k) f.v[k] -= ex.v[k];
    const double err = l2_norm(f);
    worst = std::max(worst, err);
    rows.push_back({fmt(eps), fmt(err)});
    std::cout << "eps=" << eps << "  |full - analytic|_L2 = " << err << "\n";
  }
  write_csv(s.path("bench_harmonic.csv"), "eps,l2_error", rows);
  s.man.add("worst_error", fmt(worst));
  s.finish("bench_harmonic");
  return 0;
}

int cmd_sweep(const Common& c) {
  Setup s(c);
  const SweepResult sr = run_sweep(s.cfg, std::cout);
  write_error_csv(s.path("error.csv"), sr);
  s.man.add("slope", fmt(sr.slope));
  s.man.add("monotone", sr.monotone ? "1" : "0");
  s.finish("sweep");
  std::cout << "wrote " << s.path("error.csv") << " slope=" << sr.slope
            << " monotone=" << sr.monotone << "\n";
  int rc = 0;
  for (const std::string& f : sr.failed)
    if (!f.empty()) rc = 1;
  return rc;
}

int cmd_accept(const Common& c, const std::string& suite) {
  if (c.threads > 0) omp_set_num_threads(c.threads);
  const std::string out = c.out.empty() ? "accept_out" : c.out;
  const std::vector<AcceptRow> rows = run_acceptance(suite, out, std::cout);
  int nfail = 0;
  for (const AcceptRow& r : rows) nfail += r.pass ? 0 : 1;
  std::cout << rows.size() - nfail << "/" << rows.size() << " checks passed\n";
  return nfail == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dimension-reduction toolkit for strongly confined quantum waveguides"};
  app.require_subcommand(1);

  Common c;
  std::string suite = "all";
  std::function<int()> action;
  auto reg = [&](const char* name, const char* desc, std::function<int()> fn) {
    CLI::App* sub = app.add_subcommand(name, desc);
    add_common(sub, c);
    sub->callback([&action, fn] { action = fn; });
    return sub;
  };
  reg("eigs", "confinement spectrum and gap report", [&] { return cmd_eigs(c); });
  reg("effmass", "effective-mass coefficients", [&] { return cmd_effmass(c); });
  reg("dispersion", "per-wavevector dispersion cross-check", [&] { return cmd_dispersion(c); });
  reg("kernels", "anisotropic-vs-limit kernel gap", [&] { return cmd_kernels(c); });
  reg("evolve-limit", "evolve the reduced limit model", [&] { return cmd_evolve_limit(c); });
  reg("evolve-full", "evolve the full model per epsilon", [&] { return cmd_evolve_full(c); });
  reg("bench-harmonic", "full solver vs analytic harmonic solution",
      [&] { return cmd_bench_harmonic(c); });
  reg("sweep", "full-vs-limit convergence sweep", [&] { return cmd_sweep(c); });
  CLI::App* acc = reg("accept", "run the acceptance criteria",
                      [&] { return cmd_accept(c, suite); });
  acc->add_option("suite", suite,
                  "spectrum|effmass|kernels|limit|full|sweep|determinism|all");

  CLI11_PARSE(app, argc, argv);
  try {
    return action();
  } catch (const Error& e) {
    const std::string msg = e.what();
    std::cerr << "error: " << msg << "\n";
    return msg.rfind("config", 0) == 0 ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
