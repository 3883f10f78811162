#include "cyqw/harness.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cyqw/full_solver.hpp"

namespace cyqw {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void ensure_dir(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw Error("cannot create directory " + path + ": " + ec.message());
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<std::string>>& rows,
               const std::vector<std::string>& footer) {
  std::ofstream os(path, std::ios::binary);  // binary: fixed newline policy
  if (!os) throw Error("cannot open " + path);
  os << header << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << "\n";
  }
  for (const auto& f : footer) os << f << "\n";
}

void RunManifest::add_artifact(const std::string& path, std::uint64_t fingerprint) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fingerprint);
  entries.emplace_back("artifact:" + path, buf);
}

void RunManifest::write(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path);
  for (const auto& [k, v] : entries) os << k << "=" << v << "\n";
}

void write_eigs_csv(const std::string& path, const EigenBasis& b, const GapReport& gr) {
  std::vector<std::vector<std::string>> rows;
  for (int p = 0; p < b.P; ++p)
    rows.push_back({std::to_string(p), fmt(b.E[p]),
                    p + 1 < b.P ? fmt(b.E[p + 1] - b.E[p]) : ""});
  write_csv(path, "p,E_p,gap", rows,
            {"# gap fit: n0=" + fmt(gr.n0) + " C=" + fmt(gr.C) +
             " pass=" + (gr.pass ? "1" : "0") +
             (gr.low_confidence ? " low_confidence=1" : "")});
}

void write_effmass_csv(const std::string& path, const EigenBasis& b, const CouplingData& cd) {
  std::vector<std::vector<std::string>> rows;
  for (int p = 0; p < cd.P; ++p)
    rows.push_back({std::to_string(p), fmt(b.E[p]), fmt(cd.alpha[p]),
                    fmt(cd.tail_bound[p]), cd.trusted[p] ? "1" : "0"});
  write_csv(path, "p,E_p,alpha_p,tail_bound_p,trusted", rows);
}

void write_dispersion_csv(const std::string& path, const DispersionProbe& pr, int P) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t ix = 0; ix < pr.xi.size(); ++ix)
    for (int p = 0; p < P; ++p)
      rows.push_back({fmt(pr.xi[ix]), std::to_string(p), fmt(pr.lambda[ix * P + p]),
                      fmt(pr.curvature[p])});
  write_csv(path, "xi,p,lambda,curvature", rows);
}

void write_kernelgap_csv(const std::string& path, const KernelGapResult& r) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < r.eps.size(); ++i)
    rows.push_back({fmt(r.eps[i]), fmt(r.gap[i]), fmt(r.ngap[i])});
  write_csv(path, "eps,gap,normalized_gap", rows,
            {"# slope=" + fmt(r.slope) + " monotone=" + (r.monotone ? "1" : "0")});
}

void write_diag_csv(const std::string& path, const DiagnosticsRecord& d) {
  std::vector<std::vector<std::string>> rows;
  const int P = d.mode_mass.empty() ? 0 : (int)d.mode_mass[0].size();
  std::string header = "t,mass,E_conf,E_tr,E_kin_x,E_kin_y,E_pot";
  for (int p = 0; p < P; ++p) header += ",mu_" + std::to_string(p);
  for (std::size_t s = 0; s < d.t.size(); ++s) {
    std::vector<std::string> row{fmt(d.t[s]),      fmt(d.mass[s]),   fmt(d.Econf[s]),
                                 fmt(d.Etr[s]),    fmt(d.Ekin_x[s]), fmt(d.Ekin_y[s]),
                                 fmt(d.Epot[s])};
    for (int p = 0; p < P; ++p) row.push_back(fmt(d.mode_mass[s][p]));
    rows.push_back(row);
  }
  write_csv(path, header, rows);
}

SweepResult run_sweep(const RunConfig& cfg, std::ostream& log) {
  SweepResult res;
  const Grid2D g2 = Grid2D::make(cfg.Lx, cfg.Ly, cfg.nx, cfg.ny);
  const Grid1D g1 = Grid1D::make(cfg.Lz, cfg.nz);
  const Potential pot = build_potential(cfg.pot, g1);
  const int P = cfg.P > 0 ? cfg.P : select_P(pot, g1, 16);
  const EigenBasis basis = solve_eigs(pot, g1, P);
  const CouplingData cd = effective_mass_coeffs(basis, cfg.pot.B);
  const Field3D psi0 = build_initial_datum(cfg, g2, basis);

  const bool nonlinear = cfg.nonlinearity != Nonlin::None;
  KernelMultiplier K2;
  if (nonlinear) K2 = build_kernel2d(g2);

  log << "sweep: limit trajectory (P=" << P << ", nonlinear=" << nonlinear << ")\n";
  const ModeSet m0 = init_modes(psi0, basis, cfg.tail_threshold);
  LimitRunConfig lc;
  lc.T = cfg.T;
  lc.dt = cfg.dt;
  lc.snap_dt = cfg.snap_dt;
  lc.use_W = nonlinear;
  lc.guard_factor = cfg.guard_factor;
  lc.override_negative_alpha = cfg.override_negative_alpha;
  const LimitTrajectory limit = evolve_limit(m0, basis, cd.alpha, K2, lc);
  if (!limit.halt.empty()) throw Error("sweep: limit run halted: " + limit.halt);

  for (double eps : cfg.eps_list) {
    log << "sweep: eps=" << eps << "\n";
    res.eps.push_back(eps);
    try {
      const ShiftedBasisTable tab = build_shifted_table(pot, eps, g2, g1, cfg.Pz);
      KernelMultiplier K3;
      const KernelMultiplier* K = nullptr;
      if (cfg.nonlinearity == Nonlin::F1) {
        K3 = build_kernel3d(g2, g1, eps);
        K = &K3;
      } else if (cfg.nonlinearity == Nonlin::F0) {
        K = &K2;
      }
      const FullTrajectory full =
          evolve_full(psi0, tab, cfg.T, cfg.dt, cfg.snap_dt, cfg.nonlinearity, K);
      if (!full.halt.empty()) throw Error("full run halted: " + full.halt);
      const ErrorCurve ec = theorem_error(full.snaps, limit.snaps, limit.times, basis, eps);
      res.sup_err.push_back(ec.sup);
      res.curves.push_back(ec);
      res.failed.emplace_back();
    } catch (const std::exception& ex) {
      res.sup_err.push_back(std::nan(""));
      res.curves.emplace_back();
      res.failed.emplace_back(ex.what());
      log << "sweep: eps=" << eps << " FAILED: " << ex.what() << "\n";
    }
  }
  res.monotone = true;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < res.eps.size(); ++i) {
    if (!res.failed[i].empty()) { res.monotone = false; continue; }
    if (i > 0 && res.failed[i - 1].empty() && !(res.sup_err[i] < res.sup_err[i - 1]))
      res.monotone = false;
    const double lx = std::log(res.eps[i]), ly = std::log(res.sup_err[i]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    ++n;
  }
  if (n >= 2) res.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return res;
}

void write_error_csv(const std::string& path, const SweepResult& s) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < s.eps.size(); ++i) {
    if (!s.failed[i].empty()) {
      rows.push_back({fmt(s.eps[i]), "", "failed"});
      continue;
    }
    for (std::size_t k = 0; k < s.curves[i].t.size(); ++k)
      rows.push_back({fmt(s.eps[i]), fmt(s.curves[i].t[k]), fmt(s.curves[i].e[k])});
  }
  write_csv(path, "eps,t,e", rows,
            {"# slope=" + fmt(s.slope) + " monotone=" + (s.monotone ? "1" : "0")});
}

}  // namespace cyqw
