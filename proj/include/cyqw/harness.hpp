#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "cyqw/config.hpp"
#include "cyqw/coupling.hpp"
#include "cyqw/limit_solver.hpp"

namespace cyqw {

constexpr const char* kToolVersion = "1.0.0";

/// %.17g formatting — round-trip exact, used by every CSV writer so that
/// identical runs produce bitwise-identical files.
std::string fmt(double v);

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<std::string>>& rows,
               const std::vector<std::string>& footer = {});

/// Run manifest: config echo, artifact fingerprints, wall-clock per phase.
/// Timings live only here, never in the CSVs the determinism check compares.
struct RunManifest {
  std::vector<std::pair<std::string, std::string>> entries;
  void add(const std::string& key, const std::string& val) { entries.emplace_back(key, val); }
  void add_artifact(const std::string& path, std::uint64_t fingerprint);
  void write(const std::string& path) const;
};

void ensure_dir(const std::string& path);

// CSV emitters for the standard artifacts
void write_eigs_csv(const std::string& path, const EigenBasis& b, const GapReport& gr);
void write_effmass_csv(const std::string& path, const EigenBasis& b, const CouplingData& cd);
void write_dispersion_csv(const std::string& path, const DispersionProbe& pr, int P);
void write_kernelgap_csv(const std::string& path, const KernelGapResult& r);
void write_diag_csv(const std::string& path, const DiagnosticsRecord& d);

struct SweepResult {
  std::vector<double> eps;
  std::vector<double> sup_err;
  std::vector<std::string> failed;  // halt reasons, empty string = ok
  double slope = 0.0;
  bool monotone = false;
  std::vector<ErrorCurve> curves;
};

/// Full-vs-limit convergence sweep over cfg.eps_list: one shared limit
/// trajectory, one full run per epsilon, B^1 theorem error at matched
/// snapshots.
SweepResult run_sweep(const RunConfig& cfg, std::ostream& log);

void write_error_csv(const std::string& path, const SweepResult& s);

struct AcceptRow {
  int id = 0;
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool less_is_pass = true;  // pass when value <= threshold (else value >= threshold)
  bool pass = false;
};

/// Executes an acceptance suite: spectrum, effmass, kernels, limit, full,
/// sweep, determinism, or all.  Writes report.csv under outdir and one
/// pass/fail line per criterion to log.
std::vector<AcceptRow> run_acceptance(const std::string& suite, const std::string& outdir,
                                      std::ostream& log);

}  // namespace cyqw
