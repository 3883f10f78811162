#include "cyqw/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cyqw/norms.hpp"

namespace cyqw {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_num(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (...) {
    throw Error("config: key '" + key + "': not a number: '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  const double x = to_num(key, v);
  if (x != std::floor(x)) throw Error("config: key '" + key + "': not an integer");
  return (int)x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw Error("config: key '" + key + "': not a boolean");
}

std::vector<double> load_table(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("config: cannot open potential table " + path);
  std::vector<double> t;
  double v;
  while (is >> v) t.push_back(v);
  return t;
}

}  // namespace

RunConfig parse_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("config: cannot open " + path);
  RunConfig c;
  std::string line, sec;
  std::string pot_file;
  int ln = 0;
  while (std::getline(is, line)) {
    ++ln;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw Error("config: malformed section at line " + std::to_string(ln));
      sec = line.substr(1, line.size() - 2);
      if (sec != "potential" && sec != "grids" && sec != "epsilon" && sec != "time" &&
          sec != "solver" && sec != "io" && sec != "init")
        throw Error("config: unknown section [" + sec + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("config: expected key=value at line " + std::to_string(ln));
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    const std::string q = sec + "." + key;

    if (q == "potential.type") {
      if (val == "harmonic") c.pot.kind = PotentialSpec::Kind::Harmonic;
      else if (val == "power") c.pot.kind = PotentialSpec::Kind::Power;
      else if (val == "perturbed_harmonic") c.pot.kind = PotentialSpec::Kind::PerturbedHarmonic;
      else if (val == "tabulated") c.pot.kind = PotentialSpec::Kind::Tabulated;
      else throw Error("config: potential.type must be harmonic|power|perturbed_harmonic|tabulated");
    } else if (q == "potential.a") c.pot.a = to_num(q, val);
    else if (q == "potential.s") c.pot.s = to_num(q, val);
    else if (q == "potential.B") c.pot.B = to_num(q, val);
    else if (q == "potential.file") pot_file = val;
    else if (q == "grids.nx") c.nx = to_int(q, val);
    else if (q == "grids.ny") c.ny = to_int(q, val);
    else if (q == "grids.nz") c.nz = to_int(q, val);
    else if (q == "grids.Lx") c.Lx = to_num(q, val);
    else if (q == "grids.Ly") c.Ly = to_num(q, val);
    else if (q == "grids.Lz") c.Lz = to_num(q, val);
    else if (q == "grids.P") c.P = (val == "auto") ? 0 : to_int(q, val);
    else if (q == "grids.Pz") c.Pz = to_int(q, val);
    else if (q == "epsilon.list") {
      c.eps_list.clear();
      std::stringstream ss(val);
      std::string tok;
      while (std::getline(ss, tok, ',')) c.eps_list.push_back(to_num(q, trim(tok)));
    } else if (q == "time.T") c.T = to_num(q, val);
    else if (q == "time.dt") c.dt = to_num(q, val);
    else if (q == "time.snap_dt") c.snap_dt = to_num(q, val);
    else if (q == "solver.nonlinearity") {
      if (val == "F1") c.nonlinearity = Nonlin::F1;
      else if (val == "F0") c.nonlinearity = Nonlin::F0;
      else if (val == "none") c.nonlinearity = Nonlin::None;
      else throw Error("config: solver.nonlinearity must be F1|F0|none");
    } else if (q == "solver.guard_factor") c.guard_factor = to_num(q, val);
    else if (q == "solver.tail_threshold") c.tail_threshold = to_num(q, val);
    else if (q == "solver.override_negative_alpha") c.override_negative_alpha = to_bool(q, val);
    else if (q == "io.out") c.out_dir = val;
    else if (q == "io.prefix") c.prefix = val;
    else if (q == "init.sx") c.sx = to_num(q, val);
    else if (q == "init.sy") c.sy = to_num(q, val);
    else if (q == "init.x0") c.x0 = to_num(q, val);
    else if (q == "init.y0") c.y0 = to_num(q, val);
    else if (q == "init.kx") c.kx = to_num(q, val);
    else if (q == "init.ky") c.ky = to_num(q, val);
    else if (q == "init.normalize") c.normalize = to_bool(q, val);
    else if (q == "init.zmodes") {
      c.zmodes.clear();
      std::stringstream ss(val);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        const auto col = tok.find(':');
        if (col == std::string::npos) throw Error("config: init.zmodes entries are p:coeff");
        c.zmodes.emplace_back(to_int(q, trim(tok.substr(0, col))),
                              to_num(q, trim(tok.substr(col + 1))));
      }
    } else {
      throw Error("config: unknown key '" + q + "'");
    }
  }
  if (!pot_file.empty()) c.pot.table = load_table(pot_file);

  // cross-constraints
  if (!is_pow2(c.nx) || !is_pow2(c.ny))
    throw Error("config: grids.nx/ny must be powers of two (radix-2 transforms)");
  if (c.nz < 8) throw Error("config: grids.nz too small");
  for (double e : c.eps_list)
    if (e <= 0.0) throw Error("config: epsilon.list entries must be positive");
  for (std::size_t i = 1; i < c.eps_list.size(); ++i)
    if (c.eps_list[i] >= c.eps_list[i - 1])
      throw Error("config: epsilon.list must be strictly decreasing");
  if (c.T <= 0.0 || c.dt <= 0.0 || c.snap_dt <= 0.0)
    throw Error("config: time.T, time.dt, time.snap_dt must be positive");
  if (c.P > c.nz / 4)
    throw Error("config: grids.P exceeds n_z/4 (resolution safety margin P <= n_z/4)");
  if (c.Pz > c.nz / 4)
    throw Error("config: grids.Pz exceeds n_z/4 (resolution safety margin)");
  for (auto& [p, w] : c.zmodes)
    if (p < 0) throw Error("config: init.zmodes indices must be nonnegative");
  return c;
}

Field3D build_initial_datum(const RunConfig& cfg, const Grid2D& g2, const EigenBasis& basis) {
  Field3D f = Field3D::make(Repr::GridZ, g2, basis.grid, basis.grid.nz);
  const int nx = g2.nx, ny = g2.ny, nz = basis.grid.nz;
  std::vector<double> zprof(nz, 0.0);
  for (auto& [p, w] : cfg.zmodes) {
    if (p >= basis.P)
      throw Error("build_initial_datum: zmode index exceeds basis mode count");
    const double* c = basis.mode(p);
    for (int k = 0; k < nz; ++k) zprof[k] += w * c[k];
  }
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nx; ++i) {
    const double xx = g2.x[i] - cfg.x0;
    for (int j = 0; j < ny; ++j) {
      const double yy = g2.y[j] - cfg.y0;
      const double env = std::exp(-xx * xx / (2.0 * cfg.sx * cfg.sx) -
                                  yy * yy / (2.0 * cfg.sy * cfg.sy));
      const double ph = cfg.kx * g2.x[i] + cfg.ky * g2.y[j];
      const cplx g = env * cplx(std::cos(ph), std::sin(ph));
      cplx* col = &f.at(i, j, 0);
      for (int k = 0; k < nz; ++k) col[k] = g * zprof[k];
    }
  }
  if (cfg.normalize) {
    const double n = l2_norm(f);
    if (n == 0.0) throw Error("build_initial_datum: zero initial datum");
    for (cplx& c : f.v) c /= n;
  }
  return f;
}

}  // namespace cyqw
