#include "cyqw/poisson.hpp"

#include <algorithm>
#include <cmath>

#include "cyqw/fft.hpp"

namespace cyqw {

namespace {

constexpr std::size_t kPaddedCap = std::size_t(1) << 24;

double mimg(int i, int n, double d) {  // min-image coordinate on the padded grid
  return (i < n / 2 ? i : i - n) * d;
}

// closed-form cell average of 1/(4 pi r) over a 2D cell centered at the origin
double origin_avg_2d(double dx, double dy) {
  auto F = [](double x, double y) {
    const double r = std::hypot(x, y);
    return x * std::log(y + r) + y * std::log(x + r);
  };
  const double a = 0.5 * dx, b = 0.5 * dy;
  const double I = F(a, b) - F(-a, b) - F(a, -b) + F(-a, -b);
  return I / (4.0 * kPi * dx * dy);
}

void finish_multiplier(KernelMultiplier& K, std::vector<double>& tbl, double dV,
                       const std::vector<int>& dims, bool keep_table) {
  std::vector<cplx> buf(tbl.size());
  for (std::size_t i = 0; i < tbl.size(); ++i) buf[i] = cplx(tbl[i], 0.0);
  fftn_raw(buf.data(), dims, -1);
  K.mult.resize(buf.size());
  double mmax = 0.0, imax = 0.0;
  for (std::size_t i = 0; i < buf.size(); ++i) {
    K.mult[i] = buf[i].real() * dV;
    mmax = std::max(mmax, std::abs(K.mult[i]));
    imax = std::max(imax, std::abs(buf[i].imag()) * dV);
  }
  if (imax > 1e-10 * mmax)
    throw Error("build_kernel: multiplier not real, kernel evenness broken");
  if (keep_table) K.table = std::move(tbl);
}

}  // namespace

KernelMultiplier build_kernel2d(const Grid2D& g2, bool keep_table) {
  KernelMultiplier K;
  K.tag = KernelMultiplier::Tag::K2D;
  K.pnx = 2 * g2.nx;
  K.pny = 2 * g2.ny;
  K.pnz = 1;
  K.dx = g2.dx;
  K.dy = g2.dy;
  K.rule_r = 3.5 * g2.dx;
  std::vector<double> tbl((std::size_t)K.pnx * K.pny);
  const int S = K.sub;
  for (int i = 0; i < K.pnx; ++i) {
    const double x = mimg(i, K.pnx, K.dx);
    for (int j = 0; j < K.pny; ++j) {
      const double y = mimg(j, K.pny, K.dy);
      const double r = std::hypot(x, y);
      double v;
      if (r == 0.0) {
        v = origin_avg_2d(K.dx, K.dy);
      } else if (r <= K.rule_r) {
        double s = 0.0;
        for (int si = 0; si < S; ++si) {
          const double ox = ((si + 0.5) / S - 0.5) * K.dx;
          for (int sj = 0; sj < S; ++sj) {
            const double oy = ((sj + 0.5) / S - 0.5) * K.dy;
            s += 1.0 / std::hypot(x + ox, y + oy);
          }
        }
        v = s / (4.0 * kPi * S * S);
      } else {
        v = 1.0 / (4.0 * kPi * r);
      }
      tbl[(std::size_t)i * K.pny + j] = v;
    }
  }
  finish_multiplier(K, tbl, K.dx * K.dy, {K.pnx, K.pny}, keep_table);
  return K;
}

KernelMultiplier build_kernel3d(const Grid2D& g2, const Grid1D& g1, double eps,
                                bool keep_table) {
  KernelMultiplier K;
  K.tag = KernelMultiplier::Tag::K3D;
  K.eps = eps;
  K.pnx = 2 * g2.nx;
  K.pny = 2 * g2.ny;
  K.pnz = 2 * g1.nz;
  const std::size_t need = (std::size_t)K.pnx * K.pny * K.pnz;
  if (need > kPaddedCap)
    throw Error("build_kernel3d: padded grid " + std::to_string(need) +
                " points exceeds cap " + std::to_string(kPaddedCap));
  K.dx = g2.dx;
  K.dy = g2.dy;
  K.dz = g1.dz;
  K.rule_r = 3.5 * g2.dx;
  std::vector<double> tbl(need);
  const int S = K.sub;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < K.pnx; ++i) {
    const double x = mimg(i, K.pnx, K.dx);
    for (int j = 0; j < K.pny; ++j) {
      const double y = mimg(j, K.pny, K.dy);
      for (int k = 0; k < K.pnz; ++k) {
        const double ez = eps * mimg(k, K.pnz, K.dz);
        const double r = std::sqrt(x * x + y * y + ez * ez);
        double v;
        if (r <= K.rule_r) {
          // sub-sampled (x,y) cell average tames the near-axis singularity
          double s = 0.0;
          for (int si = 0; si < S; ++si) {
            const double ox = x + ((si + 0.5) / S - 0.5) * K.dx;
            for (int sj = 0; sj < S; ++sj) {
              const double oy = y + ((sj + 0.5) / S - 0.5) * K.dy;
              s += 1.0 / std::sqrt(ox * ox + oy * oy + ez * ez);
            }
          }
          v = s / (4.0 * kPi * S * S);
        } else {
          v = 1.0 / (4.0 * kPi * r);
        }
        tbl[((std::size_t)i * K.pny + j) * K.pnz + k] = v;
      }
    }
  }
  finish_multiplier(K, tbl, K.dx * K.dy * K.dz, {K.pnx, K.pny, K.pnz}, keep_table);
  return K;
}

std::vector<double> conv2d(const std::vector<double>& rho, const KernelMultiplier& K,
                           int nx, int ny) {
  if (K.tag != KernelMultiplier::Tag::K2D || K.pnx != 2 * nx || K.pny != 2 * ny)
    throw Error("conv2d: kernel/grid mismatch");
  std::vector<cplx> pad((std::size_t)K.pnx * K.pny, cplx(0, 0));
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      pad[(std::size_t)i * K.pny + j] = rho[(std::size_t)i * ny + j];
  fftn_raw(pad.data(), {K.pnx, K.pny}, -1);
  for (std::size_t i = 0; i < pad.size(); ++i) pad[i] *= K.mult[i];
  fftn_raw(pad.data(), {K.pnx, K.pny}, +1);
  const double scal = 1.0 / ((double)K.pnx * K.pny);
  std::vector<double> out((std::size_t)nx * ny);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      out[(std::size_t)i * ny + j] = pad[(std::size_t)i * K.pny + j].real() * scal;
  return out;
}

std::vector<double> conv3d(const std::vector<double>& rho, const KernelMultiplier& K,
                           int nx, int ny, int nz) {
  if (K.tag != KernelMultiplier::Tag::K3D || K.pnx != 2 * nx || K.pny != 2 * ny ||
      K.pnz != 2 * nz)
    throw Error("conv3d: kernel/grid mismatch");
  std::vector<cplx> pad((std::size_t)K.pnx * K.pny * K.pnz, cplx(0, 0));
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      for (int k = 0; k < nz; ++k)
        pad[((std::size_t)i * K.pny + j) * K.pnz + k] =
            rho[((std::size_t)i * ny + j) * nz + k];
  fftn_raw(pad.data(), {K.pnx, K.pny, K.pnz}, -1);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < (long long)pad.size(); ++i) pad[i] *= K.mult[i];
  fftn_raw(pad.data(), {K.pnx, K.pny, K.pnz}, +1);
  const double scal = 1.0 / ((double)K.pnx * K.pny * K.pnz);
  std::vector<double> out((std::size_t)nx * ny * nz);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      for (int k = 0; k < nz; ++k)
        out[((std::size_t)i * ny + j) * nz + k] =
            pad[((std::size_t)i * K.pny + j) * K.pnz + k].real() * scal;
  return out;
}

namespace {
// modal density in fixed p order (deterministic reduction)
std::vector<double> mode_density(const ModeSet& m) {
  std::vector<double> rho((std::size_t)m.g2.nx * m.g2.ny, 0.0);
  for (int p = 0; p < m.P; ++p)
    for (std::size_t k = 0; k < rho.size(); ++k) rho[k] += std::norm(m.phi[p][k]);
  return rho;
}

bool edge_mass_suspect(const std::vector<double>& rho, int nx, int ny) {
  double edge = 0.0, tot = 0.0;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      const double v = rho[(std::size_t)i * ny + j];
      tot += v;
      if (i < 2 || i >= nx - 2 || j < 2 || j >= ny - 2) edge += v;
    }
  return tot > 0.0 && edge > 1e-6 * tot;
}
}  // namespace

std::vector<double> selfconsistent_W(const ModeSet& m, const KernelMultiplier& K2,
                                     bool* warn) {
  std::vector<double> rho = mode_density(m);
  if (warn) *warn = edge_mass_suspect(rho, m.g2.nx, m.g2.ny);
  std::vector<double> W = conv2d(rho, K2, m.g2.nx, m.g2.ny);
  double wmax = 0.0;
  for (double v : W) wmax = std::max(wmax, v);
  for (double v : W)
    if (v < -1e-12 * wmax)
      throw Error("selfconsistent_W: potential negative beyond rounding allowance");
  return W;
}

ModeSet apply_F0(const ModeSet& m, const KernelMultiplier& K2) {
  const std::vector<double> W = selfconsistent_W(m, K2);
  ModeSet out = m;
  for (int p = 0; p < m.P; ++p)
    for (std::size_t k = 0; k < W.size(); ++k) out.phi[p][k] *= W[k];
  return out;
}

Field3D apply_F0(const Field3D& f, const KernelMultiplier& K2) {
  if (f.repr != Repr::GridZ) throw Error("apply_F0: field must be grid-z");
  const int nx = f.g2.nx, ny = f.g2.ny, nz = f.nzp;
  std::vector<double> rho((std::size_t)nx * ny, 0.0);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      double s = 0.0;
      const cplx* col = &f.at(i, j, 0);
      for (int k = 0; k < nz; ++k) s += std::norm(col[k]);
      rho[(std::size_t)i * ny + j] = s * f.zgrid.dz;
    }
  const std::vector<double> W = conv2d(rho, K2, nx, ny);
  Field3D out = f;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      const double w = W[(std::size_t)i * ny + j];
      cplx* col = &out.at(i, j, 0);
      for (int k = 0; k < nz; ++k) col[k] *= w;
    }
  return out;
}

Field3D apply_F1(const Field3D& f, const KernelMultiplier& K3) {
  if (f.repr != Repr::GridZ) throw Error("apply_F1: field must be grid-z");
  const int nx = f.g2.nx, ny = f.g2.ny, nz = f.nzp;
  std::vector<double> rho((std::size_t)nx * ny * nz);
  for (std::size_t k = 0; k < rho.size(); ++k) rho[k] = std::norm(f.v[k]);
  const std::vector<double> V = conv3d(rho, K3, nx, ny, nz);
  Field3D out = f;
#pragma omp parallel for schedule(static)
  for (long long k = 0; k < (long long)out.v.size(); ++k) out.v[k] *= V[k];
  return out;
}

KernelGapResult kernel_gap_estimate(const Field3D& u, const std::vector<double>& eps_list,
                                    const EigenBasis& basis) {
  KernelGapResult r;
  r.eps = eps_list;
  r.u_b2 = bm_norm(u, 2, basis);
  KernelMultiplier K2 = build_kernel2d(u.g2);
  const Field3D F0 = apply_F0(u, K2);
  for (double eps : eps_list) {
    KernelMultiplier K3 = build_kernel3d(u.g2, u.zgrid, eps);
    Field3D d = apply_F1(u, K3);
    for (std::size_t k = 0; k < d.v.size(); ++k) d.v[k] -= F0.v[k];
    const double g = bm_norm(d, 1, basis);
    r.gap.push_back(g);
    r.ngap.push_back(g / (r.u_b2 * r.u_b2 * r.u_b2));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = (int)eps_list.size();
  for (int i = 0; i < n; ++i) {
    const double lx = std::log(eps_list[i]), ly = std::log(r.gap[i]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
  }
  if (n >= 2) r.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  r.monotone = true;  // gap ordering must follow the eps ordering
  for (int i = 0; i + 1 < n; ++i)
    if ((eps_list[i] > eps_list[i + 1]) != (r.gap[i] > r.gap[i + 1])) r.monotone = false;
  return r;
}

}  // namespace cyqw
