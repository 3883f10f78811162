#pragma once

#include <vector>

#include "cyqw/field.hpp"
#include "cyqw/norms.hpp"

namespace cyqw {

/// Free-space convolution multiplier for 1/(4 pi sqrt(x^2+y^2)) (2D limit
/// kernel) or 1/(4 pi sqrt(x^2+y^2+eps^2 z^2)) (anisotropic 3D kernel).
/// Built on a 2x zero-padded grid; cells inside the singular tube
/// r <= rule_r are replaced by sub-sampled cell averages over (x,y) offsets
/// (the 2D origin cell uses the closed-form 1/r cell average).
struct KernelMultiplier {
  enum class Tag { K2D, K3D };
  Tag tag = Tag::K2D;
  double eps = 0.0;  // anisotropy (K3D only)
  int pnx = 0, pny = 0, pnz = 1;  // padded dims
  double dx = 0, dy = 0, dz = 0;
  double rule_r = 0.0;            // singular-tube radius
  int sub = 16;                   // sub-samples per axis in the tube
  std::vector<double> mult;       // real Fourier multiplier, includes dV factor
  std::vector<double> table;      // real-space kernel table (kept when requested)
};

KernelMultiplier build_kernel2d(const Grid2D& g2, bool keep_table = false);
KernelMultiplier build_kernel3d(const Grid2D& g2, const Grid1D& g1, double eps,
                                bool keep_table = false);

/// Linear free-space convolutions of a real density with the kernel.
std::vector<double> conv2d(const std::vector<double>& rho, const KernelMultiplier& K,
                           int nx, int ny);
std::vector<double> conv3d(const std::vector<double>& rho, const KernelMultiplier& K,
                           int nx, int ny, int nz);

/// W = kernel2d * sum_p |phi_p|^2.  warn is set when density mass within two
/// cells of the box edge exceeds 1e-6 of the total.
std::vector<double> selfconsistent_W(const ModeSet& m, const KernelMultiplier& K2,
                                     bool* warn = nullptr);

/// F_0(u) = (kernel2d * <|u|^2>) u, the z-independent limit nonlinearity.
ModeSet apply_F0(const ModeSet& m, const KernelMultiplier& K2);
Field3D apply_F0(const Field3D& f, const KernelMultiplier& K2);

/// F_1(u) = (kernel3d_eps * |u|^2) u, the full anisotropic nonlinearity.
Field3D apply_F1(const Field3D& f, const KernelMultiplier& K3);

struct KernelGapResult {
  std::vector<double> eps;
  std::vector<double> gap;    // ||F_1(u) - F_0(u)||_{B^1}
  std::vector<double> ngap;   // gap / ||u||_{B^2}^3
  double slope = 0.0;         // fitted log-log slope
  bool monotone = false;
  double u_b2 = 0.0;
};

KernelGapResult kernel_gap_estimate(const Field3D& u, const std::vector<double>& eps_list,
                                    const EigenBasis& basis);

}  // namespace cyqw
