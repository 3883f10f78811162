#pragma once

#include <vector>

#include "cyqw/field.hpp"
#include "cyqw/poisson.hpp"
#include "cyqw/spectrum.hpp"

namespace cyqw {

// Serial reference implementations of the parallel kernels.  They share the
// per-output summation order with the OpenMP versions (threads only split
// disjoint outputs), so results must match bitwise; tests and the benchmark
// target rely on that.

Field3D project_modes_serial(const Field3D& f, const EigenBasis& basis);
Field3D synth_modes_serial(const Field3D& f, const EigenBasis& basis);

/// Direct O(N^4) / O(N^6) convolution sums using the same real-space kernel
/// table (kernel built with keep_table = true).  Oracle for the FFT path.
std::vector<double> conv2d_direct(const std::vector<double>& rho, const KernelMultiplier& K,
                                  int nx, int ny);
std::vector<double> conv3d_direct(const std::vector<double>& rho, const KernelMultiplier& K,
                                  int nx, int ny, int nz);

/// Kinetic half-step phase application of the limit solver, parallel and
/// serial flavors (operates in Fourier space, in place).
void kinetic_phase(ModeSet& mhat, const std::vector<double>& alpha, double dt);
void kinetic_phase_serial(ModeSet& mhat, const std::vector<double>& alpha, double dt);

}  // namespace cyqw
