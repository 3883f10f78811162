#pragma once

#include <vector>

#include "cyqw/common.hpp"

namespace cyqw {

/// Unitary 2D FFT over the leading (nx,ny) axes of an array laid out
/// (i,j,k) with k (size `howmany`) fastest.  sign = -1 forward, +1 inverse;
/// forward-then-inverse is the identity.
void fft2_batch(cplx* data, int nx, int ny, int howmany, int sign);

/// Unitary 1D FFT along the outermost axis (stride `rest`, batch `rest`).
void fft1_outer_batch(cplx* data, int n, int rest, int sign);

/// Unitary 1D FFT along the innermost contiguous axis, `batch` rows of
/// length n.
void fft1_inner_batch(cplx* data, int n, int batch, int sign);

/// Unnormalized in-place n-dimensional FFT of a contiguous row-major array
/// (used by the convolution engines, which carry their own scaling).
void fftn_raw(cplx* data, const std::vector<int>& dims, int sign);

}  // namespace cyqw
