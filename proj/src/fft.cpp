#include "cyqw/fft.hpp"

#include <fftw3.h>

#include <cmath>

namespace cyqw {

namespace {
fftw_complex* fc(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

void scale(cplx* data, std::size_t n, double s) {
  for (std::size_t i = 0; i < n; ++i) data[i] *= s;
}
}  // namespace

void fft2_batch(cplx* data, int nx, int ny, int howmany, int sign) {
  int n[2] = {nx, ny};
  fftw_plan plan = fftw_plan_many_dft(2, n, howmany, fc(data), nullptr, howmany, 1,
                                      fc(data), nullptr, howmany, 1,
                                      sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE);
  if (!plan) throw Error("fft2_batch: planner failed");
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  scale(data, static_cast<std::size_t>(nx) * ny * howmany,
        1.0 / std::sqrt(static_cast<double>(nx) * ny));
}

void fft1_outer_batch(cplx* data, int n, int rest, int sign) {
  fftw_plan plan = fftw_plan_many_dft(1, &n, rest, fc(data), nullptr, rest, 1,
                                      fc(data), nullptr, rest, 1,
                                      sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE);
  if (!plan) throw Error("fft1_outer_batch: planner failed");
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  scale(data, static_cast<std::size_t>(n) * rest, 1.0 / std::sqrt(double(n)));
}

void fft1_inner_batch(cplx* data, int n, int batch, int sign) {
  fftw_plan plan = fftw_plan_many_dft(1, &n, batch, fc(data), nullptr, 1, n,
                                      fc(data), nullptr, 1, n,
                                      sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE);
  if (!plan) throw Error("fft1_inner_batch: planner failed");
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  scale(data, static_cast<std::size_t>(n) * batch, 1.0 / std::sqrt(double(n)));
}

void fftn_raw(cplx* data, const std::vector<int>& dims, int sign) {
  fftw_plan plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(),
                                 fc(data), fc(data),
                                 sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                 FFTW_ESTIMATE);
  if (!plan) throw Error("fftn_raw: planner failed");
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

}  // namespace cyqw
