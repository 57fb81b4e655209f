// SPDX-License-Identifier: Apache-2.0
#include "nlsprod/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>

#include "nlsprod/kernels.hpp"

namespace nlsprod {

namespace {

// The FFTW planner is not thread-safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

Fft2d::Fft2d(std::size_t nx, std::size_t ny) : nx_(nx), ny_(ny) {
  const std::size_t n = nx * ny;
  buf_a_ = reinterpret_cast<cplx*>(fftw_malloc(sizeof(cplx) * n));
  buf_b_ = reinterpret_cast<cplx*>(fftw_malloc(sizeof(cplx) * n));
  std::lock_guard<std::mutex> lock(planner_mutex());
  plan_fwd_ = fftw_plan_dft_2d(static_cast<int>(nx), static_cast<int>(ny),
                               as_fftw(buf_a_), as_fftw(buf_b_), FFTW_FORWARD,
                               FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_2d(static_cast<int>(nx), static_cast<int>(ny),
                               as_fftw(buf_a_), as_fftw(buf_b_), FFTW_BACKWARD,
                               FFTW_ESTIMATE);
}

Fft2d::~Fft2d() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(buf_a_);
  fftw_free(buf_b_);
}

void Fft2d::forward(const cplx* in, cplx* out) {
  const std::size_t n = size();
  std::memcpy(buf_a_, in, sizeof(cplx) * n);
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  std::memcpy(out, buf_b_, sizeof(cplx) * n);
  kernels::scale(out, 1.0 / static_cast<double>(n), n);
}

void Fft2d::backward(const cplx* in, cplx* out) {
  const std::size_t n = size();
  std::memcpy(buf_a_, in, sizeof(cplx) * n);
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  std::memcpy(out, buf_b_, sizeof(cplx) * n);
}

Fft1d::Fft1d(std::size_t n) : n_(n) {
  buf_a_ = reinterpret_cast<cplx*>(fftw_malloc(sizeof(cplx) * n));
  buf_b_ = reinterpret_cast<cplx*>(fftw_malloc(sizeof(cplx) * n));
  std::lock_guard<std::mutex> lock(planner_mutex());
  plan_fwd_ = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(buf_a_),
                               as_fftw(buf_b_), FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(buf_a_),
                               as_fftw(buf_b_), FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft1d::~Fft1d() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(buf_a_);
  fftw_free(buf_b_);
}

void Fft1d::forward(const cplx* in, cplx* out) {
  std::memcpy(buf_a_, in, sizeof(cplx) * n_);
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  std::memcpy(out, buf_b_, sizeof(cplx) * n_);
  kernels::scale(out, 1.0 / static_cast<double>(n_), n_);
}

void Fft1d::backward(const cplx* in, cplx* out) {
  std::memcpy(buf_a_, in, sizeof(cplx) * n_);
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  std::memcpy(out, buf_b_, sizeof(cplx) * n_);
}

Fft2d& fft2d_for(std::size_t nx, std::size_t ny) {
  thread_local std::map<std::pair<std::size_t, std::size_t>,
                        std::unique_ptr<Fft2d>>
      cache;
  auto& slot = cache[{nx, ny}];
  if (!slot) slot = std::make_unique<Fft2d>(nx, ny);
  return *slot;
}

Fft1d& fft1d_for(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<Fft1d>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Fft1d>(n);
  return *slot;
}

}  // namespace nlsprod
