// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>

namespace nlsprod {

using cplx = std::complex<double>;

// Thin FFTW wrapper for complex-to-complex transforms.
//
// Convention (fixed here, relied on everywhere else):
//   forward:  c[m] = (1/N) * sum_j u[j] e^{-i 2*pi*m.j/N}   (per axis)
//   backward: u[j] = sum_m c[m] e^{+i 2*pi*m.j/N}
// so backward(forward(u)) == u and Parseval reads
//   sum_j |u[j]|^2 = N * sum_m |c[m]|^2.
//
// Plans use FFTW_ESTIMATE so planning is deterministic; data moves through
// internal aligned buffers, which keeps execution independent of caller
// alignment. Instances are not thread-safe; use one per thread.
class Fft2d {
 public:
  Fft2d(std::size_t nx, std::size_t ny);
  ~Fft2d();
  Fft2d(const Fft2d&) = delete;
  Fft2d& operator=(const Fft2d&) = delete;

  void forward(const cplx* in, cplx* out);
  void backward(const cplx* in, cplx* out);

  std::size_t size() const { return nx_ * ny_; }

 private:
  std::size_t nx_, ny_;
  void* plan_fwd_;
  void* plan_bwd_;
  cplx* buf_a_;
  cplx* buf_b_;
};

/// 1D variant, same conventions.
class Fft1d {
 public:
  explicit Fft1d(std::size_t n);
  ~Fft1d();
  Fft1d(const Fft1d&) = delete;
  Fft1d& operator=(const Fft1d&) = delete;

  void forward(const cplx* in, cplx* out);
  void backward(const cplx* in, cplx* out);

 private:
  std::size_t n_;
  void* plan_fwd_;
  void* plan_bwd_;
  cplx* buf_a_;
  cplx* buf_b_;
};

/// Per-thread plan caches keyed by size.
Fft2d& fft2d_for(std::size_t nx, std::size_t ny);
Fft1d& fft1d_for(std::size_t n);

}  // namespace nlsprod
