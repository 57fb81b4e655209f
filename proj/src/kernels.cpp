// SPDX-License-Identifier: Apache-2.0
#include "nlsprod/kernels.hpp"

#include <atomic>

namespace nlsprod::kernels {

namespace {

void axpby_scalar(double a, const cplx* x, double b, const cplx* y, cplx* out,
                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void scale_scalar(cplx* x, double s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= s;
}

void multiply_real_scalar(cplx* x, const double* w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= w[i];
}

void multiply_complex_scalar(cplx* x, const cplx* m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= m[i];
}

void solve_shifted_scalar(cplx* x, const double* w, double tau, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] /= (1.0 + tau * w[i]);
}

double sum_abs2_scalar(const cplx* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(x[i]);
  return acc;
}

double sum_abs2_weighted_scalar(const cplx* x, const double* w, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * std::norm(x[i]);
  return acc;
}

cplx dot_scalar(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].imag() * y[i].real() - x[i].real() * y[i].imag();
  }
  return {re, im};
}

constexpr detail::Ops kScalarOps = {
    axpby_scalar,         scale_scalar,
    multiply_real_scalar, multiply_complex_scalar,
    solve_shifted_scalar, sum_abs2_scalar,
    sum_abs2_weighted_scalar, dot_scalar,
};

std::atomic<const detail::Ops*> g_active{nullptr};
std::atomic<Isa> g_active_isa{Isa::scalar};

const detail::Ops* select_default() {
  if (const detail::Ops* v = detail::avx2_ops()) {
    g_active_isa.store(Isa::avx2, std::memory_order_relaxed);
    return v;
  }
  g_active_isa.store(Isa::scalar, std::memory_order_relaxed);
  return &kScalarOps;
}

const detail::Ops& active() {
  const detail::Ops* ops = g_active.load(std::memory_order_acquire);
  if (!ops) {
    ops = select_default();
    g_active.store(ops, std::memory_order_release);
  }
  return *ops;
}

}  // namespace

namespace detail {
const Ops& scalar_ops() { return kScalarOps; }
}  // namespace detail

Isa active_isa() {
  active();
  return g_active_isa.load(std::memory_order_relaxed);
}

void force_isa(Isa isa) {
  if (isa == Isa::avx2) {
    if (const detail::Ops* v = detail::avx2_ops()) {
      g_active.store(v, std::memory_order_release);
      g_active_isa.store(Isa::avx2, std::memory_order_relaxed);
      return;
    }
  }
  g_active.store(&kScalarOps, std::memory_order_release);
  g_active_isa.store(Isa::scalar, std::memory_order_relaxed);
}

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::avx2:
      return "avx2";
    default:
      return "scalar";
  }
}

void axpby(double a, const cplx* x, double b, const cplx* y, cplx* out,
           std::size_t n) {
  active().axpby(a, x, b, y, out, n);
}

void scale(cplx* x, double s, std::size_t n) { active().scale(x, s, n); }

void multiply_real(cplx* x, const double* w, std::size_t n) {
  active().multiply_real(x, w, n);
}

void multiply_complex(cplx* x, const cplx* m, std::size_t n) {
  active().multiply_complex(x, m, n);
}

void solve_shifted(cplx* x, const double* w, double tau, std::size_t n) {
  active().solve_shifted(x, w, tau, n);
}

double sum_abs2(const cplx* x, std::size_t n) { return active().sum_abs2(x, n); }

double sum_abs2_weighted(const cplx* x, const double* w, std::size_t n) {
  return active().sum_abs2_weighted(x, w, n);
}

cplx dot(const cplx* x, const cplx* y, std::size_t n) {
  return active().dot(x, y, n);
}

double sum_abs2_ld(const cplx* x, std::size_t n) {
  long double acc = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const long double re = x[i].real();
    const long double im = x[i].imag();
    acc += re * re + im * im;
  }
  return static_cast<double>(acc);
}

double sum_abs2_weighted_ld(const cplx* x, const double* w, std::size_t n) {
  long double acc = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const long double re = x[i].real();
    const long double im = x[i].imag();
    acc += static_cast<long double>(w[i]) * (re * re + im * im);
  }
  return static_cast<double>(acc);
}

}  // namespace nlsprod::kernels
