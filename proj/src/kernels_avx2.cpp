// SPDX-License-Identifier: Apache-2.0
//
// AVX2+FMA variants of the complex array kernels. Compiled with -mavx2 -mfma;
// callers reach this code only after a runtime cpuid check, so the rest of
// the project stays buildable for generic x86-64.
//
// Layout notes: std::complex<double> arrays are interleaved (re, im) pairs,
// so one __m256d holds two complex numbers. Real per-element weights are
// expanded to (w, w) pairs with a 4x64 permute.
#include "nlsprod/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define NLSPROD_X86_64 1
#include <immintrin.h>
#else
#define NLSPROD_X86_64 0
#endif

namespace nlsprod::kernels::detail {

#if NLSPROD_X86_64 && defined(__AVX2__) && defined(__FMA__)

namespace {

inline const double* as_d(const cplx* p) {
  return reinterpret_cast<const double*>(p);
}
inline double* as_d(cplx* p) { return reinterpret_cast<double*>(p); }

// [w0, w1] -> [w0, w0, w1, w1]
inline __m256d expand_pair(const double* w) {
  __m256d v = _mm256_castpd128_pd256(_mm_loadu_pd(w));
  return _mm256_permute4x64_pd(v, 0x50);
}

// complex multiply of two packed pairs
inline __m256d cmul(__m256d a, __m256d b) {
  __m256d b_re = _mm256_movedup_pd(b);
  __m256d b_im = _mm256_permute_pd(b, 0xF);
  __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_addsub_pd(_mm256_mul_pd(a, b_re), _mm256_mul_pd(a_sw, b_im));
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

void axpby_avx2(double a, const cplx* x, double b, const cplx* y, cplx* out,
                std::size_t n) {
  const double* xd = as_d(x);
  const double* yd = as_d(y);
  double* od = as_d(out);
  const std::size_t m = 2 * n;
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    __m256d vx = _mm256_loadu_pd(xd + i);
    __m256d vy = _mm256_loadu_pd(yd + i);
    _mm256_storeu_pd(od + i, _mm256_fmadd_pd(va, vx, _mm256_mul_pd(vb, vy)));
  }
  for (; i < m; ++i) od[i] = a * xd[i] + b * yd[i];
}

void scale_avx2(cplx* x, double s, std::size_t n) {
  double* xd = as_d(x);
  const std::size_t m = 2 * n;
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4)
    _mm256_storeu_pd(xd + i, _mm256_mul_pd(vs, _mm256_loadu_pd(xd + i)));
  for (; i < m; ++i) xd[i] *= s;
}

void multiply_real_avx2(cplx* x, const double* w, std::size_t n) {
  double* xd = as_d(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vw = expand_pair(w + i);
    __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    _mm256_storeu_pd(xd + 2 * i, _mm256_mul_pd(vx, vw));
  }
  for (; i < n; ++i) x[i] *= w[i];
}

void multiply_complex_avx2(cplx* x, const cplx* m, std::size_t n) {
  double* xd = as_d(x);
  const double* md = as_d(m);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    __m256d vm = _mm256_loadu_pd(md + 2 * i);
    _mm256_storeu_pd(xd + 2 * i, cmul(vx, vm));
  }
  for (; i < n; ++i) x[i] *= m[i];
}

void solve_shifted_avx2(cplx* x, const double* w, double tau, std::size_t n) {
  double* xd = as_d(x);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d vt = _mm256_set1_pd(tau);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d denom = _mm256_fmadd_pd(vt, expand_pair(w + i), one);
    __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    _mm256_storeu_pd(xd + 2 * i, _mm256_div_pd(vx, denom));
  }
  for (; i < n; ++i) x[i] /= (1.0 + tau * w[i]);
}

double sum_abs2_avx2(const cplx* x, std::size_t n) {
  const double* xd = as_d(x);
  const std::size_t m = 2 * n;
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    __m256d vx = _mm256_loadu_pd(xd + i);
    acc = _mm256_fmadd_pd(vx, vx, acc);
  }
  double tail = 0.0;
  for (; i < m; ++i) tail += xd[i] * xd[i];
  return hsum(acc) + tail;
}

double sum_abs2_weighted_avx2(const cplx* x, const double* w, std::size_t n) {
  const double* xd = as_d(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(vx, vx), expand_pair(w + i), acc);
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += w[i] * std::norm(x[i]);
  return hsum(acc) + tail;
}

cplx dot_avx2(const cplx* x, const cplx* y, std::size_t n) {
  const double* xd = as_d(x);
  const double* yd = as_d(y);
  // conj(y): flip the sign of the imaginary lanes
  const __m256d conj_mask =
      _mm256_castsi256_pd(_mm256_set_epi64x(0x8000000000000000LL, 0,
                                            0x8000000000000000LL, 0));
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    __m256d vy = _mm256_xor_pd(_mm256_loadu_pd(yd + 2 * i), conj_mask);
    acc = _mm256_add_pd(acc, cmul(vx, vy));
  }
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  lo = _mm_add_pd(lo, hi);
  cplx out(_mm_cvtsd_f64(lo), _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo)));
  for (; i < n; ++i) {
    out += cplx(x[i].real() * y[i].real() + x[i].imag() * y[i].imag(),
                x[i].imag() * y[i].real() - x[i].real() * y[i].imag());
  }
  return out;
}

constexpr Ops kAvx2Ops = {
    axpby_avx2,         scale_avx2,
    multiply_real_avx2, multiply_complex_avx2,
    solve_shifted_avx2, sum_abs2_avx2,
    sum_abs2_weighted_avx2, dot_avx2,
};

}  // namespace

const Ops* avx2_ops() {
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &kAvx2Ops : nullptr;
}

#else

const Ops* avx2_ops() { return nullptr; }

#endif

}  // namespace nlsprod::kernels::detail
