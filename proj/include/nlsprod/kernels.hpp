// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>

// Data-parallel inner loops shared by the spectral modules. Every kernel has
// a scalar reference implementation and may have SIMD variants; the active
// variant is chosen once per process from CPU capabilities. Variants are
// equivalence-tested against the scalar reference in tests/test_kernels.cpp.
namespace nlsprod::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

/// Instruction set selected at startup (scalar unless AVX2+FMA is available).
Isa active_isa();

/// Test hook. Requests falling back to an unsupported ISA select scalar.
void force_isa(Isa isa);

const char* isa_name(Isa isa);

/// out[i] = a*x[i] + b*y[i], real coefficients. out may alias x or y.
void axpby(double a, const cplx* x, double b, const cplx* y, cplx* out,
           std::size_t n);

/// x[i] *= s
void scale(cplx* x, double s, std::size_t n);

/// x[i] *= w[i], one real weight per complex element
void multiply_real(cplx* x, const double* w, std::size_t n);

/// x[i] *= m[i]
void multiply_complex(cplx* x, const cplx* m, std::size_t n);


/// x[i] /= (1 + tau*w[i]); the diagonal solve of a shifted spectral operator
void solve_shifted(cplx* x, const double* w, double tau, std::size_t n);

/// sum |x[i]|^2
double sum_abs2(const cplx* x, std::size_t n);

/// sum w[i]*|x[i]|^2
double sum_abs2_weighted(const cplx* x, const double* w, std::size_t n);

/// sum x[i]*conj(y[i])
cplx dot(const cplx* x, const cplx* y, std::size_t n);

// Extended-precision variants of the reductions for conservation
// diagnostics. Plain recursive double summation over ~1e5 terms wobbles at
// the 1e-12 level, which would drown the drift such series are meant to
// expose; the long-double accumulator keeps the measurement error near
// n * 2^-64. Scalar on purpose (no SIMD variant).
double sum_abs2_ld(const cplx* x, std::size_t n);
double sum_abs2_weighted_ld(const cplx* x, const double* w, std::size_t n);

namespace detail {

struct Ops {
  void (*axpby)(double, const cplx*, double, const cplx*, cplx*, std::size_t);
  void (*scale)(cplx*, double, std::size_t);
  void (*multiply_real)(cplx*, const double*, std::size_t);
  void (*multiply_complex)(cplx*, const cplx*, std::size_t);
  void (*solve_shifted)(cplx*, const double*, double, std::size_t);
  double (*sum_abs2)(const cplx*, std::size_t);
  double (*sum_abs2_weighted)(const cplx*, const double*, std::size_t);
  cplx (*dot)(const cplx*, const cplx*, std::size_t);
};

const Ops& scalar_ops();
/// nullptr when the build or the CPU lacks AVX2+FMA.
const Ops* avx2_ops();

}  // namespace detail

}  // namespace nlsprod::kernels
