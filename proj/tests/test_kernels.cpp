// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "nlsprod/kernels.hpp"

using namespace nlsprod::kernels;

namespace {

std::vector<cplx> random_vec(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& z : v) z = cplx(g(rng), g(rng));
  return v;
}

std::vector<double> random_weights(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<double> w(n);
  for (auto& x : w) x = u(rng);
  return w;
}

// sizes that exercise both the vector body and the remainder loops
const std::size_t kSizes[] = {0, 1, 2, 3, 5, 8, 31, 64, 67, 256, 1001};

}  // namespace

TEST_CASE("dispatch picks a valid ISA and can be forced") {
  const Isa isa = active_isa();
  CHECK((isa == Isa::scalar || isa == Isa::avx2));
  force_isa(Isa::scalar);
  CHECK(active_isa() == Isa::scalar);
  force_isa(Isa::avx2);  // falls back to scalar when unsupported
  CHECK((active_isa() == Isa::avx2 || active_isa() == Isa::scalar));
}

TEST_CASE("simd variants match the scalar reference") {
  const detail::Ops& ref = detail::scalar_ops();
  const detail::Ops* simd = detail::avx2_ops();
  if (!simd) {
    MESSAGE("AVX2 unavailable; scalar-only build exercised elsewhere");
    return;
  }

  for (std::size_t n : kSizes) {
    CAPTURE(n);
    const auto x = random_vec(n, 11 + n);
    const auto y = random_vec(n, 22 + n);
    const auto w = random_weights(n, 33 + n);

    SUBCASE("axpby") {
      std::vector<cplx> a(n), b(n);
      ref.axpby(0.7, x.data(), -1.3, y.data(), a.data(), n);
      simd->axpby(0.7, x.data(), -1.3, y.data(), b.data(), n);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs(a[i] - b[i]) <= 1e-14 * (1.0 + std::abs(a[i])));
    }
    SUBCASE("scale / multiply_real / multiply_complex / solve_shifted") {
      std::vector<cplx> a = x, b = x;
      ref.scale(a.data(), 0.37, n);
      simd->scale(b.data(), 0.37, n);
      for (std::size_t i = 0; i < n; ++i) CHECK(a[i] == b[i]);

      a = x;
      b = x;
      ref.multiply_real(a.data(), w.data(), n);
      simd->multiply_real(b.data(), w.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(a[i] == b[i]);

      a = x;
      b = x;
      ref.multiply_complex(a.data(), y.data(), n);
      simd->multiply_complex(b.data(), y.data(), n);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs(a[i] - b[i]) <= 1e-14 * (1.0 + std::abs(a[i])));

      a = x;
      b = x;
      ref.solve_shifted(a.data(), w.data(), 0.5, n);
      simd->solve_shifted(b.data(), w.data(), 0.5, n);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs(a[i] - b[i]) <= 1e-14 * (1.0 + std::abs(a[i])));
    }
    SUBCASE("reductions") {
      const double s1 = ref.sum_abs2(x.data(), n);
      const double s2 = simd->sum_abs2(x.data(), n);
      CHECK(std::abs(s1 - s2) <= 1e-13 * (1.0 + std::abs(s1)));

      const double w1 = ref.sum_abs2_weighted(x.data(), w.data(), n);
      const double w2 = simd->sum_abs2_weighted(x.data(), w.data(), n);
      CHECK(std::abs(w1 - w2) <= 1e-13 * (1.0 + std::abs(w1)));

      const cplx d1 = ref.dot(x.data(), y.data(), n);
      const cplx d2 = simd->dot(x.data(), y.data(), n);
      CHECK(std::abs(d1 - d2) <= 1e-13 * (1.0 + std::abs(d1)));
    }
  }
}

TEST_CASE("reduction semantics") {
  const auto x = random_vec(257, 5);
  const double s = sum_abs2(x.data(), x.size());
  const cplx d = dot(x.data(), x.data(), x.size());
  CHECK(d.real() == doctest::Approx(s).epsilon(1e-13));
  CHECK(std::abs(d.imag()) <= 1e-12 * s);

  std::vector<double> ones(x.size(), 1.0);
  CHECK(sum_abs2_weighted(x.data(), ones.data(), x.size()) ==
        doctest::Approx(s).epsilon(1e-13));
}
