#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "sofic/kernels.hpp"
#include "support.hpp"

namespace sofic::kernels {
namespace {

std::vector<Complex> random_complex(std::mt19937_64& gen, std::size_t n) {
  std::normal_distribution<double> d;
  std::vector<Complex> v(n);
  for (auto& z : v) z = {d(gen), d(gen)};
  return v;
}

double max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

TEST_CASE("active kernel table") {
  const KernelTable& k = active();
  CHECK_FALSE(k.name.empty());
  if (avx2_kernels() == nullptr) MESSAGE("AVX2 kernels unavailable; equivalence cases check scalar only");
}

TEST_CASE("AVX2 kernels agree with the scalar reference") {
  const KernelTable& ref = scalar_kernels();
  const KernelTable* simd = avx2_kernels();
  if (simd == nullptr) return;
  auto gen = sofic::testing::rng(11);
  // Lengths straddle the vector widths so that every tail path runs.
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 64u, 100u, 257u, 1000u}) {
    std::uniform_int_distribution<std::uint32_t> small(0, 3);
    std::vector<std::uint32_t> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = small(gen);
      b[i] = small(gen);
    }
    CHECK(simd->count_mismatches(a, b) == ref.count_mismatches(a, b));

    std::uniform_int_distribution<std::uint32_t> pick(0, n == 0 ? 0 : static_cast<std::uint32_t>(n - 1));
    std::vector<std::uint32_t> table(n), index(n);
    for (std::size_t i = 0; i < n; ++i) {
      table[i] = static_cast<std::uint32_t>(gen());
      index[i] = pick(gen);
    }
    std::vector<std::uint32_t> out_ref(n), out_simd(n);
    ref.gather(table, index, out_ref);
    simd->gather(table, index, out_simd);
    CHECK(out_ref == out_simd);

    const auto x = random_complex(gen, n);
    const auto y = random_complex(gen, n);
    const double scale = 1.0 + static_cast<double>(n);
    CHECK(std::abs(simd->conj_dot(x, y) - ref.conj_dot(x, y)) <= 1e-12 * scale);
    CHECK(std::abs(simd->squared_distance(x, y) - ref.squared_distance(x, y)) <= 1e-12 * scale);
  }
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 9u, 16u, 33u}) {
    const auto a = random_complex(gen, n * n);
    const auto b = random_complex(gen, n * n);
    std::vector<Complex> c_ref(n * n), c_simd(n * n);
    ref.matmul(a.data(), b.data(), c_ref.data(), n);
    simd->matmul(a.data(), b.data(), c_simd.data(), n);
    CHECK(max_abs_diff(c_ref, c_simd) <= 1e-12 * static_cast<double>(n));
  }
}

TEST_CASE("scalar kernels against direct loops") {
  const KernelTable& ref = scalar_kernels();
  const std::vector<Complex> a{{1, 2}, {3, -1}};
  const std::vector<Complex> b{{0, 1}, {2, 2}};
  // conj(1+2i)(i) + conj(3-i)(2+2i) = (2+i) + (4+8i)
  CHECK(ref.conj_dot(a, b) == Complex(6, 9));
  CHECK(ref.squared_distance(a, b) == doctest::Approx(2.0 + 10.0));
  const std::vector<Complex> m{{1, 0}, {0, 1}, {0, 0}, {1, 0}};
  std::vector<Complex> sq(4);
  ref.matmul(m.data(), m.data(), sq.data(), 2);
  CHECK(sq == std::vector<Complex>{{1, 0}, {0, 2}, {0, 0}, {1, 0}});
}

}  // namespace
}  // namespace sofic::kernels
