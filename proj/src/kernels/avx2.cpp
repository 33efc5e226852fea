// Compiled with -mavx2 only; never call these unless CPUID reports AVX2.

#include "sofic/kernels.hpp"

#include <immintrin.h>

#include <bit>

namespace sofic::kernels {
namespace {

std::size_t count_mismatches_avx2(std::span<const std::uint32_t> a,
                                  std::span<const std::uint32_t> b) {
  const std::size_t n = a.size();
  std::size_t i = 0;
  std::size_t equal = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
    const int mask = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(va, vb)));
    equal += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(mask)));
  }
  std::size_t mismatches = i - equal;
  for (; i < n; ++i) mismatches += a[i] != b[i];
  return mismatches;
}

void gather_avx2(std::span<const std::uint32_t> table,
                 std::span<const std::uint32_t> index,
                 std::span<std::uint32_t> out) {
  const std::size_t n = index.size();
  const int* base = reinterpret_cast<const int*>(table.data());
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i idx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(index.data() + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i),
                        _mm256_i32gather_epi32(base, idx, 4));
  }
  for (; i < n; ++i) out[i] = table[index[i]];
}

double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Two complex numbers per register, interleaved (re0, im0, re1, im1).
Complex conj_dot_avx2(std::span<const Complex> a, std::span<const Complex> b) {
  const std::size_t n = a.size();
  const double* pa = reinterpret_cast<const double*>(a.data());
  const double* pb = reinterpret_cast<const double*>(b.data());
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_cross = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    acc_re = _mm256_add_pd(acc_re, _mm256_mul_pd(va, vb));
    // (br, bi) -> (bi, br): lanes become (ar*bi, ai*br)
    acc_cross = _mm256_add_pd(acc_cross, _mm256_mul_pd(va, _mm256_permute_pd(vb, 0b0101)));
  }
  double re = horizontal_sum(acc_re);
  alignas(32) double cross[4];
  _mm256_store_pd(cross, acc_cross);
  double im = (cross[0] - cross[1]) + (cross[2] - cross[3]);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

double squared_distance_avx2(std::span<const Complex> a, std::span<const Complex> b) {
  const std::size_t n = a.size();
  const double* pa = reinterpret_cast<const double*>(a.data());
  const double* pb = reinterpret_cast<const double*>(b.data());
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double sum = horizontal_sum(acc);
  for (; i < n; ++i) {
    const double dr = a[i].real() - b[i].real();
    const double di = a[i].imag() - b[i].imag();
    sum += dr * dr + di * di;
  }
  return sum;
}

void matmul_avx2(const Complex* a, const Complex* b, Complex* c, std::size_t n) {
  const double* pb = reinterpret_cast<const double*>(b);
  double* pc = reinterpret_cast<double*>(c);
  for (std::size_t i = 0; i < n * n; ++i) c[i] = Complex{};
  for (std::size_t i = 0; i < n; ++i) {
    double* crow = pc + 2 * i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const double ar = a[i * n + k].real();
      const double ai = a[i * n + k].imag();
      const __m256d vr = _mm256_set1_pd(ar);
      const __m256d vi = _mm256_set1_pd(ai);
      const double* brow = pb + 2 * k * n;
      std::size_t j = 0;
      for (; j + 2 <= n; j += 2) {
        const __m256d vb = _mm256_loadu_pd(brow + 2 * j);
        const __m256d swapped = _mm256_permute_pd(vb, 0b0101);
        // even lanes: ar*br - ai*bi, odd lanes: ar*bi + ai*br
        const __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(vr, vb), _mm256_mul_pd(vi, swapped));
        _mm256_storeu_pd(crow + 2 * j, _mm256_add_pd(_mm256_loadu_pd(crow + 2 * j), prod));
      }
      for (; j < n; ++j) {
        const double br = brow[2 * j];
        const double bi = brow[2 * j + 1];
        crow[2 * j] += ar * br - ai * bi;
        crow[2 * j + 1] += ar * bi + ai * br;
      }
    }
  }
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{"avx2",        count_mismatches_avx2, gather_avx2,
                                 conj_dot_avx2, squared_distance_avx2, matmul_avx2};
  return table;
}

}  // namespace sofic::kernels
