#pragma once

// Data-parallel inner loops used by the metric-group code. Each kernel has a
// scalar reference implementation and, on x86-64, an AVX2 variant. The active
// table is chosen once at first use from CPUID; setting SOFIC_SIMD=scalar
// forces the reference path.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace sofic::kernels {

using Complex = std::complex<double>;

struct KernelTable {
  std::string_view name;

  // #{i : a[i] != b[i]}; spans have equal length.
  std::size_t (*count_mismatches)(std::span<const std::uint32_t> a,
                                  std::span<const std::uint32_t> b);

  // out[i] = table[index[i]]; every index is < table.size().
  void (*gather)(std::span<const std::uint32_t> table,
                 std::span<const std::uint32_t> index,
                 std::span<std::uint32_t> out);

  // sum_i conj(a[i]) * b[i]
  Complex (*conj_dot)(std::span<const Complex> a, std::span<const Complex> b);

  // sum_i |a[i] - b[i]|^2
  double (*squared_distance)(std::span<const Complex> a, std::span<const Complex> b);

  // c = a * b for row-major n x n matrices; c must not alias a or b.
  void (*matmul)(const Complex* a, const Complex* b, Complex* c, std::size_t n);
};

const KernelTable& scalar_kernels();

// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

const KernelTable& active();

}  // namespace sofic::kernels
