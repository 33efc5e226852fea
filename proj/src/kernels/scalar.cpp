#include "sofic/kernels.hpp"

namespace sofic::kernels {
namespace {

std::size_t count_mismatches_scalar(std::span<const std::uint32_t> a,
                                    std::span<const std::uint32_t> b) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i) count += a[i] != b[i];
  return count;
}

void gather_scalar(std::span<const std::uint32_t> table,
                   std::span<const std::uint32_t> index,
                   std::span<std::uint32_t> out) {
  for (std::size_t i = 0; i < index.size(); ++i) out[i] = table[index[i]];
}

Complex conj_dot_scalar(std::span<const Complex> a, std::span<const Complex> b) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

double squared_distance_scalar(std::span<const Complex> a, std::span<const Complex> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double dr = a[i].real() - b[i].real();
    const double di = a[i].imag() - b[i].imag();
    sum += dr * dr + di * di;
  }
  return sum;
}

void matmul_scalar(const Complex* a, const Complex* b, Complex* c, std::size_t n) {
  for (std::size_t i = 0; i < n * n; ++i) c[i] = Complex{};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double ar = a[i * n + k].real();
      const double ai = a[i * n + k].imag();
      const Complex* brow = b + k * n;
      Complex* crow = c + i * n;
      for (std::size_t j = 0; j < n; ++j) {
        crow[j] = Complex{crow[j].real() + (ar * brow[j].real() - ai * brow[j].imag()),
                          crow[j].imag() + (ar * brow[j].imag() + ai * brow[j].real())};
      }
    }
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar",          count_mismatches_scalar, gather_scalar,
                                 conj_dot_scalar,   squared_distance_scalar, matmul_scalar};
  return table;
}

}  // namespace sofic::kernels
