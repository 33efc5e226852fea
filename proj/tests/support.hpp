#pragma once

#include <cstdint>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "sofic/permutation.hpp"
#include "sofic/unitary.hpp"
#include "sofic/word.hpp"

namespace sofic::testing {

// Fixed seeds keep every property run reproducible.
inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(0x5eed0f1cULL ^ (salt * 0x9e3779b97f4a7c15ULL)); }

inline Word random_word(std::mt19937_64& gen, int rank, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> gen_idx(1, rank);
  std::bernoulli_distribution neg(0.5);
  Word w(len(gen));
  for (auto& l : w) l = neg(gen) ? -gen_idx(gen) : gen_idx(gen);
  return w;
}

inline Permutation random_permutation(std::mt19937_64& gen, std::size_t n) {
  std::vector<std::uint32_t> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = static_cast<std::uint32_t>(i);
  std::shuffle(images.begin(), images.end(), gen);
  return Permutation(std::move(images));
}

// Word reduction by repeated scanning, independent of the stack reducer.
inline Word naive_reduce(Word w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] == -w[i + 1]) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return w;
}

// All permutations of {0, ..., n-1} in lexicographic order.
inline std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<std::uint32_t> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = static_cast<std::uint32_t>(i);
  std::vector<Permutation> out;
  do {
    out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

}  // namespace sofic::testing

namespace sofic::testing {

// Real Gaussian matrix orthonormalized column by column (two passes).
inline UnitaryMatrix random_orthogonal(std::size_t n, std::mt19937_64& gen) {
  std::normal_distribution<double> d;
  std::vector<std::vector<double>> cols(n, std::vector<double>(n));
  for (auto& c : cols)
    for (auto& x : c) x = d(gen);
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        double dot = 0;
        for (std::size_t i = 0; i < n; ++i) dot += cols[k][i] * cols[j][i];
        for (std::size_t i = 0; i < n; ++i) cols[j][i] -= dot * cols[k][i];
      }
      double norm = 0;
      for (double x : cols[j]) norm += x * x;
      norm = std::sqrt(norm);
      for (double& x : cols[j]) x /= norm;
    }
  }
  std::vector<Complex> entries(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) entries[i * n + j] = cols[j][i];
  return UnitaryMatrix::from_entries(n, std::move(entries));
}

}  // namespace sofic::testing
