#pragma once

#include <complex>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "json.hpp"

#include "sofic/permutation.hpp"

namespace sofic {

using Complex = std::complex<double>;

inline constexpr double kDefaultUnitarityTolerance = 1e-9;

// An n x n unitary matrix, row-major. Construction from raw entries rejects
// matrices with max|u*u - I| above the tolerance; products of unitaries are
// trusted.
class UnitaryMatrix {
 public:
  static UnitaryMatrix from_entries(std::size_t n, std::vector<Complex> entries,
                                    double tolerance = kDefaultUnitarityTolerance);
  static UnitaryMatrix identity(std::size_t n);
  static UnitaryMatrix diagonal(std::span<const Complex> diag, double tolerance = kDefaultUnitarityTolerance);

  std::size_t rank() const { return n_; }
  double tolerance() const { return tolerance_; }
  std::span<const Complex> entries() const { return entries_; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  UnitaryMatrix adjoint() const;
  UnitaryMatrix scaled(Complex phase) const;
  // max |(u*u - I)_ij|
  double unitarity_error() const;

  friend UnitaryMatrix operator*(const UnitaryMatrix& u, const UnitaryMatrix& v);

  // Row-major array of [re, im] pairs.
  nlohmann::json to_json() const;
  static UnitaryMatrix from_json(const nlohmann::json& doc, double tolerance = kDefaultUnitarityTolerance);

  // Skips the unitarity check; for results of exact constructions.
  static UnitaryMatrix trusted(std::size_t n, std::vector<Complex> entries, double tolerance = kDefaultUnitarityTolerance);

 private:
  UnitaryMatrix(std::size_t n, std::vector<Complex> entries, double tolerance)
      : n_(n), tolerance_(tolerance), entries_(std::move(entries)) {}

  std::size_t n_ = 0;
  double tolerance_ = kDefaultUnitarityTolerance;
  std::vector<Complex> entries_;
};

// (1/n) tr u
Complex normalized_trace(const UnitaryMatrix& u);

// sqrt((1/n) sum |u_ij - v_ij|^2). Throws InvalidArgument on rank mismatch.
double hs_distance(const UnitaryMatrix& u, const UnitaryMatrix& v);

// sqrt(2 - tr~(u*v) - tr~(v*u)), clamped at 0. Loses accuracy as u -> v.
double hs_distance_trace(const UnitaryMatrix& u, const UnitaryMatrix& v);

// The same formula with the alternative normalization tr~ = n^{-1/2} tr;
// NaN when the radicand is negative. Diagnostic only.
double hs_distance_trace_sqrt_normalized(const UnitaryMatrix& u, const UnitaryMatrix& v);

// Matrix of e_i -> e_{s(i)}: entry (s(j), j) is 1. Multiplicative for the
// function-composition product on permutations.
UnitaryMatrix perm_matrix(const Permutation& s);

// Haar-like random unitary: complex Gaussian matrix orthonormalized column by column.
UnitaryMatrix random_unitary(std::size_t n, std::mt19937_64& rng);

}  // namespace sofic
