#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"

#include "sofic/unitary.hpp"

namespace sofic {

// The conjugation representation U(n) -> U(n^2), M -> u M u*, in the basis
// E_ij of M_n enumerated row-major (E_ij has index i*n + j). As a matrix this
// is u (x) conj(u). Normalized traces satisfy tr~(T(u)) = |tr~(u)|^2.
UnitaryMatrix tensor_square(const UnitaryMatrix& u);

// d -> d * sqrt(2 - d^2 / 2): the distance between tensor squares as a
// function of the distance between the originals. Accepts d in [0, 2]
// (values within 1e-9 above 2 are clamped); throws InvalidArgument otherwise.
double amplified_distance(double d);

// Exact distance between tensor squares, sqrt(2 - 2 |tr~(u* v)|^2). It agrees
// with amplified_distance(hs_distance(u, v)) exactly when tr~(u* v) is real,
// e.g. for permutation or real orthogonal matrices; in general it is smaller
// (a central phase u = c v is sent to distance 0).
double tensor_square_distance(const UnitaryMatrix& u, const UnitaryMatrix& v);

// Distance after `times` tensor squarings, predicted from the trace: the first
// squaring makes the trace real, after which amplified_distance is exact.
double iterated_tensor_square_distance(const UnitaryMatrix& u, const UnitaryMatrix& v, int times);

// [d0, f(d0), ..., f^{k-1}(d0)] for f = amplified_distance. Requires
// 0 < d0 < 2; the endpoints are rejected because 0 is a fixed point and 2
// collapses to 0.
std::vector<double> iterate_amplification(double d0, int k);

// Index of the first orbit term within tolerance of sqrt(2), searching at
// most max_steps terms.
std::optional<int> steps_to_sqrt2(double d0, double tolerance, int max_steps = 200);

// u -> diag(u, I_n). Hilbert-Schmidt distances scale by exactly 1/sqrt(2).
UnitaryMatrix halve_embed(const UnitaryMatrix& u);

struct AmplificationPair {
  double d_in = 0.0;
  double d_predicted = 0.0;
  double d_measured = 0.0;
  // iterated_tensor_square_distance of the pair.
  double d_trace = 0.0;
};

struct AmplificationReport {
  std::size_t input_rank = 0;
  std::size_t output_rank = 0;
  int times = 1;
  std::vector<AmplificationPair> pairs;

  // max |d_predicted - d_measured|
  double max_error() const;
  // max |d_trace - d_measured|
  double max_trace_error() const;
  nlohmann::json to_json() const;
};

// Amplifies every pair of the given matrices `times` times and records the
// predicted and measured distances.
AmplificationReport amplification_report(std::span<const UnitaryMatrix> matrices, int times);

}  // namespace sofic
