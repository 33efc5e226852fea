#include "sofic/unitary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sofic/errors.hpp"
#include "sofic/kernels.hpp"

namespace sofic {
namespace {

void require_same_rank(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  if (u.rank() != v.rank()) {
    throw InvalidArgument("rank mismatch: " + std::to_string(u.rank()) + " vs " + std::to_string(v.rank()));
  }
}

}  // namespace

UnitaryMatrix UnitaryMatrix::from_entries(std::size_t n, std::vector<Complex> entries, double tolerance) {
  if (n == 0) throw MalformedInput("matrix rank must be positive");
  if (entries.size() != n * n) throw MalformedInput("expected " + std::to_string(n * n) + " matrix entries");
  for (const auto& z : entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw MalformedInput("non-finite matrix entry");
  }
  UnitaryMatrix u(n, std::move(entries), tolerance);
  const double err = u.unitarity_error();
  if (!(err <= tolerance)) {
    throw MalformedInput("matrix is not unitary: max|u*u - I| = " + std::to_string(err));
  }
  return u;
}

UnitaryMatrix UnitaryMatrix::trusted(std::size_t n, std::vector<Complex> entries, double tolerance) {
  return UnitaryMatrix(n, std::move(entries), tolerance);
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t n) {
  if (n == 0) throw InvalidArgument("matrix rank must be positive");
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return UnitaryMatrix(n, std::move(e), kDefaultUnitarityTolerance);
}

UnitaryMatrix UnitaryMatrix::diagonal(std::span<const Complex> diag, double tolerance) {
  const std::size_t n = diag.size();
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = diag[i];
  return from_entries(n, std::move(e), tolerance);
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
  std::vector<Complex> e(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) e[j * n_ + i] = std::conj(entries_[i * n_ + j]);
  }
  return UnitaryMatrix(n_, std::move(e), tolerance_);
}

UnitaryMatrix UnitaryMatrix::scaled(Complex phase) const {
  std::vector<Complex> e = entries_;
  for (auto& z : e) z *= phase;
  return from_entries(n_, std::move(e), tolerance_);
}

double UnitaryMatrix::unitarity_error() const {
  // (u*u)_ij = <column i, column j>
  std::vector<Complex> cols(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) cols[j * n_ + i] = entries_[i * n_ + j];
  }
  const auto& k = kernels::active();
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    std::span<const Complex> ci(cols.data() + i * n_, n_);
    for (std::size_t j = i; j < n_; ++j) {
      std::span<const Complex> cj(cols.data() + j * n_, n_);
      Complex g = k.conj_dot(ci, cj);
      if (i == j) g -= 1.0;
      worst = std::max(worst, std::abs(g));
    }
  }
  return worst;
}

UnitaryMatrix operator*(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  require_same_rank(u, v);
  std::vector<Complex> out(u.n_ * u.n_);
  kernels::active().matmul(u.entries_.data(), v.entries_.data(), out.data(), u.n_);
  return UnitaryMatrix(u.n_, std::move(out), std::max(u.tolerance_, v.tolerance_));
}

nlohmann::json UnitaryMatrix::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& z : entries_) out.push_back({z.real(), z.imag()});
  return out;
}

UnitaryMatrix UnitaryMatrix::from_json(const nlohmann::json& doc, double tolerance) {
  if (!doc.is_array()) throw MalformedInput("matrix must be an array of [re, im] pairs");
  const auto count = doc.size();
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(count))));
  if (n * n != count || n == 0) throw MalformedInput("matrix entry count is not a positive square");
  std::vector<Complex> entries;
  entries.reserve(count);
  for (const auto& pair : doc) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw MalformedInput("matrix entries must be [re, im] number pairs");
    }
    entries.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return from_entries(n, std::move(entries), tolerance);
}

Complex normalized_trace(const UnitaryMatrix& u) {
  Complex t{};
  for (std::size_t i = 0; i < u.rank(); ++i) t += u(i, i);
  return t / static_cast<double>(u.rank());
}

double hs_distance(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  require_same_rank(u, v);
  const double sq = kernels::active().squared_distance(u.entries(), v.entries());
  return std::sqrt(sq / static_cast<double>(u.rank()));
}

double hs_distance_trace(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  require_same_rank(u, v);
  // tr(u*v) = sum_ij conj(u_ij) v_ij and tr(v*u) is its conjugate.
  const Complex t = kernels::active().conj_dot(u.entries(), v.entries()) / static_cast<double>(u.rank());
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * t.real()));
}

double hs_distance_trace_sqrt_normalized(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  require_same_rank(u, v);
  const Complex t = kernels::active().conj_dot(u.entries(), v.entries()) / std::sqrt(static_cast<double>(u.rank()));
  const double radicand = 2.0 - 2.0 * t.real();
  return radicand < 0 ? std::numeric_limits<double>::quiet_NaN() : std::sqrt(radicand);
}

UnitaryMatrix perm_matrix(const Permutation& s) {
  const std::size_t n = s.degree();
  std::vector<Complex> e(n * n);
  for (std::size_t j = 0; j < n; ++j) e[std::size_t{s(j)} * n + j] = 1.0;
  return UnitaryMatrix::trusted(n, std::move(e));
}

UnitaryMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
  if (n == 0) throw InvalidArgument("matrix rank must be positive");
  std::normal_distribution<double> gauss(0.0, 1.0);
  // Columns stored contiguously, transposed into row-major at the end.
  std::vector<Complex> cols(n * n);
  for (auto& z : cols) z = Complex(gauss(rng), gauss(rng));
  for (std::size_t c = 0; c < n; ++c) {
    Complex* col = cols.data() + c * n;
    // Two passes of modified Gram-Schmidt for orthogonality to full precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t prev = 0; prev < c; ++prev) {
        const Complex* q = cols.data() + prev * n;
        Complex proj{};
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(q[i]) * col[i];
        for (std::size_t i = 0; i < n; ++i) col[i] -= proj * q[i];
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += std::norm(col[i]);
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) col[i] /= norm;
  }
  std::vector<Complex> rows(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i * n + j] = cols[j * n + i];
  }
  return UnitaryMatrix::from_entries(n, std::move(rows));
}

}  // namespace sofic
