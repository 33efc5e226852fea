#include <cmath>

#include "doctest.h"
#include "sofic/errors.hpp"
#include "sofic/permutation.hpp"
#include "sofic/unitary.hpp"
#include "support.hpp"

namespace sofic {
namespace {

using testing::all_permutations;
using testing::random_permutation;

// sqrt((1/n) trace((u - v)^* (u - v))) evaluated by explicit matrix algebra.
double hs_direct(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  const std::size_t n = u.rank();
  double tr = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0;
      for (std::size_t k = 0; k < n; ++k) s += std::conj(u(k, i) - v(k, i)) * (u(k, j) - v(k, j));
      if (i == j) tr += s.real();
    }
  }
  return std::sqrt(tr / static_cast<double>(n));
}

TEST_CASE("hamming distance") {
  CHECK(hamming(Permutation::identity(5), Permutation::identity(5)) == Rational(0));
  CHECK(hamming(Permutation({1, 0, 2, 3}), Permutation::identity(4)) == Rational(1, 2));
  CHECK(hamming(Permutation::cyclic_shift(7, 1), Permutation::identity(7)) == Rational(1));
  CHECK_THROWS_AS(hamming(Permutation::identity(3), Permutation::identity(4)), InvalidArgument);
  CHECK_THROWS_AS(Permutation({0, 0, 1}), MalformedInput);
  CHECK_THROWS_AS(Permutation({0, 3, 1}), MalformedInput);
}

TEST_CASE("hamming is bi-invariant and a metric") {
  auto gen = testing::rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + trial % 40;
    const auto s = random_permutation(gen, n);
    const auto t = random_permutation(gen, n);
    const auto r = random_permutation(gen, n);
    const Rational d = hamming(s, t);
    CHECK(hamming(r * s, r * t) == d);
    CHECK(hamming(s * r, t * r) == d);
    CHECK(hamming(t, s) == d);
    CHECK(hamming(s, r) <= hamming(s, t) + hamming(t, r));
    CHECK((d == Rational(0)) == (s == t));
  }
}

TEST_CASE("permutation algebra") {
  auto gen = testing::rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = random_permutation(gen, 13);
    const auto t = random_permutation(gen, 13);
    const auto st = s * t;
    for (std::size_t i = 0; i < 13; ++i) CHECK(st(i) == s(t(i)));
    CHECK((s * s.inverse()).is_identity());
    CHECK(Permutation::from_json(s.to_json()) == s);
  }
  CHECK(Permutation::cyclic_shift(5, -1) == Permutation({4, 0, 1, 2, 3}));
}

TEST_CASE("hs distance examples") {
  const auto i2 = UnitaryMatrix::identity(2);
  const std::vector<Complex> minus{-1, -1};
  const std::vector<Complex> flip{1, -1};
  CHECK(hs_distance(i2, i2) == 0.0);
  CHECK(hs_distance(i2, UnitaryMatrix::diagonal(minus)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(hs_distance(i2, UnitaryMatrix::diagonal(flip)) - std::sqrt(2.0)) < 1e-12);
  CHECK_THROWS_AS(hs_distance(i2, UnitaryMatrix::identity(3)), InvalidArgument);
}

TEST_CASE("unitary construction rejects non-unitary input") {
  CHECK_THROWS_AS(UnitaryMatrix::from_entries(2, {1, 0, 0, 2}), MalformedInput);
  CHECK_THROWS_AS(UnitaryMatrix::from_entries(2, {1, 0, 0}), MalformedInput);
  CHECK_THROWS_AS(UnitaryMatrix::from_entries(1, {Complex(std::nan(""), 0)}), MalformedInput);
  CHECK_NOTHROW(UnitaryMatrix::from_entries(2, {0, 1, 1, 0}));
  auto gen = testing::rng(23);
  const auto u = random_unitary(4, gen);
  const auto back = UnitaryMatrix::from_json(u.to_json());
  CHECK(hs_distance(u, back) == 0.0);
}

TEST_CASE("normalized trace") {
  CHECK(normalized_trace(UnitaryMatrix::identity(5)) == Complex(1, 0));
  CHECK(std::abs(normalized_trace(perm_matrix(Permutation::cyclic_shift(6, 1)))) == 0.0);
  const std::vector<Complex> flip{1, -1};
  CHECK(std::abs(normalized_trace(UnitaryMatrix::diagonal(flip))) == 0.0);
  auto gen = testing::rng(24);
  for (int trial = 0; trial < 100; ++trial) CHECK(std::abs(normalized_trace(random_unitary(3, gen))) <= 1 + 1e-12);
}

TEST_CASE("hs distance is bi-invariant, symmetric and matches the direct definition") {
  auto gen = testing::rng(25);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const auto u = random_unitary(n, gen);
    const auto v = random_unitary(n, gen);
    const auto w = random_unitary(n, gen);
    CHECK(u.unitarity_error() <= 1e-12);
    const double d = hs_distance(u, v);
    CHECK(std::abs(hs_distance(w * u, w * v) - d) <= 1e-8);
    CHECK(std::abs(hs_distance(u * w, v * w) - d) <= 1e-8);
    CHECK(std::abs(hs_distance(v, u) - d) <= 1e-15);
    CHECK(hs_distance(u, w) <= d + hs_distance(v, w) + 1e-8);
    CHECK(std::abs(hs_direct(u, v) - d) <= 1e-9);
    CHECK(std::abs(hs_distance_trace(u, v) - d) <= 1e-9);
    CHECK(d <= 2 + 1e-12);
  }
}

TEST_CASE("perm_matrix embeds S_n and relates the metrics") {
  CHECK(hs_distance(perm_matrix(Permutation::identity(4)), UnitaryMatrix::identity(4)) == 0.0);
  const Permutation swap({1, 0});
  CHECK(hamming(swap, Permutation::identity(2)) == Rational(1));
  const double hs = hs_distance(perm_matrix(swap), UnitaryMatrix::identity(2));
  CHECK(std::abs(hs - std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(0.5 * hs * hs - 1.0) < 1e-12);

  auto gen = testing::rng(26);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = random_permutation(gen, 9);
    const auto t = random_permutation(gen, 9);
    CHECK(hs_distance(perm_matrix(s * t), perm_matrix(s) * perm_matrix(t)) <= 1e-12);
    const double d = hs_distance(perm_matrix(s), perm_matrix(t));
    CHECK(std::abs(to_double(hamming(s, t)) - 0.5 * d * d) <= 1e-9);
  }
  for (std::size_t n : {3u, 4u}) {
    const auto all = all_permutations(n);
    for (const auto& s : all) {
      for (const auto& t : all) {
        const double d = hs_distance(perm_matrix(s), perm_matrix(t));
        CHECK(std::abs(to_double(hamming(s, t)) - 0.5 * d * d) <= 1e-9);
      }
    }
  }
}

TEST_CASE("S_infinity demonstration") {
  const auto demo3 = sinfty_demo(3);
  CHECK(demo3.dx == Rational(3, 16));
  CHECK(demo3.dconj == Rational(9, 16));
  CHECK(to_double(demo3.dx) == 0.1875);
  CHECK(to_double(demo3.dconj) == 0.5625);
  const auto demo10 = sinfty_demo(10);
  CHECK(demo10.dx == Rational(3, 2048));
  CHECK(to_double(demo10.dconj) == doctest::Approx(0.50049).epsilon(1e-5));
  for (int k = 2; k <= 60; ++k) {
    const auto d = sinfty_demo(k);
    CHECK(d.dconj >= Rational(1, 2));
    CHECK(d.dconj == Rational(1, 2) + d.dx / 3);
  }
  CHECK_THROWS_AS(sinfty_demo(1), InvalidArgument);
}

}  // namespace
}  // namespace sofic
