#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"

#include "sofic/rational.hpp"

namespace sofic {

// A bijection of {0, ..., n-1}. Products compose as functions:
// (s * t)(i) = s(t(i)).
class Permutation {
 public:
  // Throws MalformedInput unless images is a bijection.
  explicit Permutation(std::vector<std::uint32_t> images);

  static Permutation identity(std::size_t n);
  // i -> i + shift (mod n)
  static Permutation cyclic_shift(std::size_t n, std::int64_t shift);

  std::size_t degree() const { return images_.size(); }
  std::uint32_t operator()(std::size_t i) const { return images_[i]; }
  std::span<const std::uint32_t> images() const { return images_; }

  Permutation inverse() const;
  bool is_identity() const;
  std::size_t fixed_points() const;

  friend Permutation operator*(const Permutation& s, const Permutation& t);
  bool operator==(const Permutation&) const = default;

  nlohmann::json to_json() const { return images_; }
  static Permutation from_json(const nlohmann::json& doc);

 private:
  struct Trusted {};
  Permutation(Trusted, std::vector<std::uint32_t> images) : images_(std::move(images)) {}

  std::vector<std::uint32_t> images_;
};

// #{i : s(i) != t(i)}
std::size_t hamming_count(const Permutation& s, const Permutation& t);

// Normalized Hamming distance, exact. Throws InvalidArgument on degree mismatch.
Rational hamming(const Permutation& s, const Permutation& t);

// Distances in the left-invariant metric d(s, t) = sum{2^-i : s(i) != t(i)}
// on S_infinity (points numbered from 1), for x_k = (k, k+1), y_k = (1, k).
struct SInfinityDemo {
  int k = 0;
  Rational dx;     // d(x_k, e)
  Rational dconj;  // d(y_k^-1 x_k y_k, e)
};

// Requires 2 <= k <= 60.
SInfinityDemo sinfty_demo(int k);

}  // namespace sofic
