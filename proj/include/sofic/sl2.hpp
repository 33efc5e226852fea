#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "sofic/ball.hpp"
#include "sofic/group.hpp"
#include "sofic/limits.hpp"
#include "sofic/word.hpp"

namespace sofic {

// 2x2 matrix over Z_p, row-major {m00, m01, m10, m11}, entries in [0, p).
struct Mat2 {
  std::array<std::int64_t, 4> m{1, 0, 0, 1};

  auto operator<=>(const Mat2&) const = default;
};

bool is_prime(std::uint64_t n);

Mat2 mat2_multiply(const Mat2& x, const Mat2& y, std::int64_t p);

// Evaluates a rank-2 word with a -> A = [[1,2],[0,1]], b -> B = [[1,0],[2,1]]
// (inverses [[1,-2],[0,1]], [[1,0],[-2,1]]) reduced mod p.
Mat2 sl2_word_image(std::span<const Letter> word, std::uint64_t p);

// Smallest prime p for which sl2_word_image is injective on the radius-N ball
// of F_2. Throws ResourceLimitExceeded past limits.prime_ceiling.
std::uint64_t lef_witness_free(int radius, const Limits& limits = {});

// SL(2, Z_p) as an explicit table, elements in lexicographic entry order,
// generators A and B named "a" and "b".
struct Sl2Group {
  std::uint64_t p = 0;
  std::vector<Mat2> elements;
  FiniteGroup group;

  // Throws InvalidArgument for matrices outside SL(2, Z_p).
  std::uint32_t index_of(const Mat2& m) const;
};

// Throws ResourceLimitExceeded when p(p^2 - 1) > limits.max_finite_order.
Sl2Group sl2_group(std::uint64_t p, const Limits& limits = {});

}  // namespace sofic
