#include "sofic/sl2.hpp"

#include <algorithm>
#include <set>

#include "sofic/errors.hpp"

namespace sofic {
namespace {

std::int64_t mod(std::int64_t v, std::int64_t p) {
  const std::int64_t r = v % p;
  return r < 0 ? r + p : r;
}

Mat2 generator_image(Letter l, std::int64_t p) {
  switch (l) {
    case 1:
      return {{1, mod(2, p), 0, 1}};
    case -1:
      return {{1, mod(-2, p), 0, 1}};
    case 2:
      return {{1, 0, mod(2, p), 1}};
    case -2:
      return {{1, 0, mod(-2, p), 1}};
    default:
      throw InvalidArgument("SL(2) images need a rank-2 alphabet; got letter " + std::to_string(l));
  }
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Mat2 mat2_multiply(const Mat2& x, const Mat2& y, std::int64_t p) {
  const auto& a = x.m;
  const auto& b = y.m;
  return {{mod(a[0] * b[0] + a[1] * b[2], p), mod(a[0] * b[1] + a[1] * b[3], p),
           mod(a[2] * b[0] + a[3] * b[2], p), mod(a[2] * b[1] + a[3] * b[3], p)}};
}

Mat2 sl2_word_image(std::span<const Letter> word, std::uint64_t p) {
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  if (p > (1ULL << 31)) throw InvalidArgument("modulus too large");
  const auto pp = static_cast<std::int64_t>(p);
  Mat2 acc;
  for (Letter l : word) acc = mat2_multiply(acc, generator_image(l, pp), pp);
  return acc;
}

std::uint64_t lef_witness_free(int radius, const Limits& limits) {
  if (radius < 1) throw InvalidArgument("witness radius must be positive");
  const BallTable b = ball(GroupBackend::free(2), radius, limits);
  for (std::uint64_t p = 2; p <= limits.prime_ceiling; ++p) {
    if (!is_prime(p)) continue;
    std::set<Mat2> images;
    bool injective = true;
    for (std::size_t i = 0; i < b.size() && injective; ++i) {
      injective = images.insert(sl2_word_image(b.word(i), p)).second;
    }
    if (injective) return p;
  }
  throw ResourceLimitExceeded("no prime up to " + std::to_string(limits.prime_ceiling) +
                              " separates the radius-" + std::to_string(radius) + " ball");
}

std::uint32_t Sl2Group::index_of(const Mat2& m) const {
  const auto it = std::lower_bound(elements.begin(), elements.end(), m);
  if (it == elements.end() || *it != m) throw InvalidArgument("matrix is not in SL(2, Z_p)");
  return static_cast<std::uint32_t>(it - elements.begin());
}

Sl2Group sl2_group(std::uint64_t p, const Limits& limits) {
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  const std::uint64_t order = p * (p * p - 1);
  if (order > limits.max_finite_order) {
    throw ResourceLimitExceeded("|SL(2, Z_" + std::to_string(p) + ")| = " + std::to_string(order) +
                                " exceeds the group order cap " + std::to_string(limits.max_finite_order));
  }
  const auto pp = static_cast<std::int64_t>(p);
  std::vector<Mat2> elements;
  for (std::int64_t a = 0; a < pp; ++a) {
    for (std::int64_t b = 0; b < pp; ++b) {
      for (std::int64_t c = 0; c < pp; ++c) {
        for (std::int64_t d = 0; d < pp; ++d) {
          if (mod(a * d - b * c, pp) == 1) elements.push_back({{a, b, c, d}});
        }
      }
    }
  }
  const auto m = static_cast<std::uint32_t>(elements.size());
  // Elements are sorted, so lookups are binary searches.
  auto find = [&](const Mat2& x) {
    return static_cast<std::uint32_t>(std::lower_bound(elements.begin(), elements.end(), x) - elements.begin());
  };
  std::vector<std::uint32_t> flat(std::size_t{m} * m);
  for (std::uint32_t i = 0; i < m; ++i) {
    for (std::uint32_t j = 0; j < m; ++j) flat[std::size_t{i} * m + j] = find(mat2_multiply(elements[i], elements[j], pp));
  }
  const std::uint32_t identity = find(Mat2{});
  std::vector<std::uint32_t> gens{find(generator_image(1, pp)), find(generator_image(2, pp))};
  auto group = FiniteGroup::from_trusted_table(std::move(flat), m, identity, std::move(gens), {"a", "b"});
  return Sl2Group{p, std::move(elements), std::move(group)};
}

}  // namespace sofic
