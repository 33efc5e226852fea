#include "sofic/permutation.hpp"

#include "sofic/errors.hpp"
#include "sofic/kernels.hpp"
#include "sofic/regular_representation.hpp"

namespace sofic {

Permutation::Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  if (images_.empty()) throw MalformedInput("permutation degree must be positive");
  if (images_.size() > (1ULL << 31)) throw MalformedInput("permutation degree too large");
  std::vector<bool> seen(images_.size(), false);
  for (std::uint32_t v : images_) {
    if (v >= images_.size() || seen[v]) throw MalformedInput("images do not form a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  if (n == 0) throw InvalidArgument("permutation degree must be positive");
  std::vector<std::uint32_t> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = static_cast<std::uint32_t>(i);
  return Permutation(Trusted{}, std::move(images));
}

Permutation Permutation::cyclic_shift(std::size_t n, std::int64_t shift) {
  if (n == 0) throw InvalidArgument("permutation degree must be positive");
  const auto nn = static_cast<std::int64_t>(n);
  const std::int64_t s = ((shift % nn) + nn) % nn;
  std::vector<std::uint32_t> images(n);
  for (std::int64_t i = 0; i < nn; ++i) images[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>((i + s) % nn);
  return Permutation(Trusted{}, std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<std::uint32_t> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<std::uint32_t>(i);
  return Permutation(Trusted{}, std::move(inv));
}

bool Permutation::is_identity() const { return fixed_points() == degree(); }

std::size_t Permutation::fixed_points() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) count += images_[i] == i;
  return count;
}

Permutation operator*(const Permutation& s, const Permutation& t) {
  if (s.degree() != t.degree()) throw InvalidArgument("permutation degree mismatch");
  std::vector<std::uint32_t> out(s.degree());
  kernels::active().gather(s.images_, t.images_, out);
  return Permutation(Permutation::Trusted{}, std::move(out));
}

Permutation Permutation::from_json(const nlohmann::json& doc) {
  if (!doc.is_array()) throw MalformedInput("permutation must be an array of images");
  std::vector<std::uint32_t> images;
  images.reserve(doc.size());
  for (const auto& v : doc) {
    if (!v.is_number_unsigned()) throw MalformedInput("permutation images must be non-negative integers");
    const auto x = v.get<std::uint64_t>();
    if (x >= doc.size()) throw MalformedInput("permutation image out of range");
    images.push_back(static_cast<std::uint32_t>(x));
  }
  return Permutation(std::move(images));
}

std::size_t hamming_count(const Permutation& s, const Permutation& t) {
  if (s.degree() != t.degree()) throw InvalidArgument("permutation degree mismatch");
  return kernels::active().count_mismatches(s.images(), t.images());
}

Rational hamming(const Permutation& s, const Permutation& t) {
  return Rational(static_cast<std::int64_t>(hamming_count(s, t)), static_cast<std::int64_t>(s.degree()));
}

SInfinityDemo sinfty_demo(int k) {
  if (k < 2 || k > 60) throw InvalidArgument("sinfty demo needs 2 <= k <= 60");
  // Points 1..k+1 carry the finite support; index 0 is unused.
  const std::size_t n = static_cast<std::size_t>(k) + 2;
  auto transposition = [n](std::uint32_t a, std::uint32_t b) {
    std::vector<std::uint32_t> images(n);
    for (std::size_t i = 0; i < n; ++i) images[i] = static_cast<std::uint32_t>(i);
    std::swap(images[a], images[b]);
    return Permutation(std::move(images));
  };
  const auto uk = static_cast<std::uint32_t>(k);
  const Permutation x = transposition(uk, uk + 1);
  const Permutation y = transposition(1, uk);
  const Permutation conj = y.inverse() * x * y;

  auto distance_to_identity = [](const Permutation& s) {
    Rational d(0);
    for (std::size_t i = 1; i < s.degree(); ++i) {
      if (s(i) != i) d += Rational(1, std::int64_t{1} << i);
    }
    return d;
  };
  return {k, distance_to_identity(x), distance_to_identity(conj)};
}

std::vector<Permutation> regular_representation(const FiniteGroup& group) {
  std::vector<Permutation> out;
  out.reserve(group.order());
  for (std::uint32_t g = 0; g < group.order(); ++g) out.push_back(regular_image(group, g));
  return out;
}

Permutation regular_image(const FiniteGroup& group, std::uint32_t element) {
  if (element >= group.order()) throw InvalidArgument("element index out of range");
  auto row = group.row(element);
  return Permutation(std::vector<std::uint32_t>(row.begin(), row.end()));
}

}  // namespace sofic
