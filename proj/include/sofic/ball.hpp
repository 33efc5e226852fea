#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "sofic/group.hpp"
#include "sofic/limits.hpp"

namespace sofic {

// The word-metric ball B_N with its partial multiplication table. Element 0
// is the identity; elements are ordered shortlex by their least spelling.
// Products are looked up on demand: product(i, j) is defined exactly when the
// product of elements i and j lies in the ball.
class BallTable {
 public:
  const GroupBackend& backend() const { return *backend_; }
  std::shared_ptr<const GroupBackend> backend_ptr() const { return backend_; }
  int radius() const { return radius_; }
  std::size_t size() const { return elements_.size(); }

  const GroupElement& element(std::size_t i) const { return elements_[i]; }
  // Shortlex-least spelling of element i.
  const Word& word(std::size_t i) const { return words_[i]; }
  int length(std::size_t i) const { return static_cast<int>(words_[i].size()); }
  std::size_t inverse(std::size_t i) const { return inverses_[i]; }

  std::optional<std::size_t> index_of(const GroupElement& g) const;
  std::optional<std::size_t> product(std::size_t i, std::size_t j) const;
  // Ball index of a signed generator; nullopt at radius 0.
  std::optional<std::size_t> letter_index(Letter l) const;

  // Calls fn(g, h, gh) for every pair whose product lies in the ball, in
  // row-major index order.
  template <class Fn>
  void for_each_product(Fn&& fn) const {
    for (std::size_t g = 0; g < size(); ++g) {
      for (std::size_t h = 0; h < size(); ++h) {
        if (auto gh = product(g, h)) fn(g, h, *gh);
      }
    }
  }

  // Number of elements at each word length 0..radius.
  std::vector<std::size_t> sphere_sizes() const;

 private:
  friend BallTable ball(std::shared_ptr<const GroupBackend>, int, const Limits&);

  std::shared_ptr<const GroupBackend> backend_;
  int radius_ = 0;
  std::vector<GroupElement> elements_;
  std::vector<Word> words_;
  std::vector<std::size_t> inverses_;
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> index_;
};

// Closed-form size of the free-group ball, 1 + 2r((2r-1)^N - 1)/(2r-2)
// (2N + 1 when r = 1); saturates at SIZE_MAX.
std::size_t free_ball_size(int rank, int radius);

// Throws ResourceLimitExceeded when the ball would exceed limits.max_ball_elements.
BallTable ball(std::shared_ptr<const GroupBackend> backend, int radius, const Limits& limits = {});
BallTable ball(const GroupBackend& backend, int radius, const Limits& limits = {});

}  // namespace sofic
