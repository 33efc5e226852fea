#include "sofic/ball.hpp"

#include <limits>

#include "sofic/errors.hpp"

namespace sofic {

std::optional<std::size_t> BallTable::index_of(const GroupElement& g) const {
  const auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> BallTable::product(std::size_t i, std::size_t j) const {
  if (i == 0) return j;
  if (j == 0) return i;
  return index_of(backend_->multiply(elements_[i], elements_[j]));
}

std::optional<std::size_t> BallTable::letter_index(Letter l) const {
  if (!backend_->alphabet().contains(l)) return std::nullopt;
  return index_of(backend_->letter(l));
}

std::vector<std::size_t> BallTable::sphere_sizes() const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(radius_) + 1, 0);
  for (const auto& w : words_) ++counts[w.size()];
  return counts;
}

std::size_t free_ball_size(int rank, int radius) {
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  if (radius == 0) return 1;
  if (rank == 1) return 2 * static_cast<std::size_t>(radius) + 1;
  // 1 + 2r * sum_{k<N} (2r-1)^k
  const std::size_t branch = 2 * static_cast<std::size_t>(rank) - 1;
  std::size_t total = 1;
  std::size_t sphere = 2 * static_cast<std::size_t>(rank);
  for (int k = 1; k <= radius; ++k) {
    if (total > kMax - sphere) return kMax;
    total += sphere;
    if (k < radius) {
      if (sphere > kMax / branch) return kMax;
      sphere *= branch;
    }
  }
  return total;
}

BallTable ball(std::shared_ptr<const GroupBackend> backend, int radius, const Limits& limits) {
  if (radius < 0) throw InvalidArgument("ball radius must be non-negative");
  if (backend->kind() == BackendKind::kFree &&
      free_ball_size(backend->rank(), radius) > limits.max_ball_elements) {
    throw ResourceLimitExceeded("ball of radius " + std::to_string(radius) + " in " + backend->name() +
                                " exceeds the cap of " + std::to_string(limits.max_ball_elements) + " elements");
  }

  BallTable table;
  table.backend_ = backend;
  table.radius_ = radius;
  const auto letters = backend->alphabet().signed_letters();
  std::vector<GroupElement> letter_elements;
  for (Letter l : letters) letter_elements.push_back(backend->letter(l));

  auto add = [&](GroupElement g, Word w) {
    table.index_.emplace(g, table.elements_.size());
    table.elements_.push_back(std::move(g));
    table.words_.push_back(std::move(w));
    if (table.elements_.size() > limits.max_ball_elements) {
      throw ResourceLimitExceeded("ball of radius " + std::to_string(radius) + " in " + backend->name() +
                                  " exceeds the cap of " + std::to_string(limits.max_ball_elements) + " elements");
    }
  };
  add(backend->identity(), {});

  // Extending the shortlex-ordered previous sphere by letters in order visits
  // candidate words in shortlex order, so first hits are least spellings.
  std::size_t sphere_begin = 0;
  for (int k = 1; k <= radius; ++k) {
    const std::size_t sphere_end = table.elements_.size();
    for (std::size_t i = sphere_begin; i < sphere_end; ++i) {
      for (std::size_t li = 0; li < letters.size(); ++li) {
        GroupElement g = backend->multiply(table.elements_[i], letter_elements[li]);
        if (table.index_.contains(g)) continue;
        Word w = table.words_[i];
        w.push_back(letters[li]);
        add(std::move(g), std::move(w));
      }
    }
    if (table.elements_.size() == sphere_end) break;  // saturated (finite group)
    sphere_begin = sphere_end;
  }

  table.inverses_.resize(table.elements_.size());
  for (std::size_t i = 0; i < table.elements_.size(); ++i) {
    const auto inv = table.index_of(backend->inverse(table.elements_[i]));
    if (!inv) throw Error("ball is not closed under inverses (backend bug)");
    table.inverses_[i] = *inv;
  }
  return table;
}

BallTable ball(const GroupBackend& backend, int radius, const Limits& limits) {
  return ball(std::make_shared<const GroupBackend>(backend), radius, limits);
}

}  // namespace sofic
