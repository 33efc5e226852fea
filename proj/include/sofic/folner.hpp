#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "sofic/ball.hpp"
#include "sofic/group.hpp"
#include "sofic/limits.hpp"
#include "sofic/rational.hpp"

namespace sofic {

// A finite nonempty set of group elements, held in sorted canonical order.
// Duplicates collapse.
class FolnerSet {
 public:
  FolnerSet(std::shared_ptr<const GroupBackend> backend, std::vector<GroupElement> elements);

  const GroupBackend& backend() const { return *backend_; }
  std::shared_ptr<const GroupBackend> backend_ptr() const { return backend_; }
  std::size_t size() const { return elements_.size(); }
  const GroupElement& element(std::size_t i) const { return elements_[i]; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  std::optional<std::size_t> index_of(const GroupElement& g) const;
  bool contains(const GroupElement& g) const { return index_.contains(g); }

 private:
  std::shared_ptr<const GroupBackend> backend_;
  std::vector<GroupElement> elements_;
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> index_;
};

// max over g in test_set of |g Phi (sym diff) Phi| / |Phi|.
Rational folner_defect(const FolnerSet& phi, std::span<const GroupElement> test_set);

// zpower(d): [0, L)^d. heisenberg: a, b in [0, L), c in [0, L^2). Other
// backends are rejected. The box size is capped by limits.max_ball_elements.
FolnerSet folner_box(std::shared_ptr<const GroupBackend> backend, int side, const Limits& limits = {});

// ||f - g.f||_1 for f = chi_Phi / |Phi| and (g.f)(x) = f(g^-1 x).
Rational reiter_norm(const FolnerSet& phi, const GroupElement& g);

// min over signed generators g of |g B_N (sym diff) B_N| / |B_N|.
Rational ball_expansion(const BallTable& ball);
Rational f2_ball_expansion(int radius, const Limits& limits = {});

}  // namespace sofic
