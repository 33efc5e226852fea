#include "sofic/folner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "sofic/errors.hpp"

namespace sofic {

FolnerSet::FolnerSet(std::shared_ptr<const GroupBackend> backend, std::vector<GroupElement> elements)
    : backend_(std::move(backend)), elements_(std::move(elements)) {
  if (elements_.empty()) throw InvalidArgument("Folner set must be nonempty");
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  const std::size_t arity = backend_->identity().coords.size();
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (backend_->kind() != BackendKind::kFree && elements_[i].coords.size() != arity) {
      throw InvalidArgument("element does not belong to " + backend_->name());
    }
    index_.emplace(elements_[i], i);
  }
}

std::optional<std::size_t> FolnerSet::index_of(const GroupElement& g) const {
  const auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Rational folner_defect(const FolnerSet& phi, std::span<const GroupElement> test_set) {
  Rational worst(0);
  const auto size = static_cast<std::int64_t>(phi.size());
  for (const auto& g : test_set) {
    // |g Phi| = |Phi|, so the symmetric difference is twice the escaping part.
    std::int64_t escaped = 0;
    for (const auto& x : phi.elements()) escaped += !phi.contains(phi.backend().multiply(g, x));
    worst = std::max(worst, Rational(2 * escaped, size));
  }
  return worst;
}

FolnerSet folner_box(std::shared_ptr<const GroupBackend> backend, int side, const Limits& limits) {
  if (side < 1) throw InvalidArgument("box side must be positive");
  const auto L = static_cast<std::int64_t>(side);
  std::vector<GroupElement> elements;
  auto guard = [&](double projected) {
    if (projected > static_cast<double>(limits.max_ball_elements)) {
      throw ResourceLimitExceeded("box of side " + std::to_string(side) + " exceeds the element cap");
    }
  };
  switch (backend->kind()) {
    case BackendKind::kZPower: {
      const int d = backend->rank();
      guard(std::pow(static_cast<double>(L), d));
      std::vector<std::int64_t> c(static_cast<std::size_t>(d), 0);
      while (true) {
        elements.push_back({c});
        int axis = d - 1;
        while (axis >= 0 && ++c[static_cast<std::size_t>(axis)] == L) c[static_cast<std::size_t>(axis--)] = 0;
        if (axis < 0) break;
      }
      break;
    }
    case BackendKind::kHeisenberg:
      guard(static_cast<double>(L) * L * L * L);
      for (std::int64_t a = 0; a < L; ++a) {
        for (std::int64_t b = 0; b < L; ++b) {
          for (std::int64_t c = 0; c < L * L; ++c) elements.push_back({{a, b, c}});
        }
      }
      break;
    case BackendKind::kFree:
    case BackendKind::kFiniteTable:
      throw InvalidArgument("no Folner box for " + backend->name() + " (finite groups use the whole group)");
  }
  return FolnerSet(std::move(backend), std::move(elements));
}

Rational reiter_norm(const FolnerSet& phi, const GroupElement& g) {
  const GroupBackend& backend = phi.backend();
  const GroupElement g_inv = backend.inverse(g);
  // Support of f - g.f is contained in Phi union g Phi.
  std::set<GroupElement> support(phi.elements().begin(), phi.elements().end());
  for (const auto& x : phi.elements()) support.insert(backend.multiply(g, x));
  std::int64_t mass = 0;
  for (const auto& x : support) {
    const int f = phi.contains(x) ? 1 : 0;
    const int gf = phi.contains(backend.multiply(g_inv, x)) ? 1 : 0;
    mass += f > gf ? f - gf : gf - f;
  }
  return Rational(mass, static_cast<std::int64_t>(phi.size()));
}

Rational ball_expansion(const BallTable& ball) {
  const GroupBackend& backend = ball.backend();
  Rational best(std::numeric_limits<std::int64_t>::max());
  for (Letter l : backend.alphabet().signed_letters()) {
    const GroupElement g = backend.letter(l);
    std::int64_t escaped = 0;
    for (std::size_t i = 0; i < ball.size(); ++i) escaped += !ball.index_of(backend.multiply(g, ball.element(i)));
    best = std::min(best, Rational(2 * escaped, static_cast<std::int64_t>(ball.size())));
  }
  return best;
}

Rational f2_ball_expansion(int radius, const Limits& limits) {
  if (radius < 1) throw InvalidArgument("radius must be positive");
  return ball_expansion(ball(GroupBackend::free(2), radius, limits));
}

}  // namespace sofic
