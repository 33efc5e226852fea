#include "sofic/constructions.hpp"

#include <algorithm>
#include <sstream>
#include <utility>
#include <vector>

#include "sofic/amplify.hpp"
#include "sofic/errors.hpp"
#include "sofic/regular_representation.hpp"
#include "sofic/sl2.hpp"

namespace sofic {

AlmostHom folner_to_sofic(std::shared_ptr<const BallTable> domain, const FolnerSet& phi) {
  if (!(domain->backend() == phi.backend())) throw InvalidArgument("ball and Folner set use different groups");
  const std::size_t n = phi.size();
  std::vector<Permutation> images;
  images.reserve(domain->size());
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  for (std::size_t g = 0; g < domain->size(); ++g) {
    std::vector<std::uint32_t> map(n, kUnset);
    std::vector<bool> hit(n, false);
    for (std::size_t x = 0; x < n; ++x) {
      if (auto y = phi.index_of(phi.backend().multiply(domain->element(g), phi.element(x)))) {
        map[x] = static_cast<std::uint32_t>(*y);
        hit[*y] = true;
      }
    }
    std::size_t free_target = 0;
    for (std::size_t x = 0; x < n; ++x) {
      if (map[x] != kUnset) continue;
      while (hit[free_target]) ++free_target;
      map[x] = static_cast<std::uint32_t>(free_target);
      hit[free_target] = true;
    }
    images.emplace_back(std::move(map));
  }
  return AlmostHom(std::move(domain), std::move(images));
}

AlmostHom lef_to_sofic(std::shared_ptr<const BallTable> domain, const FiniteGroup& group,
                       std::span<const std::uint32_t> mono) {
  const BallTable& b = *domain;
  if (mono.size() != b.size()) throw InvalidArgument("local monomorphism must cover the ball");
  const auto& alphabet = b.backend().alphabet();
  auto word = [&](std::size_t i) { return "\"" + alphabet.format(b.word(i)) + "\""; };
  std::vector<std::size_t> seen(group.order(), b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (mono[i] >= group.order()) throw InvalidArgument("local monomorphism image out of range");
    if (seen[mono[i]] != b.size()) {
      throw InvalidArgument("local map not injective: " + word(seen[mono[i]]) + " and " + word(i) +
                            " have the same image");
    }
    seen[mono[i]] = i;
  }
  b.for_each_product([&](std::size_t g, std::size_t h, std::size_t gh) {
    if (group.multiply(mono[g], mono[h]) != mono[gh]) {
      throw InvalidArgument("local map not multiplicative on the pair " + word(g) + ", " + word(h));
    }
  });
  std::vector<Permutation> images;
  images.reserve(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) images.push_back(regular_image(group, mono[i]));
  return AlmostHom(std::move(domain), std::move(images));
}

Certificate free_sofic_certificate(int radius, const Limits& limits, int witness_radius) {
  if (radius < 1) throw InvalidArgument("free certificate needs radius >= 1");
  const int search = std::max(radius, witness_radius);
  const std::uint64_t p = lef_witness_free(search, limits);
  const Sl2Group sl2 = sl2_group(p, limits);
  auto domain = std::make_shared<const BallTable>(ball(std::make_shared<const GroupBackend>(GroupBackend::free(2)), radius, limits));
  std::vector<std::uint32_t> mono(domain->size());
  for (std::size_t i = 0; i < domain->size(); ++i) mono[i] = sl2.index_of(sl2_word_image(domain->word(i), p));
  std::ostringstream prov;
  prov << "free(2) ball radius " << radius << " via SL(2,Z_" << p << ") regular representation, p=" << p;
  if (search != radius) prov << " (witness radius " << search << ")";
  return certify(lef_to_sofic(std::move(domain), sl2.group, mono), prov.str());
}

Certificate folner_certificate(std::shared_ptr<const GroupBackend> backend, int side, int radius,
                               const Limits& limits) {
  const FolnerSet phi = folner_box(backend, side, limits);
  auto domain = std::make_shared<const BallTable>(ball(backend, radius, limits));
  std::ostringstream prov;
  prov << backend->name() << " ball radius " << radius << " via Folner box L=" << side << " (" << phi.size()
       << " points)";
  return certify(folner_to_sofic(std::move(domain), phi), prov.str());
}

Certificate cyclic_lef_certificate(int radius, std::uint32_t modulus, const Limits& limits) {
  if (modulus < 1) throw InvalidArgument("modulus must be positive");
  const FiniteGroup zm = FiniteGroup::cyclic(modulus);
  auto domain = std::make_shared<const BallTable>(ball(std::make_shared<const GroupBackend>(GroupBackend::zpower(1)), radius, limits));
  std::vector<std::uint32_t> mono(domain->size());
  const auto m = static_cast<std::int64_t>(modulus);
  for (std::size_t i = 0; i < domain->size(); ++i) {
    mono[i] = static_cast<std::uint32_t>(((domain->element(i).coords[0] % m) + m) % m);
  }
  std::ostringstream prov;
  prov << "Z ball radius " << radius << " via reduction mod " << modulus;
  return certify(lef_to_sofic(std::move(domain), zm, mono), prov.str());
}

Certificate finite_certificate(const FiniteGroup& group, int radius, const Limits& limits) {
  if (group.order() > limits.max_finite_order) throw ResourceLimitExceeded("finite group order exceeds the cap");
  auto domain = std::make_shared<const BallTable>(ball(std::make_shared<const GroupBackend>(GroupBackend::finite(group)), radius, limits));
  std::vector<std::uint32_t> mono(domain->size());
  for (std::size_t i = 0; i < domain->size(); ++i) mono[i] = static_cast<std::uint32_t>(domain->element(i).coords[0]);
  std::ostringstream prov;
  prov << "finite group of order " << group.order() << ", ball radius " << radius << " via regular representation";
  return certify(lef_to_sofic(std::move(domain), group, mono), prov.str());
}

AlmostHom sofic_to_hyperlinear(const AlmostHom& j, const Limits& limits) {
  if (j.degree() > limits.max_matrix_rank) {
    throw ResourceLimitExceeded("degree " + std::to_string(j.degree()) + " exceeds the matrix rank cap of " +
                                std::to_string(limits.max_matrix_rank));
  }
  std::vector<UnitaryMatrix> images;
  images.reserve(j.size());
  for (const auto& s : j.permutations()) images.push_back(perm_matrix(s));
  return AlmostHom(j.domain_ptr(), std::move(images));
}

std::string strip_verify_parameters(std::string provenance) {
  const auto at = provenance.rfind("verify: eps=");
  if (at == std::string::npos) return provenance;
  provenance.erase(at);
  while (!provenance.empty() && (provenance.back() == ' ' || provenance.back() == ';')) provenance.pop_back();
  return provenance;
}

Certificate sofic_to_hyperlinear(const Certificate& cert, const Limits& limits) {
  return certify(sofic_to_hyperlinear(cert.map, limits), strip_verify_parameters(cert.provenance) + "; permutation matrices");
}

AlmostHom amplify(const AlmostHom& j, int times, const Limits& limits) {
  if (times < 1) throw InvalidArgument("amplification count must be positive");
  std::size_t rank = j.degree();
  for (int t = 0; t < times; ++t) {
    if (rank * rank > limits.max_matrix_rank) {
      throw ResourceLimitExceeded("amplified rank exceeds the cap of " + std::to_string(limits.max_matrix_rank));
    }
    rank *= rank;
  }
  std::vector<UnitaryMatrix> images = j.unitaries();
  for (int t = 0; t < times; ++t) {
    for (auto& u : images) u = tensor_square(u);
  }
  return AlmostHom(j.domain_ptr(), std::move(images));
}

Certificate amplify_certificate(const Certificate& cert, int times, const Limits& limits) {
  return certify(amplify(cert.map, times, limits),
                 strip_verify_parameters(cert.provenance) + "; tensor square x" + std::to_string(times));
}

}  // namespace sofic
