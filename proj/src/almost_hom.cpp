#include "sofic/almost_hom.hpp"

#include <limits>

#include "sofic/errors.hpp"
#include "sofic/kernels.hpp"

namespace sofic {

AlmostHom::AlmostHom(std::shared_ptr<const BallTable> domain, std::vector<Permutation> images)
    : domain_(std::move(domain)), kind_(TargetKind::kSym), permutations_(std::move(images)) {
  check_domain(permutations_.size());
  degree_ = permutations_.front().degree();
  for (const auto& p : permutations_) {
    if (p.degree() != degree_) throw MalformedInput("images have different degrees");
  }
  if (!permutations_.front().is_identity()) throw MalformedInput("identity must map to the identity permutation");
}

AlmostHom::AlmostHom(std::shared_ptr<const BallTable> domain, std::vector<UnitaryMatrix> images)
    : domain_(std::move(domain)), kind_(TargetKind::kUnitary), unitaries_(std::move(images)) {
  check_domain(unitaries_.size());
  degree_ = unitaries_.front().rank();
  for (const auto& u : unitaries_) {
    if (u.rank() != degree_) throw MalformedInput("images have different ranks");
  }
  const auto& e = unitaries_.front();
  double worst = 0.0;
  for (std::size_t i = 0; i < degree_; ++i) {
    for (std::size_t k = 0; k < degree_; ++k) worst = std::max(worst, std::abs(e(i, k) - Complex(i == k ? 1.0 : 0.0)));
  }
  if (worst > e.tolerance()) throw MalformedInput("identity must map to the identity matrix");
}

void AlmostHom::check_domain(std::size_t count) const {
  if (!domain_) throw InvalidArgument("almost homomorphism needs a domain ball");
  if (count != domain_->size()) {
    throw MalformedInput("assignment has " + std::to_string(count) + " images for a ball of " +
                         std::to_string(domain_->size()) + " elements");
  }
}

const std::vector<Permutation>& AlmostHom::permutations() const {
  if (kind_ != TargetKind::kSym) throw InvalidArgument("target is not a symmetric group");
  return permutations_;
}

const std::vector<UnitaryMatrix>& AlmostHom::unitaries() const {
  if (kind_ != TargetKind::kUnitary) throw InvalidArgument("target is not a unitary group");
  return unitaries_;
}

Measurement defect(const AlmostHom& j) {
  const BallTable& ball = j.domain();
  Measurement out;
  if (j.kind() == TargetKind::kSym) {
    const auto& images = j.permutations();
    const auto& k = kernels::active();
    std::vector<std::uint32_t> composed(j.degree());
    std::size_t worst_count = 0;
    out.worst = IndexPair{0, 0};
    ball.for_each_product([&](std::size_t g, std::size_t h, std::size_t gh) {
      if (g == 0 || h == 0) return;  // j(e) = id makes these exact
      k.gather(images[g].images(), images[h].images(), composed);
      const std::size_t count = k.count_mismatches(composed, images[gh].images());
      if (count > worst_count) {
        worst_count = count;
        out.worst = IndexPair{g, h};
      }
    });
    out.exact = Rational(static_cast<std::int64_t>(worst_count), static_cast<std::int64_t>(j.degree()));
    out.value = to_double(*out.exact);
    return out;
  }
  const auto& images = j.unitaries();
  double worst = -1.0;
  ball.for_each_product([&](std::size_t g, std::size_t h, std::size_t gh) {
    const double d = hs_distance(images[g] * images[h], images[gh]);
    if (d > worst) {
      worst = d;
      out.worst = IndexPair{g, h};
    }
  });
  out.value = worst;
  return out;
}

Measurement separation(const AlmostHom& j) {
  const std::size_t m = j.size();
  if (m < 2) throw InvalidArgument("separation needs at least two ball elements");
  Measurement out;
  if (j.kind() == TargetKind::kSym) {
    const auto& images = j.permutations();
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::size_t g = 0; g < m; ++g) {
      for (std::size_t h = g + 1; h < m; ++h) {
        const std::size_t count = hamming_count(images[g], images[h]);
        if (count < best) {
          best = count;
          out.worst = IndexPair{g, h};
        }
      }
    }
    out.exact = Rational(static_cast<std::int64_t>(best), static_cast<std::int64_t>(j.degree()));
    out.value = to_double(*out.exact);
    return out;
  }
  const auto& images = j.unitaries();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t h = g + 1; h < m; ++h) {
      const double d = hs_distance(images[g], images[h]);
      if (d < best) {
        best = d;
        out.worst = IndexPair{g, h};
      }
    }
  }
  out.value = best;
  return out;
}

VerificationReport verify(const AlmostHom& j, double eps, double delta) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  if (!(delta >= 0.0)) throw InvalidArgument("delta must be non-negative");
  VerificationReport r;
  r.eps = eps;
  r.delta = delta;
  r.defect = defect(j);
  r.separation = separation(j);
  r.defect_ok = r.defect.value < eps;
  r.separation_ok = r.separation.value >= delta;
  r.passed = r.defect_ok && r.separation_ok;
  return r;
}

namespace {

nlohmann::json measurement_json(const Measurement& m, const BallTable& domain, bool product) {
  nlohmann::json out{{"value", m.value}};
  if (m.exact) out["exact"] = to_string(*m.exact);
  if (m.worst) {
    const auto& alphabet = domain.backend().alphabet();
    nlohmann::json pair{{"g", alphabet.format(domain.word(m.worst->first))},
                        {"h", alphabet.format(domain.word(m.worst->second))}};
    if (product) {
      if (auto gh = domain.product(m.worst->first, m.worst->second)) pair["gh"] = alphabet.format(domain.word(*gh));
    }
    out["worst_pair"] = pair;
  }
  return out;
}

}  // namespace

nlohmann::json VerificationReport::to_json(const BallTable& domain) const {
  nlohmann::json out{{"passed", passed},
                     {"eps", eps},
                     {"delta", delta},
                     {"defect_ok", defect_ok},
                     {"separation_ok", separation_ok},
                     {"defect", measurement_json(defect, domain, true)},
                     {"separation", measurement_json(separation, domain, false)}};
  if (claims_reproduced) out["claims_reproduced"] = *claims_reproduced;
  return out;
}

}  // namespace sofic
