#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "sofic/ball.hpp"
#include "sofic/permutation.hpp"
#include "sofic/rational.hpp"
#include "sofic/unitary.hpp"

namespace sofic {

enum class TargetKind { kSym, kUnitary };

// A map j from a word-metric ball into S_n or U(n). The identity of the ball
// must map to the identity of the target.
class AlmostHom {
 public:
  AlmostHom(std::shared_ptr<const BallTable> domain, std::vector<Permutation> images);
  AlmostHom(std::shared_ptr<const BallTable> domain, std::vector<UnitaryMatrix> images);

  TargetKind kind() const { return kind_; }
  std::size_t degree() const { return degree_; }
  const BallTable& domain() const { return *domain_; }
  std::shared_ptr<const BallTable> domain_ptr() const { return domain_; }
  std::size_t size() const { return domain_->size(); }

  // Throw InvalidArgument when the target kind does not match.
  const std::vector<Permutation>& permutations() const;
  const std::vector<UnitaryMatrix>& unitaries() const;

 private:
  void check_domain(std::size_t count) const;

  std::shared_ptr<const BallTable> domain_;
  TargetKind kind_;
  std::size_t degree_ = 0;
  std::vector<Permutation> permutations_;
  std::vector<UnitaryMatrix> unitaries_;
};

struct IndexPair {
  std::size_t first = 0;
  std::size_t second = 0;
};

// A max (defect) or min (separation) over ball pairs. For sym targets the
// value is exact; `worst` is the first pair in row-major order attaining it.
struct Measurement {
  double value = 0.0;
  std::optional<Rational> exact;
  std::optional<IndexPair> worst;
};

// max over defined products (g, h) of d(j(g) j(h), j(gh)).
Measurement defect(const AlmostHom& j);

// min over distinct ball elements g != h of d(j(g), j(h)). Throws
// InvalidArgument for a singleton ball.
Measurement separation(const AlmostHom& j);

struct VerificationReport {
  bool passed = false;
  bool defect_ok = false;
  bool separation_ok = false;
  double eps = 0.0;
  double delta = 0.0;
  Measurement defect;
  Measurement separation;
  std::optional<bool> claims_reproduced;
  nlohmann::json to_json(const BallTable& domain) const;
};

// Passes iff defect < eps and separation >= delta. Requires eps > 0, delta >= 0.
VerificationReport verify(const AlmostHom& j, double eps, double delta);

}  // namespace sofic
