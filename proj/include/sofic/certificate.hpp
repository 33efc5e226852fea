#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "sofic/almost_hom.hpp"
#include "sofic/limits.hpp"

namespace sofic {

inline constexpr std::string_view kCertificateSchema = "sofic-cert/v1";

// A serialized almost homomorphism with advisory claims. Claims are always
// recomputed on verification.
struct Certificate {
  AlmostHom map;
  double claimed_defect = 0.0;
  double claimed_separation = 0.0;
  std::string provenance;

  nlohmann::json to_json() const;
  std::string serialize() const;

  // Throws MalformedInput for schema violations, non-bijective permutations,
  // non-unitary matrices and maps that do not cover the ball exactly.
  static Certificate from_json(const nlohmann::json& doc, const Limits& limits = {});
  static Certificate parse(std::string_view text, const Limits& limits = {});
};

// Measures the map, stores the claims and appends the verification
// parameters in the form "verify: eps=<e> delta=<d>" to the provenance.
Certificate certify(AlmostHom map, std::string provenance);

struct VerifyParameters {
  double eps = 0.0;
  double delta = 0.0;
};

// Reads the parameters appended by certify(); nullopt when absent.
std::optional<VerifyParameters> recorded_verify_parameters(std::string_view provenance);

VerificationReport verify(const Certificate& cert, double eps, double delta);

}  // namespace sofic
