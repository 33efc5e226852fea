#include "sofic/certificate.hpp"

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <sstream>

#include "sofic/errors.hpp"

namespace sofic {
namespace {

std::string format_double(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

}  // namespace

nlohmann::json Certificate::to_json() const {
  const BallTable& domain = map.domain();
  const auto& alphabet = domain.backend().alphabet();
  nlohmann::json images = nlohmann::json::object();
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const std::string key = alphabet.format(domain.word(i));
    images[key] = map.kind() == TargetKind::kSym ? map.permutations()[i].to_json() : map.unitaries()[i].to_json();
  }
  return {{"schema", kCertificateSchema},
          {"group", domain.backend().descriptor()},
          {"ball_radius", domain.radius()},
          {"target", {{"kind", map.kind() == TargetKind::kSym ? "sym" : "unitary"}, {"n", map.degree()}}},
          {"map", images},
          {"claimed_defect", claimed_defect},
          {"claimed_separation", claimed_separation},
          {"provenance", provenance}};
}

std::string Certificate::serialize() const { return to_json().dump(2) + "\n"; }

Certificate Certificate::from_json(const nlohmann::json& doc, const Limits& limits) {
  try {
    if (!doc.is_object()) throw MalformedInput("certificate must be a JSON object");
    if (doc.at("schema").get<std::string>() != kCertificateSchema) {
      throw MalformedInput("unsupported certificate schema '" + doc.at("schema").get<std::string>() + "'");
    }
    auto backend = std::make_shared<const GroupBackend>(GroupBackend::from_descriptor(doc.at("group")));
    const int radius = doc.at("ball_radius").get<int>();
    if (radius < 0) throw MalformedInput("ball_radius must be non-negative");
    auto domain = std::make_shared<const BallTable>(ball(backend, radius, limits));

    const auto& target = doc.at("target");
    const auto kind = target.at("kind").get<std::string>();
    const auto n = target.at("n").get<std::size_t>();
    if (kind != "sym" && kind != "unitary") throw MalformedInput("target kind must be \"sym\" or \"unitary\"");
    if (n == 0) throw MalformedInput("target degree must be positive");
    if (kind == "unitary" && n > limits.max_matrix_rank) {
      throw ResourceLimitExceeded("matrix rank " + std::to_string(n) + " exceeds the cap");
    }

    const auto& images = doc.at("map");
    if (!images.is_object()) throw MalformedInput("\"map\" must be an object keyed by words");
    if (images.size() != domain->size()) {
      throw MalformedInput("map has " + std::to_string(images.size()) + " entries for a ball of " +
                           std::to_string(domain->size()) + " elements");
    }
    std::vector<const nlohmann::json*> slots(domain->size(), nullptr);
    for (const auto& [key, value] : images.items()) {
      Word w;
      try {
        w = backend->alphabet().parse(key);
      } catch (const InvalidArgument& e) {
        throw MalformedInput("bad map key '" + key + "': " + e.what());
      }
      const auto index = domain->index_of(backend->normal_form(w));
      if (!index) throw MalformedInput("map key '" + key + "' lies outside the ball");
      if (slots[*index] != nullptr) throw MalformedInput("map key '" + key + "' duplicates another spelling");
      slots[*index] = &value;
    }

    std::optional<AlmostHom> map;
    if (kind == "sym") {
      std::vector<Permutation> perms;
      for (const auto* v : slots) {
        perms.push_back(Permutation::from_json(*v));
        if (perms.back().degree() != n) throw MalformedInput("permutation degree differs from target n");
      }
      map.emplace(domain, std::move(perms));
    } else {
      std::vector<UnitaryMatrix> mats;
      for (const auto* v : slots) {
        mats.push_back(UnitaryMatrix::from_json(*v));
        if (mats.back().rank() != n) throw MalformedInput("matrix rank differs from target n");
      }
      map.emplace(domain, std::move(mats));
    }
    Certificate cert{std::move(*map), doc.at("claimed_defect").get<double>(),
                     doc.at("claimed_separation").get<double>(), doc.value("provenance", std::string{})};
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("bad certificate: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw MalformedInput(std::string("bad certificate: ") + e.what());
  }
}

Certificate Certificate::parse(std::string_view text, const Limits& limits) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("certificate is not valid JSON: ") + e.what());
  }
  return from_json(doc, limits);
}

Certificate certify(AlmostHom map, std::string provenance) {
  const Measurement d = defect(map);
  const Measurement s = separation(map);
  const double eps = d.value + 1e-9;
  const double delta = s.exact ? s.value : std::max(0.0, s.value - 1e-9);
  if (!provenance.empty()) provenance += "; ";
  provenance += "verify: eps=" + format_double(eps) + " delta=" + format_double(delta);
  return Certificate{std::move(map), d.value, s.value, std::move(provenance)};
}

std::optional<VerifyParameters> recorded_verify_parameters(std::string_view provenance) {
  const auto at = provenance.rfind("verify: eps=");
  if (at == std::string_view::npos) return std::nullopt;
  const std::string tail(provenance.substr(at + std::string_view("verify: eps=").size()));
  char* end = nullptr;
  VerifyParameters p;
  p.eps = std::strtod(tail.c_str(), &end);
  const std::string rest(end);
  const auto d = rest.find("delta=");
  if (end == tail.c_str() || d == std::string::npos) return std::nullopt;
  p.delta = std::strtod(rest.c_str() + d + 6, nullptr);
  return p;
}

VerificationReport verify(const Certificate& cert, double eps, double delta) {
  VerificationReport r = verify(cert.map, eps, delta);
  r.claims_reproduced = std::abs(r.defect.value - cert.claimed_defect) <= 1e-9 &&
                        std::abs(r.separation.value - cert.claimed_separation) <= 1e-9;
  return r;
}

}  // namespace sofic
