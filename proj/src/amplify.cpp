#include "sofic/amplify.hpp"

#include <algorithm>
#include <cmath>

#include "sofic/errors.hpp"
#include "sofic/kernels.hpp"

namespace sofic {

UnitaryMatrix tensor_square(const UnitaryMatrix& u) {
  const double err = u.unitarity_error();
  if (!(err <= u.tolerance())) {
    throw MalformedInput("tensor_square input is not unitary: max|u*u - I| = " + std::to_string(err));
  }
  const std::size_t n = u.rank();
  const std::size_t m = n * n;
  std::vector<Complex> out(m * m);
  // (u E_ij u*)_kl = u_ki conj(u_lj): column (i, j), row (k, l).
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      Complex* row = out.data() + (k * n + l) * m;
      for (std::size_t i = 0; i < n; ++i) {
        const Complex uki = u(k, i);
        for (std::size_t j = 0; j < n; ++j) row[i * n + j] = uki * std::conj(u(l, j));
      }
    }
  }
  return UnitaryMatrix::trusted(m, std::move(out), 10.0 * u.tolerance());
}

double amplified_distance(double d) {
  if (!(d >= 0.0) || d > 2.0 + 1e-9) {
    throw InvalidArgument("amplified_distance needs d in [0, 2], got " + std::to_string(d));
  }
  if (d > 2.0) d = 2.0;
  return d * std::sqrt(std::max(0.0, 2.0 - d * d / 2.0));
}

std::vector<double> iterate_amplification(double d0, int k) {
  if (k < 1) throw InvalidArgument("orbit length must be positive");
  if (d0 == 0.0) throw InvalidArgument("d0 = 0 is a fixed point of the amplification map");
  if (d0 == 2.0) throw InvalidArgument("d0 = 2 collapses to 0 under amplification");
  if (!(d0 > 0.0 && d0 < 2.0)) throw InvalidArgument("d0 must lie in (0, 2)");
  std::vector<double> orbit{d0};
  while (static_cast<int>(orbit.size()) < k) orbit.push_back(amplified_distance(orbit.back()));
  return orbit;
}

std::optional<int> steps_to_sqrt2(double d0, double tolerance, int max_steps) {
  const auto orbit = iterate_amplification(d0, max_steps);
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    if (std::abs(orbit[i] - std::sqrt(2.0)) < tolerance) return static_cast<int>(i);
  }
  return std::nullopt;
}

UnitaryMatrix halve_embed(const UnitaryMatrix& u) {
  const std::size_t n = u.rank();
  const std::size_t m = 2 * n;
  std::vector<Complex> out(m * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i * m + j] = u(i, j);
    out[(n + i) * m + (n + i)] = 1.0;
  }
  return UnitaryMatrix::trusted(m, std::move(out), u.tolerance());
}

double tensor_square_distance(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  if (u.rank() != v.rank()) throw InvalidArgument("rank mismatch in tensor_square_distance");
  const Complex t = kernels::active().conj_dot(u.entries(), v.entries()) / static_cast<double>(u.rank());
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * std::norm(t)));
}

double iterated_tensor_square_distance(const UnitaryMatrix& u, const UnitaryMatrix& v, int times) {
  if (times < 1) throw InvalidArgument("amplification count must be positive");
  double d = tensor_square_distance(u, v);
  for (int t = 1; t < times; ++t) d = amplified_distance(d);
  return d;
}

double AmplificationReport::max_trace_error() const {
  double worst = 0.0;
  for (const auto& p : pairs) worst = std::max(worst, std::abs(p.d_trace - p.d_measured));
  return worst;
}

double AmplificationReport::max_error() const {
  double worst = 0.0;
  for (const auto& p : pairs) worst = std::max(worst, std::abs(p.d_predicted - p.d_measured));
  return worst;
}

nlohmann::json AmplificationReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& p : pairs) {
    rows.push_back({{"d_in", p.d_in}, {"d_predicted", p.d_predicted}, {"d_measured", p.d_measured}, {"d_trace", p.d_trace}});
  }
  return {{"inputRank", input_rank}, {"outputRank", output_rank}, {"times", times},
          {"pairs", rows},           {"maxError", max_error()}, {"maxTraceError", max_trace_error()}};
}

AmplificationReport amplification_report(std::span<const UnitaryMatrix> matrices, int times) {
  if (times < 1) throw InvalidArgument("amplification count must be positive");
  AmplificationReport report;
  report.times = times;
  if (matrices.empty()) return report;
  report.input_rank = matrices.front().rank();
  std::vector<UnitaryMatrix> amplified(matrices.begin(), matrices.end());
  for (int t = 0; t < times; ++t) {
    for (auto& m : amplified) m = tensor_square(m);
  }
  report.output_rank = amplified.front().rank();
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    for (std::size_t j = i + 1; j < matrices.size(); ++j) {
      AmplificationPair p;
      p.d_in = hs_distance(matrices[i], matrices[j]);
      p.d_predicted = p.d_in;
      for (int t = 0; t < times; ++t) p.d_predicted = amplified_distance(p.d_predicted);
      p.d_measured = hs_distance(amplified[i], amplified[j]);
      p.d_trace = iterated_tensor_square_distance(matrices[i], matrices[j], times);
      report.pairs.push_back(p);
    }
  }
  return report;
}

}  // namespace sofic
