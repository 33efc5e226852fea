#include "sofic/limits.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

namespace sofic {
namespace {

template <class T>
void read_env(const char* name, T& value) {
  const char* raw = std::getenv(name);
  if (raw == nullptr) return;
  const std::string_view text(raw);
  T parsed{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), parsed);
  if (ec == std::errc{} && end == text.data() + text.size() && parsed > 0) value = parsed;
}

}  // namespace

Limits Limits::from_environment() {
  Limits limits;
  read_env("SOFIC_BALL_CAP", limits.max_ball_elements);
  read_env("SOFIC_RANK_CAP", limits.max_matrix_rank);
  read_env("SOFIC_GROUP_ORDER_CAP", limits.max_finite_order);
  read_env("SOFIC_PRIME_CEILING", limits.prime_ceiling);
  return limits;
}

}  // namespace sofic
