#pragma once

#include <cstddef>
#include <cstdint>

namespace sofic {

// Resource caps shared by the enumeration and construction routines.
struct Limits {
  std::size_t max_ball_elements = 1'000'000;
  std::size_t max_matrix_rank = 256;
  std::size_t max_finite_order = 2048;
  std::uint64_t prime_ceiling = 10'000;
  int max_amplification_steps = 200;

  // Reads SOFIC_BALL_CAP, SOFIC_RANK_CAP, SOFIC_GROUP_ORDER_CAP and
  // SOFIC_PRIME_CEILING; unset or unparsable variables keep the defaults.
  static Limits from_environment();
};

}  // namespace sofic
