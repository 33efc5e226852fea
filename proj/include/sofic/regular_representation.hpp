#pragma once

#include <vector>

#include "sofic/group.hpp"
#include "sofic/permutation.hpp"

namespace sofic {

// Left-regular embedding g -> (i -> g * element_i) of a finite group into S_m,
// indexed by element.
std::vector<Permutation> regular_representation(const FiniteGroup& group);

Permutation regular_image(const FiniteGroup& group, std::uint32_t element);

}  // namespace sofic
