#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>

#include "sofic/almost_hom.hpp"
#include "sofic/ball.hpp"
#include "sofic/certificate.hpp"
#include "sofic/folner.hpp"
#include "sofic/group.hpp"
#include "sofic/limits.hpp"

namespace sofic {

// For each ball element g, the partial map x -> g x on {x in Phi : g x in Phi}
// extended to a bijection of Phi by pairing the unmatched domain points with
// the unmatched codomain points in canonical order.
AlmostHom folner_to_sofic(std::shared_ptr<const BallTable> domain, const FolnerSet& phi);

// Composes a local monomorphism ball -> group (mono[i] is the image of ball
// element i) with the left-regular representation. Throws InvalidArgument
// naming a counterexample when mono is not injective or not multiplicative on
// the defined products.
AlmostHom lef_to_sofic(std::shared_ptr<const BallTable> domain, const FiniteGroup& group,
                       std::span<const std::uint32_t> mono);

// Ball of F_2 of the given radius mapped through SL(2, Z_p) and its regular
// representation, with p = lef_witness_free(witness_radius). witness_radius
// defaults to the ball radius; larger values make the equality pattern of
// bigger balls faithful as well.
Certificate free_sofic_certificate(int radius, const Limits& limits = {}, int witness_radius = 0);

// Box Folner set of `side` for zpower or heisenberg, pushed through
// folner_to_sofic on the ball of the given radius.
Certificate folner_certificate(std::shared_ptr<const GroupBackend> backend, int side, int radius,
                               const Limits& limits = {});

// The ball of Z mapped into Z_m by reduction, then into S_m.
Certificate cyclic_lef_certificate(int radius, std::uint32_t modulus, const Limits& limits = {});

// A finite group ball mapped by the identity into the group's regular
// representation.
Certificate finite_certificate(const FiniteGroup& group, int radius, const Limits& limits = {});

// Permutation matrices of a sym-target map. Throws ResourceLimitExceeded when
// the degree exceeds limits.max_matrix_rank.
AlmostHom sofic_to_hyperlinear(const AlmostHom& j, const Limits& limits = {});
Certificate sofic_to_hyperlinear(const Certificate& cert, const Limits& limits = {});

// Applies tensor_square `times` times to every image of a unitary map.
// Throws ResourceLimitExceeded when n^(2^times) exceeds limits.max_matrix_rank.
AlmostHom amplify(const AlmostHom& j, int times, const Limits& limits = {});
Certificate amplify_certificate(const Certificate& cert, int times, const Limits& limits = {});

// Provenance without the trailing parameters recorded by certify().
std::string strip_verify_parameters(std::string provenance);

}  // namespace sofic
