#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "sofic/group.hpp"
#include "sofic/limits.hpp"
#include "sofic/matching.hpp"
#include "sofic/word.hpp"

namespace sofic {

// The five pieces of F_2 = {e} | W(a) | W(a') | W(b) | W(b'), where W(x) is
// the set of reduced words whose first letter is x.
enum class Piece { kE = 0, kWA, kWAinv, kWB, kWBinv };

std::string piece_name(Piece p);

// Throws InvalidArgument for unreduced words or letters outside rank 2.
Piece paradox_classify(std::span<const Letter> word);

struct ParadoxReport {
  int radius = 0;
  std::size_t words = 0;
  std::array<std::size_t, 5> piece_sizes{};
  bool partition_ok = false;
  // F_2 = W(a) | a W(a') and F_2 = W(b) | b W(b'), checked word by word.
  bool identity_a = false;
  bool identity_b = false;
  std::optional<Word> first_failure;
  bool ok() const { return partition_ok && identity_a && identity_b; }
  nlohmann::json to_json() const;
};

ParadoxReport paradox_verify(int radius, const Limits& limits = {});

// One nonempty piece Omega_{s,t} = {g : i(g) = s g, j(g) = t g}; s and t are
// ball indices of B_k.
struct ParadoxPiece {
  std::size_t s = 0;
  std::size_t t = 0;
  std::vector<std::size_t> members;
};

struct MatchingParadoxReport {
  int radius = 0;
  int k = 0;
  std::size_t left = 0;
  std::size_t right = 0;
  bool feasible = false;
  std::vector<ParadoxPiece> pieces;
  bool covers = false;
  bool disjoint = false;
  // Elements of B_N with at least one match outside B_N.
  std::size_t leakage = 0;
  std::optional<DeficiencyWitness> witness;
  // Shortlex words of the ball elements, for formatting.
  std::vector<std::string> left_words;
  std::vector<std::string> right_words;
  std::vector<std::string> move_words;
  nlohmann::json to_json() const;
};

// Bipartite graph A = B_N, B = B_{N+k}, edges g -> x g for x in B_k, solved by
// two_one_matching. F = B_1, so F^k = B_k.
MatchingParadoxReport paradox_from_matching(int radius, int k, const GroupBackend& backend = GroupBackend::free(2),
                                            const Limits& limits = {});

}  // namespace sofic
