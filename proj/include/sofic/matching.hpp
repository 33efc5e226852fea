#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "json.hpp"

namespace sofic {

// Finite bipartite graph (A, B, E) with per-left-vertex neighbour lists.
// Lists are sorted and deduplicated on construction.
class BipartiteGraph {
 public:
  BipartiteGraph(std::size_t left, std::size_t right, std::vector<std::vector<std::uint32_t>> adjacency);

  std::size_t left_count() const { return left_; }
  std::size_t right_count() const { return right_; }
  const std::vector<std::uint32_t>& neighbors(std::size_t a) const { return adjacency_[a]; }
  bool has_edge(std::size_t a, std::uint32_t b) const;

  // Gamma(X): the right vertices adjacent to some vertex of X, sorted.
  std::vector<std::uint32_t> neighborhood(const std::vector<std::uint32_t>& subset) const;

  // {"left": |A|, "right": |B|, "adjacency": [[b, ...], ...]}
  nlohmann::json to_json() const;
  static BipartiteGraph from_json(const nlohmann::json& doc);

 private:
  std::size_t left_;
  std::size_t right_;
  std::vector<std::vector<std::uint32_t>> adjacency_;
};

// Two injections A -> B along edges with disjoint images.
struct TwoOneMatching {
  std::vector<std::uint32_t> i;
  std::vector<std::uint32_t> j;
};

// A subset X of A with |Gamma(X)| < 2|X|.
struct DeficiencyWitness {
  std::vector<std::uint32_t> subset;
  std::vector<std::uint32_t> neighborhood;
};

using MatchingResult = std::variant<TwoOneMatching, DeficiencyWitness>;

// Max-flow reduction: source -> a (capacity 2), a -> b (1), b -> sink (1),
// Edmonds-Karp with augmenting paths found by lowest-index BFS. A matching
// exists iff the flow is 2|A|; otherwise the source side of the minimum cut
// restricted to A is the witness.
MatchingResult two_one_matching(const BipartiteGraph& graph);

bool is_valid_matching(const BipartiteGraph& graph, const TwoOneMatching& m);
bool violates_hall(const BipartiteGraph& graph, const DeficiencyWitness& w);

nlohmann::json matching_result_json(const MatchingResult& result);

}  // namespace sofic
