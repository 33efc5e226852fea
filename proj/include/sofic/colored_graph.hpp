#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "sofic/almost_hom.hpp"
#include "sofic/ball.hpp"
#include "sofic/group.hpp"
#include "sofic/limits.hpp"
#include "sofic/rational.hpp"

namespace sofic {

// A directed graph whose edges are coloured by the positive generators. Each
// colour is a partial injective successor map; the inverse colour follows the
// same edges backwards.
class ColoredGraph {
 public:
  static constexpr std::int64_t kNoEdge = -1;

  // successors[c][m] is the target of the colour-c edge leaving m, or kNoEdge.
  // Throws MalformedInput for out-of-range targets or two edges of one colour
  // entering the same vertex.
  ColoredGraph(std::size_t vertex_count, std::vector<std::string> colors,
               std::vector<std::vector<std::int64_t>> successors);

  std::size_t vertex_count() const { return vertex_count_; }
  const std::vector<std::string>& colors() const { return colors_; }
  std::size_t color_count() const { return colors_.size(); }
  std::int64_t successor(std::size_t color, std::size_t vertex) const { return successors_[color][vertex]; }
  std::int64_t predecessor(std::size_t color, std::size_t vertex) const { return predecessors_[color][vertex]; }
  // Follows a signed letter (+c forward along colour c-1, -c backward).
  std::int64_t step(std::size_t vertex, Letter letter) const;
  bool is_total() const;
  std::size_t edge_count() const;

  // {"vertexCount": n, "colors": [...], "successors": [[k or null, ...], ...]}
  nlohmann::json to_json() const;
  static ColoredGraph from_json(const nlohmann::json& doc);
  std::string to_dot() const;

 private:
  std::size_t vertex_count_;
  std::vector<std::string> colors_;
  std::vector<std::vector<std::int64_t>> successors_;
  std::vector<std::vector<std::int64_t>> predecessors_;
};

// Vertices are the ball elements; colour v joins g to g v when both lie in the ball.
ColoredGraph cayley_ball_graph(const GroupBackend& backend, int radius, const Limits& limits = {});

// Vertices 0..n-1 with successor_v = j(v). Requires a sym target and radius >= 1.
ColoredGraph cert_to_graph(const AlmostHom& j);

struct LocalMatchReport {
  int radius = 0;
  std::size_t matched = 0;
  std::size_t total = 0;
  Rational fraction{0};
  std::vector<std::pair<std::size_t, std::string>> sample_failures;
  nlohmann::json to_json() const;
};

// A vertex m matches when every reduced word of length <= N can be followed
// from m and two words reach the same vertex iff they are equal in the
// reference ball. The reference radius must equal N and its alphabet must
// match the graph colours.
LocalMatchReport local_match_fraction(const ColoredGraph& graph, int radius, const BallTable& reference,
                                      std::size_t max_samples = 10);

struct GraphAlmostHom {
  AlmostHom map;
  // True when partial successors were completed by canonical-order fill.
  bool filled = false;
};

// Maps each reference element to the product of successor permutations along
// its stored shortlex spelling: j(l1 ... lk) = s(l1) ... s(lk).
GraphAlmostHom graph_to_almosthom(const ColoredGraph& graph, std::shared_ptr<const BallTable> reference);

}  // namespace sofic
