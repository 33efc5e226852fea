#include "sofic/colored_graph.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "sofic/errors.hpp"

namespace sofic {

ColoredGraph::ColoredGraph(std::size_t vertex_count, std::vector<std::string> colors,
                           std::vector<std::vector<std::int64_t>> successors)
    : vertex_count_(vertex_count), colors_(std::move(colors)), successors_(std::move(successors)) {
  if (colors_.empty()) throw MalformedInput("graph needs at least one colour");
  if (successors_.size() != colors_.size()) throw MalformedInput("one successor list per colour required");
  predecessors_.assign(colors_.size(), std::vector<std::int64_t>(vertex_count_, kNoEdge));
  for (std::size_t c = 0; c < colors_.size(); ++c) {
    if (successors_[c].size() != vertex_count_) throw MalformedInput("successor list has the wrong length");
    for (std::size_t m = 0; m < vertex_count_; ++m) {
      const std::int64_t k = successors_[c][m];
      if (k == kNoEdge) continue;
      if (k < 0 || static_cast<std::size_t>(k) >= vertex_count_) throw MalformedInput("edge target out of range");
      if (predecessors_[c][k] != kNoEdge) {
        throw MalformedInput("colour " + colors_[c] + " has two edges into vertex " + std::to_string(k));
      }
      predecessors_[c][k] = static_cast<std::int64_t>(m);
    }
  }
}

std::int64_t ColoredGraph::step(std::size_t vertex, Letter letter) const {
  return letter > 0 ? successors_[letter - 1][vertex] : predecessors_[-letter - 1][vertex];
}

bool ColoredGraph::is_total() const {
  for (const auto& s : successors_) {
    for (std::int64_t k : s) {
      if (k == kNoEdge) return false;
    }
  }
  return true;
}

std::size_t ColoredGraph::edge_count() const {
  std::size_t count = 0;
  for (const auto& s : successors_) {
    for (std::int64_t k : s) count += k != kNoEdge;
  }
  return count;
}

nlohmann::json ColoredGraph::to_json() const {
  nlohmann::json succ = nlohmann::json::array();
  for (const auto& s : successors_) {
    nlohmann::json list = nlohmann::json::array();
    for (std::int64_t k : s) list.push_back(k == kNoEdge ? nlohmann::json(nullptr) : nlohmann::json(k));
    succ.push_back(std::move(list));
  }
  return {{"vertexCount", vertex_count_}, {"colors", colors_}, {"successors", succ}};
}

ColoredGraph ColoredGraph::from_json(const nlohmann::json& doc) {
  try {
    const auto n = doc.at("vertexCount").get<std::size_t>();
    auto colors = doc.at("colors").get<std::vector<std::string>>();
    std::vector<std::vector<std::int64_t>> succ;
    for (const auto& list : doc.at("successors")) {
      std::vector<std::int64_t> row;
      for (const auto& k : list) row.push_back(k.is_null() ? kNoEdge : k.get<std::int64_t>());
      succ.push_back(std::move(row));
    }
    return ColoredGraph(n, std::move(colors), std::move(succ));
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("bad graph document: ") + e.what());
  }
}

std::string ColoredGraph::to_dot() const {
  static const char* kPalette[] = {"red", "blue", "darkgreen", "orange", "purple", "brown", "cyan", "magenta"};
  std::ostringstream out;
  out << "digraph G {\n";
  for (std::size_t m = 0; m < vertex_count_; ++m) out << "  " << m << ";\n";
  for (std::size_t c = 0; c < colors_.size(); ++c) {
    for (std::size_t m = 0; m < vertex_count_; ++m) {
      if (successors_[c][m] == kNoEdge) continue;
      out << "  " << m << " -> " << successors_[c][m] << " [label=\"" << colors_[c] << "\", color=\""
          << kPalette[c % 8] << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

ColoredGraph cayley_ball_graph(const GroupBackend& backend, int radius, const Limits& limits) {
  if (radius < 1) throw InvalidArgument("Cayley ball graph needs radius >= 1");
  const BallTable b = ball(backend, radius, limits);
  std::vector<std::vector<std::int64_t>> succ(backend.rank(), std::vector<std::int64_t>(b.size(), ColoredGraph::kNoEdge));
  for (int c = 0; c < backend.rank(); ++c) {
    const std::size_t v = *b.letter_index(c + 1);
    for (std::size_t g = 0; g < b.size(); ++g) {
      if (auto gv = b.product(g, v)) succ[c][g] = static_cast<std::int64_t>(*gv);
    }
  }
  return ColoredGraph(b.size(), backend.alphabet().names(), std::move(succ));
}

ColoredGraph cert_to_graph(const AlmostHom& j) {
  const BallTable& b = j.domain();
  if (b.radius() < 1) throw InvalidArgument("certificate ball must contain the generators");
  const auto& perms = j.permutations();
  const int rank = b.backend().rank();
  std::vector<std::vector<std::int64_t>> succ(rank);
  for (int c = 0; c < rank; ++c) {
    const auto v = b.letter_index(c + 1);
    if (!v) throw InvalidArgument("generator missing from the certificate ball");
    for (std::uint32_t k : perms[*v].images()) succ[c].push_back(k);
  }
  return ColoredGraph(j.degree(), b.backend().alphabet().names(), std::move(succ));
}

namespace {

void check_alphabet(const ColoredGraph& graph, const BallTable& reference) {
  if (graph.colors() != reference.backend().alphabet().names()) {
    throw InvalidArgument("graph colours do not match the reference alphabet");
  }
}

}  // namespace

LocalMatchReport local_match_fraction(const ColoredGraph& graph, int radius, const BallTable& reference,
                                      std::size_t max_samples) {
  check_alphabet(graph, reference);
  if (radius < 0 || reference.radius() != radius) throw InvalidArgument("reference ball radius must equal N");
  const auto letters = reference.backend().alphabet().signed_letters();
  std::vector<std::size_t> letter_idx;
  for (Letter l : letters) letter_idx.push_back(reference.letter_index(l).value_or(0));

  LocalMatchReport report;
  report.radius = radius;
  report.total = graph.vertex_count();

  constexpr std::int64_t kUnseen = -1;
  std::vector<std::int64_t> vertex_of(reference.size(), kUnseen);
  std::unordered_map<std::int64_t, std::size_t> element_of;
  struct Frame {
    std::int64_t vertex;
    std::size_t element;
    Letter last;
    int depth;
  };
  std::vector<Frame> stack;
  for (std::size_t m = 0; m < graph.vertex_count(); ++m) {
    std::fill(vertex_of.begin(), vertex_of.end(), kUnseen);
    element_of.clear();
    std::string reason;
    stack.assign(1, Frame{static_cast<std::int64_t>(m), 0, 0, 0});
    while (!stack.empty() && reason.empty()) {
      const Frame f = stack.back();
      stack.pop_back();
      if (vertex_of[f.element] == kUnseen) {
        if (auto it = element_of.find(f.vertex); it != element_of.end()) {
          reason = "distinct elements \"" + reference.backend().alphabet().format(reference.word(it->second)) +
                   "\" and \"" + reference.backend().alphabet().format(reference.word(f.element)) +
                   "\" reach one vertex";
          break;
        }
        vertex_of[f.element] = f.vertex;
        element_of.emplace(f.vertex, f.element);
      } else if (vertex_of[f.element] != f.vertex) {
        reason = "equal words for \"" + reference.backend().alphabet().format(reference.word(f.element)) +
                 "\" reach different vertices";
        break;
      }
      if (f.depth == radius) continue;
      for (std::size_t li = 0; li < letters.size(); ++li) {
        const Letter l = letters[li];
        if (l == -f.last) continue;
        const std::int64_t next = graph.step(static_cast<std::size_t>(f.vertex), l);
        if (next == ColoredGraph::kNoEdge) {
          reason = "missing edge " + reference.backend().alphabet().letter_name(l) + " at depth " +
                   std::to_string(f.depth);
          break;
        }
        const auto e = reference.product(f.element, letter_idx[li]);
        if (!e) throw Error("reference ball is not closed under words of length <= N");
        stack.push_back(Frame{next, *e, l, f.depth + 1});
      }
    }
    if (reason.empty()) {
      ++report.matched;
    } else if (report.sample_failures.size() < max_samples) {
      report.sample_failures.emplace_back(m, reason);
    }
  }
  report.fraction = report.total == 0 ? Rational(0)
                                      : Rational(static_cast<std::int64_t>(report.matched),
                                                 static_cast<std::int64_t>(report.total));
  return report;
}

nlohmann::json LocalMatchReport::to_json() const {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& [v, reason] : sample_failures) failures.push_back({{"vertex", v}, {"reason", reason}});
  return {{"radius", radius},
          {"matched", matched},
          {"total", total},
          {"fraction", sofic::to_string(fraction)},
          {"fractionValue", to_double(fraction)},
          {"sampleFailures", failures}};
}

GraphAlmostHom graph_to_almosthom(const ColoredGraph& graph, std::shared_ptr<const BallTable> reference) {
  check_alphabet(graph, *reference);
  const std::size_t n = graph.vertex_count();
  bool filled = false;
  std::vector<Permutation> generators;
  for (std::size_t c = 0; c < graph.color_count(); ++c) {
    std::vector<std::uint32_t> images(n);
    std::size_t free_target = 0;
    for (std::size_t m = 0; m < n; ++m) {
      const std::int64_t k = graph.successor(c, m);
      if (k != ColoredGraph::kNoEdge) {
        images[m] = static_cast<std::uint32_t>(k);
        continue;
      }
      filled = true;
      while (graph.predecessor(c, free_target) != ColoredGraph::kNoEdge) ++free_target;
      images[m] = static_cast<std::uint32_t>(free_target++);
    }
    generators.emplace_back(std::move(images));
  }
  std::vector<Permutation> inverses;
  for (const auto& s : generators) inverses.push_back(s.inverse());

  std::vector<Permutation> images;
  images.reserve(reference->size());
  for (std::size_t i = 0; i < reference->size(); ++i) {
    Permutation p = Permutation::identity(n);
    for (Letter l : reference->word(i)) p = p * (l > 0 ? generators[l - 1] : inverses[-l - 1]);
    images.push_back(std::move(p));
  }
  return GraphAlmostHom{AlmostHom(std::move(reference), std::move(images)), filled};
}

}  // namespace sofic
