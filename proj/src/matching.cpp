#include "sofic/matching.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "sofic/errors.hpp"

namespace sofic {

BipartiteGraph::BipartiteGraph(std::size_t left, std::size_t right, std::vector<std::vector<std::uint32_t>> adjacency)
    : left_(left), right_(right), adjacency_(std::move(adjacency)) {
  if (adjacency_.size() != left_) throw MalformedInput("adjacency must have one list per left vertex");
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    if (!list.empty() && list.back() >= right_) throw MalformedInput("neighbour index out of range");
  }
}

bool BipartiteGraph::has_edge(std::size_t a, std::uint32_t b) const {
  return a < left_ && std::binary_search(adjacency_[a].begin(), adjacency_[a].end(), b);
}

std::vector<std::uint32_t> BipartiteGraph::neighborhood(const std::vector<std::uint32_t>& subset) const {
  std::vector<bool> hit(right_, false);
  for (std::uint32_t a : subset) {
    for (std::uint32_t b : adjacency_.at(a)) hit[b] = true;
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t b = 0; b < right_; ++b) {
    if (hit[b]) out.push_back(b);
  }
  return out;
}

nlohmann::json BipartiteGraph::to_json() const {
  return {{"left", left_}, {"right", right_}, {"adjacency", adjacency_}};
}

BipartiteGraph BipartiteGraph::from_json(const nlohmann::json& doc) {
  try {
    return BipartiteGraph(doc.at("left").get<std::size_t>(), doc.at("right").get<std::size_t>(),
                          doc.at("adjacency").get<std::vector<std::vector<std::uint32_t>>>());
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("bad bipartite graph document: ") + e.what());
  }
}

namespace {

class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t nodes) : out_(nodes) {}

  void add_edge(std::size_t from, std::size_t to, int capacity) {
    out_[from].push_back(edges_.size());
    edges_.push_back({to, capacity});
    out_[to].push_back(edges_.size());
    edges_.push_back({from, 0});
  }

  int max_flow(std::size_t source, std::size_t sink) {
    int total = 0;
    std::vector<std::size_t> via(out_.size());
    while (true) {
      std::vector<bool> seen(out_.size(), false);
      std::deque<std::size_t> queue{source};
      seen[source] = true;
      while (!queue.empty() && !seen[sink]) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t e : out_[u]) {
          const std::size_t v = edges_[e].to;
          if (!seen[v] && edges_[e].capacity > 0) {
            seen[v] = true;
            via[v] = e;
            queue.push_back(v);
          }
        }
      }
      if (!seen[sink]) return total;
      int bottleneck = std::numeric_limits<int>::max();
      for (std::size_t v = sink; v != source; v = edges_[via[v] ^ 1].to) {
        bottleneck = std::min(bottleneck, edges_[via[v]].capacity);
      }
      for (std::size_t v = sink; v != source; v = edges_[via[v] ^ 1].to) {
        edges_[via[v]].capacity -= bottleneck;
        edges_[via[v] ^ 1].capacity += bottleneck;
      }
      total += bottleneck;
    }
  }

  // Nodes reachable from source in the residual network.
  std::vector<bool> reachable(std::size_t source) const {
    std::vector<bool> seen(out_.size(), false);
    std::deque<std::size_t> queue{source};
    seen[source] = true;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t e : out_[u]) {
        if (!seen[edges_[e].to] && edges_[e].capacity > 0) {
          seen[edges_[e].to] = true;
          queue.push_back(edges_[e].to);
        }
      }
    }
    return seen;
  }

  const std::vector<std::size_t>& out(std::size_t u) const { return out_[u]; }
  std::size_t target(std::size_t e) const { return edges_[e].to; }
  // Forward edges are even; their flow is the residual of the reverse edge.
  int flow(std::size_t e) const { return edges_[e ^ 1].capacity; }

 private:
  struct Edge {
    std::size_t to;
    int capacity;
  };
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
};

}  // namespace

MatchingResult two_one_matching(const BipartiteGraph& graph) {
  const std::size_t A = graph.left_count();
  const std::size_t B = graph.right_count();
  const std::size_t source = 0;
  const std::size_t sink = A + B + 1;
  auto left_node = [](std::size_t a) { return 1 + a; };
  auto right_node = [A](std::size_t b) { return 1 + A + b; };

  FlowNetwork net(A + B + 2);
  for (std::size_t a = 0; a < A; ++a) net.add_edge(source, left_node(a), 2);
  for (std::size_t a = 0; a < A; ++a) {
    for (std::uint32_t b : graph.neighbors(a)) net.add_edge(left_node(a), right_node(b), 1);
  }
  for (std::size_t b = 0; b < B; ++b) net.add_edge(right_node(b), sink, 1);

  const int flow = net.max_flow(source, sink);
  if (static_cast<std::size_t>(flow) == 2 * A) {
    TwoOneMatching m;
    m.i.resize(A);
    m.j.resize(A);
    for (std::size_t a = 0; a < A; ++a) {
      std::vector<std::uint32_t> matched;
      for (std::size_t e : net.out(left_node(a))) {
        if (e % 2 == 0 && net.flow(e) > 0) matched.push_back(static_cast<std::uint32_t>(net.target(e) - 1 - A));
      }
      std::sort(matched.begin(), matched.end());
      m.i[a] = matched.at(0);
      m.j[a] = matched.at(1);
    }
    return m;
  }
  const auto side = net.reachable(source);
  DeficiencyWitness w;
  for (std::size_t a = 0; a < A; ++a) {
    if (side[left_node(a)]) w.subset.push_back(static_cast<std::uint32_t>(a));
  }
  w.neighborhood = graph.neighborhood(w.subset);
  return w;
}

bool is_valid_matching(const BipartiteGraph& graph, const TwoOneMatching& m) {
  const std::size_t A = graph.left_count();
  if (m.i.size() != A || m.j.size() != A) return false;
  std::vector<bool> used(graph.right_count(), false);
  for (std::size_t a = 0; a < A; ++a) {
    for (std::uint32_t b : {m.i[a], m.j[a]}) {
      if (b >= graph.right_count() || used[b] || !graph.has_edge(a, b)) return false;
      used[b] = true;
    }
  }
  return true;
}

bool violates_hall(const BipartiteGraph& graph, const DeficiencyWitness& w) {
  if (w.subset.empty()) return false;
  for (std::uint32_t a : w.subset) {
    if (a >= graph.left_count()) return false;
  }
  return graph.neighborhood(w.subset).size() < 2 * w.subset.size();
}

nlohmann::json matching_result_json(const MatchingResult& result) {
  if (const auto* m = std::get_if<TwoOneMatching>(&result)) {
    return {{"feasible", true}, {"i", m->i}, {"j", m->j}};
  }
  const auto& w = std::get<DeficiencyWitness>(result);
  return {{"feasible", false}, {"witness", w.subset}, {"neighborhood", w.neighborhood}};
}

}  // namespace sofic
