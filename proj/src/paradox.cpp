#include "sofic/paradox.hpp"

#include <map>
#include <memory>
#include <utility>

#include "sofic/ball.hpp"
#include "sofic/errors.hpp"

namespace sofic {

std::string piece_name(Piece p) {
  switch (p) {
    case Piece::kE: return "E";
    case Piece::kWA: return "WA";
    case Piece::kWAinv: return "WAinv";
    case Piece::kWB: return "WB";
    case Piece::kWBinv: return "WBinv";
  }
  return "?";
}

Piece paradox_classify(std::span<const Letter> word) {
  for (Letter l : word) {
    if (l == 0 || l < -2 || l > 2) throw InvalidArgument("paradox words must be over a rank-2 alphabet");
  }
  if (!is_reduced(word)) throw InvalidArgument("paradox_classify needs a reduced word");
  if (word.empty()) return Piece::kE;
  switch (word.front()) {
    case 1: return Piece::kWA;
    case -1: return Piece::kWAinv;
    case 2: return Piece::kWB;
    default: return Piece::kWBinv;
  }
}

namespace {

Word left_multiply(Letter x, const Word& w) {
  Word out{x};
  out.insert(out.end(), w.begin(), w.end());
  return reduce(out, 2);
}

// Exactly one of w in W(x), x^-1 w in W(x^-1).
bool identity_holds(const Word& w, Letter x) {
  const bool in_first = !w.empty() && w.front() == x;
  const Word shifted = left_multiply(-x, w);
  const bool in_second = !shifted.empty() && shifted.front() == -x;
  return in_first != in_second;
}

}  // namespace

ParadoxReport paradox_verify(int radius, const Limits& limits) {
  if (radius < 1) throw InvalidArgument("paradox_verify needs radius >= 1");
  const BallTable b = ball(GroupBackend::free(2), radius, limits);
  ParadoxReport report;
  report.radius = radius;
  report.words = b.size();
  report.identity_a = true;
  report.identity_b = true;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Word& w = b.word(i);
    ++report.piece_sizes[static_cast<std::size_t>(paradox_classify(w))];
    const bool a_ok = identity_holds(w, 1);
    const bool b_ok = identity_holds(w, 2);
    if ((!a_ok || !b_ok) && !report.first_failure) report.first_failure = w;
    report.identity_a = report.identity_a && a_ok;
    report.identity_b = report.identity_b && b_ok;
  }
  std::size_t total = 0;
  for (std::size_t s : report.piece_sizes) total += s;
  report.partition_ok = total == b.size() && report.piece_sizes[0] == 1;
  return report;
}

nlohmann::json ParadoxReport::to_json() const {
  nlohmann::json sizes;
  for (std::size_t p = 0; p < piece_sizes.size(); ++p) sizes[piece_name(static_cast<Piece>(p))] = piece_sizes[p];
  nlohmann::json doc{{"radius", radius},         {"words", words},           {"pieceSizes", sizes},
                     {"partition", partition_ok}, {"identityA", identity_a}, {"identityB", identity_b},
                     {"ok", ok()}};
  if (first_failure) doc["firstFailure"] = GeneratorAlphabet::standard(2).format(*first_failure);
  return doc;
}

MatchingParadoxReport paradox_from_matching(int radius, int k, const GroupBackend& backend, const Limits& limits) {
  if (radius < 0 || k < 1) throw InvalidArgument("paradox_from_matching needs radius >= 0 and k >= 1");
  auto shared = std::make_shared<const GroupBackend>(backend);
  const BallTable inner = ball(shared, radius, limits);
  const BallTable outer = ball(shared, radius + k, limits);
  const BallTable moves = ball(shared, k, limits);

  // Every element of B_N appears in B_{N+k}; the enumeration order makes the
  // inner ball a prefix, but the lookup does not rely on it.
  std::vector<std::vector<std::uint32_t>> adjacency(inner.size());
  // edge_move[a][b] = index in B_k of the x with b = x g_a (unique per edge).
  std::vector<std::map<std::uint32_t, std::size_t>> edge_move(inner.size());
  for (std::size_t a = 0; a < inner.size(); ++a) {
    for (std::size_t x = 0; x < moves.size(); ++x) {
      const GroupElement target = backend.multiply(moves.element(x), inner.element(a));
      const auto b = outer.index_of(target);
      if (!b) throw Error("translate left the outer ball");
      const auto bi = static_cast<std::uint32_t>(*b);
      adjacency[a].push_back(bi);
      edge_move[a].emplace(bi, x);
    }
  }
  const BipartiteGraph graph(inner.size(), outer.size(), std::move(adjacency));

  MatchingParadoxReport report;
  report.radius = radius;
  report.k = k;
  report.left = inner.size();
  report.right = outer.size();
  for (std::size_t a = 0; a < inner.size(); ++a) report.left_words.push_back(backend.alphabet().format(inner.word(a)));
  for (std::size_t b = 0; b < outer.size(); ++b) report.right_words.push_back(backend.alphabet().format(outer.word(b)));
  for (std::size_t x = 0; x < moves.size(); ++x) report.move_words.push_back(backend.alphabet().format(moves.word(x)));

  const MatchingResult result = two_one_matching(graph);
  if (const auto* w = std::get_if<DeficiencyWitness>(&result)) {
    report.witness = *w;
    return report;
  }
  const auto& m = std::get<TwoOneMatching>(result);
  report.feasible = true;

  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> grouped;
  for (std::size_t a = 0; a < inner.size(); ++a) {
    const std::size_t s = edge_move[a].at(m.i[a]);
    const std::size_t t = edge_move[a].at(m.j[a]);
    grouped[{s, t}].push_back(a);
    if (outer.length(m.i[a]) > radius || outer.length(m.j[a]) > radius) ++report.leakage;
  }

  // Covering: every g in B_N lies in exactly one Omega_{s,t}.
  std::vector<int> cover(inner.size(), 0);
  // Disjointness: the translates s Omega_{s,t} and t Omega_{s,t} never share
  // an element of B_{N+k}.
  std::vector<int> owner(outer.size(), 0);
  report.disjoint = true;
  for (auto& [key, members] : grouped) {
    const auto [s, t] = key;
    for (std::size_t g : members) {
      ++cover[g];
      for (std::size_t x : {s, t}) {
        const auto image = outer.index_of(backend.multiply(moves.element(x), inner.element(g)));
        if (!image || owner[*image]++ != 0) report.disjoint = false;
      }
    }
    report.pieces.push_back({s, t, members});
  }
  report.covers = true;
  for (int c : cover) report.covers = report.covers && c == 1;
  return report;
}

nlohmann::json MatchingParadoxReport::to_json() const {
  nlohmann::json doc{{"radius", radius}, {"k", k}, {"left", left}, {"right", right}, {"feasible", feasible}};
  if (!feasible) {
    nlohmann::json subset = nlohmann::json::array();
    nlohmann::json hood = nlohmann::json::array();
    if (witness) {
      for (auto a : witness->subset) subset.push_back(left_words[a]);
      for (auto b : witness->neighborhood) hood.push_back(right_words[b]);
    }
    doc["witness"] = subset;
    doc["neighborhood"] = hood;
    return doc;
  }
  nlohmann::json list = nlohmann::json::array();
  for (const auto& p : pieces) {
    nlohmann::json members = nlohmann::json::array();
    for (auto g : p.members) members.push_back(left_words[g]);
    list.push_back({{"s", move_words[p.s]}, {"t", move_words[p.t]}, {"members", members}});
  }
  doc["pieces"] = list;
  doc["covers"] = covers;
  doc["disjoint"] = disjoint;
  doc["leakage"] = leakage;
  return doc;
}

}  // namespace sofic
