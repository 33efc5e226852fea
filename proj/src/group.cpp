#include "sofic/group.hpp"

#include <algorithm>

#include "sofic/errors.hpp"

namespace sofic {

std::size_t GroupElementHash::operator()(const GroupElement& g) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL ^ g.coords.size();
  for (std::int64_t c : g.coords) {
    h ^= static_cast<std::size_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<std::uint32_t>> table, std::uint32_t identity,
                                    std::vector<std::uint32_t> generators, std::vector<std::string> names) {
  FiniteGroup g;
  g.order_ = static_cast<std::uint32_t>(table.size());
  if (g.order_ == 0) throw MalformedInput("group table is empty");
  g.table_.reserve(std::size_t{g.order_} * g.order_);
  for (const auto& row : table) {
    if (row.size() != g.order_) throw MalformedInput("group table is not square");
    g.table_.insert(g.table_.end(), row.begin(), row.end());
  }
  g.identity_ = identity;
  g.generators_ = std::move(generators);
  g.names_ = std::move(names);
  g.finish(true);
  return g;
}

FiniteGroup FiniteGroup::from_trusted_table(std::vector<std::uint32_t> flat_table, std::uint32_t order,
                                            std::uint32_t identity, std::vector<std::uint32_t> generators,
                                            std::vector<std::string> names) {
  FiniteGroup g;
  g.order_ = order;
  if (order == 0 || flat_table.size() != std::size_t{order} * order) {
    throw MalformedInput("group table has wrong size");
  }
  g.table_ = std::move(flat_table);
  g.identity_ = identity;
  g.generators_ = std::move(generators);
  g.names_ = std::move(names);
  g.finish(false);
  return g;
}

FiniteGroup FiniteGroup::cyclic(std::uint32_t m) {
  if (m == 0) throw InvalidArgument("cyclic group order must be positive");
  std::vector<std::uint32_t> flat(std::size_t{m} * m);
  for (std::uint32_t a = 0; a < m; ++a) {
    for (std::uint32_t b = 0; b < m; ++b) flat[std::size_t{a} * m + b] = (a + b) % m;
  }
  std::vector<std::uint32_t> gens;
  std::vector<std::string> names;
  if (m > 1) {
    gens.push_back(1);
    names.push_back("a");
  } else {
    // The trivial group still needs a (trivial) generator for the alphabet.
    gens.push_back(0);
    names.push_back("a");
  }
  FiniteGroup g;
  g.order_ = m;
  g.table_ = std::move(flat);
  g.identity_ = 0;
  g.generators_ = std::move(gens);
  g.names_ = std::move(names);
  g.finish(false);
  return g;
}

void FiniteGroup::finish(bool check_associativity) {
  const std::uint32_t m = order_;
  if (identity_ >= m) throw MalformedInput("identity index out of range");
  for (std::uint32_t v : table_) {
    if (v >= m) throw MalformedInput("group table entry out of range");
  }
  for (std::uint32_t a = 0; a < m; ++a) {
    if (multiply(identity_, a) != a || multiply(a, identity_) != a) {
      throw MalformedInput("identity law fails at element " + std::to_string(a));
    }
  }
  inverses_.assign(m, m);
  for (std::uint32_t a = 0; a < m; ++a) {
    for (std::uint32_t b = 0; b < m; ++b) {
      if (multiply(a, b) == identity_) {
        if (multiply(b, a) != identity_) {
          throw MalformedInput("left and right inverses differ at element " + std::to_string(a));
        }
        inverses_[a] = b;
        break;
      }
    }
    if (inverses_[a] == m) throw MalformedInput("element " + std::to_string(a) + " has no inverse");
  }
  if (check_associativity) {
    for (std::uint32_t a = 0; a < m; ++a) {
      for (std::uint32_t b = 0; b < m; ++b) {
        const std::uint32_t ab = multiply(a, b);
        for (std::uint32_t c = 0; c < m; ++c) {
          if (multiply(ab, c) != multiply(a, multiply(b, c))) {
            throw MalformedInput("associativity fails at (" + std::to_string(a) + ", " + std::to_string(b) +
                                 ", " + std::to_string(c) + ")");
          }
        }
      }
    }
  }
  if (generators_.empty()) {
    for (std::uint32_t a = 0; a < m; ++a) {
      if (a != identity_) generators_.push_back(a);
    }
    if (generators_.empty()) generators_.push_back(identity_);
  }
  for (std::uint32_t gen : generators_) {
    if (gen >= m) throw MalformedInput("generator index out of range");
  }
  if (names_.empty()) {
    for (std::uint32_t gen : generators_) names_.push_back("g" + std::to_string(gen));
  }
  if (names_.size() != generators_.size()) throw MalformedInput("generator names and indices differ in length");
}

nlohmann::json FiniteGroup::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::uint32_t a = 0; a < order_; ++a) {
    auto r = row(a);
    rows.push_back(std::vector<std::uint32_t>(r.begin(), r.end()));
  }
  return {{"order", order_}, {"table", rows}, {"identity", identity_}, {"generators", generators_},
          {"names", names_}};
}

FiniteGroup FiniteGroup::from_json(const nlohmann::json& doc) {
  try {
    const auto order = doc.at("order").get<std::uint32_t>();
    auto table = doc.at("table").get<std::vector<std::vector<std::uint32_t>>>();
    if (table.size() != order) throw MalformedInput("\"order\" does not match table size");
    std::vector<std::uint32_t> gens;
    std::vector<std::string> names;
    if (doc.contains("generators")) gens = doc.at("generators").get<std::vector<std::uint32_t>>();
    if (doc.contains("names")) names = doc.at("names").get<std::vector<std::string>>();
    return from_table(std::move(table), doc.at("identity").get<std::uint32_t>(), std::move(gens), std::move(names));
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("bad group table document: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// GroupBackend

GroupBackend::GroupBackend(BackendKind kind, GeneratorAlphabet alphabet)
    : kind_(kind), alphabet_(std::move(alphabet)) {}

GroupBackend GroupBackend::free(int rank) { return GroupBackend(BackendKind::kFree, GeneratorAlphabet::standard(rank)); }

GroupBackend GroupBackend::free(GeneratorAlphabet alphabet) {
  return GroupBackend(BackendKind::kFree, std::move(alphabet));
}

GroupBackend GroupBackend::zpower(int dimension) {
  if (dimension < 1) throw InvalidArgument("zpower dimension must be at least 1");
  return GroupBackend(BackendKind::kZPower, GeneratorAlphabet::standard(dimension));
}

GroupBackend GroupBackend::heisenberg() {
  return GroupBackend(BackendKind::kHeisenberg, GeneratorAlphabet({"x", "y"}));
}

GroupBackend GroupBackend::finite(FiniteGroup group) {
  GroupBackend b(BackendKind::kFiniteTable, GeneratorAlphabet(group.names()));
  b.finite_ = std::make_shared<const FiniteGroup>(std::move(group));
  return b;
}

const FiniteGroup& GroupBackend::finite_group() const {
  if (kind_ != BackendKind::kFiniteTable) throw InvalidArgument("backend is not a finite table");
  return *finite_;
}

GroupElement GroupBackend::identity() const {
  switch (kind_) {
    case BackendKind::kFree:
      return {};
    case BackendKind::kZPower:
      return {std::vector<std::int64_t>(static_cast<std::size_t>(rank()), 0)};
    case BackendKind::kHeisenberg:
      return {{0, 0, 0}};
    case BackendKind::kFiniteTable:
      return {{finite_->identity()}};
  }
  return {};
}

GroupElement GroupBackend::multiply(const GroupElement& g, const GroupElement& h) const {
  switch (kind_) {
    case BackendKind::kFree: {
      GroupElement out = g;
      auto& w = out.coords;
      std::size_t i = 0;
      while (i < h.coords.size() && !w.empty() && w.back() == -h.coords[i]) {
        w.pop_back();
        ++i;
      }
      w.insert(w.end(), h.coords.begin() + static_cast<std::ptrdiff_t>(i), h.coords.end());
      return out;
    }
    case BackendKind::kZPower: {
      GroupElement out = g;
      for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += h.coords[i];
      return out;
    }
    case BackendKind::kHeisenberg: {
      const auto& a = g.coords;
      const auto& b = h.coords;
      return {{a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[1] * b[0]}};
    }
    case BackendKind::kFiniteTable:
      return {{finite_->multiply(static_cast<std::uint32_t>(g.coords[0]), static_cast<std::uint32_t>(h.coords[0]))}};
  }
  return {};
}

GroupElement GroupBackend::inverse(const GroupElement& g) const {
  switch (kind_) {
    case BackendKind::kFree: {
      GroupElement out{{g.coords.rbegin(), g.coords.rend()}};
      for (auto& c : out.coords) c = -c;
      return out;
    }
    case BackendKind::kZPower: {
      GroupElement out = g;
      for (auto& c : out.coords) c = -c;
      return out;
    }
    case BackendKind::kHeisenberg: {
      const auto& a = g.coords;
      return {{-a[0], -a[1], a[0] * a[1] - a[2]}};
    }
    case BackendKind::kFiniteTable:
      return {{finite_->inverse(static_cast<std::uint32_t>(g.coords[0]))}};
  }
  return {};
}

GroupElement GroupBackend::letter(Letter l) const {
  if (!alphabet_.contains(l)) {
    throw InvalidArgument("letter " + std::to_string(l) + " outside alphabet of rank " + std::to_string(rank()));
  }
  const int index = l < 0 ? -l : l;
  GroupElement positive;
  switch (kind_) {
    case BackendKind::kFree:
      return {{l}};
    case BackendKind::kZPower:
      positive = identity();
      positive.coords[static_cast<std::size_t>(index - 1)] = 1;
      break;
    case BackendKind::kHeisenberg:
      positive = index == 1 ? GroupElement{{1, 0, 0}} : GroupElement{{0, 1, 0}};
      break;
    case BackendKind::kFiniteTable:
      positive = {{finite_->generators()[static_cast<std::size_t>(index - 1)]}};
      break;
  }
  return l < 0 ? inverse(positive) : positive;
}

GroupElement GroupBackend::normal_form(std::span<const Letter> word) const {
  GroupElement g = identity();
  for (Letter l : word) g = multiply(g, letter(l));
  return g;
}

std::string GroupBackend::name() const {
  switch (kind_) {
    case BackendKind::kFree:
      return "free(" + std::to_string(rank()) + ")";
    case BackendKind::kZPower:
      return "zpower(" + std::to_string(rank()) + ")";
    case BackendKind::kHeisenberg:
      return "heisenberg";
    case BackendKind::kFiniteTable:
      return "finite(" + std::to_string(finite_->order()) + ")";
  }
  return {};
}

nlohmann::json GroupBackend::descriptor() const {
  switch (kind_) {
    case BackendKind::kFree:
      return {{"kind", "free"}, {"rank", rank()}, {"names", alphabet_.names()}};
    case BackendKind::kZPower:
      return {{"kind", "zpower"}, {"dimension", rank()}};
    case BackendKind::kHeisenberg:
      return {{"kind", "heisenberg"}};
    case BackendKind::kFiniteTable: {
      auto doc = finite_->to_json();
      doc["kind"] = "finite";
      return doc;
    }
  }
  return {};
}

GroupBackend GroupBackend::from_descriptor(const nlohmann::json& doc) {
  try {
    const auto kind = doc.at("kind").get<std::string>();
    if (kind == "free") {
      const int rank = doc.at("rank").get<int>();
      if (doc.contains("names")) {
        auto names = doc.at("names").get<std::vector<std::string>>();
        if (static_cast<int>(names.size()) != rank) throw MalformedInput("free group names do not match rank");
        return free(GeneratorAlphabet(std::move(names)));
      }
      return free(rank);
    }
    if (kind == "zpower") return zpower(doc.at("dimension").get<int>());
    if (kind == "heisenberg") return heisenberg();
    if (kind == "finite") return finite(FiniteGroup::from_json(doc));
    throw MalformedInput("unknown group kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("bad group descriptor: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw MalformedInput(std::string("bad group descriptor: ") + e.what());
  }
}

bool GroupBackend::operator==(const GroupBackend& other) const {
  if (kind_ != other.kind_ || alphabet_ != other.alphabet_) return false;
  if (kind_ != BackendKind::kFiniteTable) return true;
  return descriptor() == other.descriptor();
}

GroupBackend backend_from_family(const std::string& family, int rank_or_dimension) {
  if (family == "z") return GroupBackend::zpower(1);
  if (family == "z2") return GroupBackend::zpower(2);
  if (family == "zd") return GroupBackend::zpower(rank_or_dimension > 0 ? rank_or_dimension : 1);
  if (family == "heisenberg") return GroupBackend::heisenberg();
  if (family == "free") return GroupBackend::free(rank_or_dimension > 0 ? rank_or_dimension : 2);
  throw InvalidArgument("unknown group family '" + family + "'");
}

}  // namespace sofic
