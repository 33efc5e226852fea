#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "sofic/word.hpp"

namespace sofic {

// Canonical form of a group element. Interpretation depends on the backend:
// free: reduced letters; zpower: exponent vector; heisenberg: (a, b, c) for
// x^a y^b z^c; finite table: a single element index.
struct GroupElement {
  std::vector<std::int64_t> coords;

  auto operator<=>(const GroupElement&) const = default;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept;
};

// An explicit finite group given by its multiplication table, checked to be a
// group when loaded.
class FiniteGroup {
 public:
  // table[a][b] = index of a*b. Throws MalformedInput unless the table is a
  // group with the given identity. Empty generators means every non-identity
  // element; empty names means g<index>.
  static FiniteGroup from_table(std::vector<std::vector<std::uint32_t>> table, std::uint32_t identity,
                                std::vector<std::uint32_t> generators = {},
                                std::vector<std::string> names = {});

  // Z/m with generator 1.
  static FiniteGroup cyclic(std::uint32_t m);

  // For tables built from a concrete group (e.g. SL(2, Z_p)); skips the O(m^3)
  // associativity scan but still checks ranges, identity and inverses.
  static FiniteGroup from_trusted_table(std::vector<std::uint32_t> flat_table, std::uint32_t order,
                                        std::uint32_t identity, std::vector<std::uint32_t> generators,
                                        std::vector<std::string> names);

  std::uint32_t order() const { return order_; }
  std::uint32_t identity() const { return identity_; }
  std::uint32_t multiply(std::uint32_t a, std::uint32_t b) const { return table_[std::size_t{a} * order_ + b]; }
  std::uint32_t inverse(std::uint32_t a) const { return inverses_[a]; }
  std::span<const std::uint32_t> row(std::uint32_t a) const {
    return {table_.data() + std::size_t{a} * order_, order_};
  }
  const std::vector<std::uint32_t>& generators() const { return generators_; }
  const std::vector<std::string>& names() const { return names_; }

  // {"order": m, "table": [[...]], "identity": e, "generators": [...], "names": [...]}
  nlohmann::json to_json() const;
  static FiniteGroup from_json(const nlohmann::json& doc);

 private:
  FiniteGroup() = default;
  void finish(bool check_associativity);

  std::uint32_t order_ = 0;
  std::uint32_t identity_ = 0;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverses_;
  std::vector<std::uint32_t> generators_;
  std::vector<std::string> names_;
};

enum class BackendKind { kFree, kZPower, kHeisenberg, kFiniteTable };

// A group with solvable normal forms together with its generating alphabet.
class GroupBackend {
 public:
  static GroupBackend free(int rank);
  static GroupBackend free(GeneratorAlphabet alphabet);
  static GroupBackend zpower(int dimension);
  static GroupBackend heisenberg();
  static GroupBackend finite(FiniteGroup group);

  BackendKind kind() const { return kind_; }
  const GeneratorAlphabet& alphabet() const { return alphabet_; }
  int rank() const { return alphabet_.rank(); }
  // Only for kFiniteTable.
  const FiniteGroup& finite_group() const;

  GroupElement identity() const;
  GroupElement multiply(const GroupElement& g, const GroupElement& h) const;
  GroupElement inverse(const GroupElement& g) const;
  GroupElement letter(Letter l) const;

  // Evaluates a word; throws InvalidArgument on letters outside the alphabet.
  GroupElement normal_form(std::span<const Letter> word) const;

  std::string name() const;

  // {"kind": "free", "rank": r, "names": [...]}, {"kind": "zpower", "dimension": d},
  // {"kind": "heisenberg"}, {"kind": "finite", ...FiniteGroup::to_json()}
  nlohmann::json descriptor() const;
  static GroupBackend from_descriptor(const nlohmann::json& doc);

  bool operator==(const GroupBackend& other) const;

 private:
  GroupBackend(BackendKind kind, GeneratorAlphabet alphabet);

  BackendKind kind_;
  GeneratorAlphabet alphabet_;
  std::shared_ptr<const FiniteGroup> finite_;
};

// Resolves the CLI family names z, z2, zd (with dimension), heisenberg, free (with rank).
GroupBackend backend_from_family(const std::string& family, int rank_or_dimension = 0);

}  // namespace sofic
