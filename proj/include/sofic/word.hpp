#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sofic {

// A letter is a signed generator index: +k is the k-th generator (1-based),
// -k its formal inverse. Zero is never a letter.
using Letter = int;
using Word = std::vector<Letter>;

class GeneratorAlphabet {
 public:
  explicit GeneratorAlphabet(std::vector<std::string> names);

  // "a", "b", ... for small ranks, "g1", "g2", ... otherwise.
  static GeneratorAlphabet standard(int rank);

  int rank() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }

  // The symmetric generating set in shortlex order: +1..+r, then -1..-r.
  std::vector<Letter> signed_letters() const;

  bool contains(Letter letter) const { return letter != 0 && (letter < 0 ? -letter : letter) <= rank(); }

  std::string letter_name(Letter letter) const;

  // Whitespace separated names, inverses written name + "'"; "" is the identity.
  Word parse(std::string_view text) const;
  std::string format(std::span<const Letter> word) const;

  bool operator==(const GeneratorAlphabet&) const = default;

 private:
  std::vector<std::string> names_;
};

// Free reduction. Throws InvalidArgument for letters outside [-rank, rank] \ {0}.
Word reduce(std::span<const Letter> word, int rank);

bool is_reduced(std::span<const Letter> word);

Word inverse_word(std::span<const Letter> word);

}  // namespace sofic
