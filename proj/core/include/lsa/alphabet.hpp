#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lsa {

enum class AlphabetKind { Real, Synthetic };

/// An ordered permutation of the 26 lowercase letters. Every successor,
/// predecessor and sort operation in the problem domain is defined against
/// this order, never against codepoints. Immutable after construction.
class Alphabet {
 public:
  static constexpr int kSize = 26;

  /// Default-constructs the real alphabet, so an Alphabet is never in a
  /// half-made state.
  Alphabet();

  /// The standard order a..z.
  static Alphabet real();

  /// A seeded permutation of a..z. Same seed, same order, on any machine:
  /// Fisher-Yates driven by splitmix64 (see rng.hpp), swapping indices 25
  /// down to 1 with j = bounded(i + 1). The identity permutation is rejected
  /// by reshuffling from the already-advanced stream.
  static Alphabet synthetic(std::uint64_t seed);

  AlphabetKind kind() const noexcept { return kind_; }
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }
  const std::array<char, kSize>& symbols() const noexcept { return symbols_; }

  /// Symbol at a position in [0, 26).
  char at(int position) const;

  /// Position of a symbol; throws UnknownSymbolError for foreign symbols.
  int position(char symbol) const;
  std::optional<int> try_position(char symbol) const noexcept;
  bool contains(char symbol) const noexcept;

  /// Symbol delta steps away in alphabet order. No wrap-around: stepping
  /// past either end throws BoundaryError.
  char shift(char symbol, int delta) const;

  /// As shift(), but a boundary overrun yields nullopt instead of throwing.
  std::optional<char> try_shift(char symbol, int delta) const;

  /// Order of two symbols by alphabet position.
  std::strong_ordering compare(char lhs, char rhs) const;

  /// The 26 symbols space-separated, i.e. the interior of the bracketed
  /// alphabet listing used in prompts.
  std::string prompt_line() const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::array<char, kSize> symbols_{};
  std::array<std::int8_t, kSize> position_of_{};  // indexed by symbol - 'a'
  AlphabetKind kind_ = AlphabetKind::Real;
  std::optional<std::uint64_t> seed_;
};

/// A non-empty run of letters from one governing alphabet. Plain value type;
/// membership in the alphabet is enforced where sequences enter the system
/// (generation and file loading), not on every mutation.
struct LetterSequence {
  std::vector<char> letters;

  LetterSequence() = default;
  explicit LetterSequence(std::vector<char> ls) : letters(std::move(ls)) {}

  bool empty() const noexcept { return letters.empty(); }
  std::size_t size() const noexcept { return letters.size(); }
  char front() const { return letters.front(); }
  char back() const { return letters.back(); }

  /// "a b c d"
  std::string joined() const;
  /// "[a b c d]"
  std::string bracketed() const;

  bool operator==(const LetterSequence&) const = default;
};

/// Letters reordered ascending by alphabet position.
LetterSequence sorted_by(const Alphabet& alphabet, const LetterSequence& seq);

/// True iff consecutive positions all differ by exactly step (vacuously true
/// for a single letter). Sequences with foreign symbols are never runs.
bool is_step_run(const Alphabet& alphabet, const LetterSequence& seq, int step);

}  // namespace lsa
