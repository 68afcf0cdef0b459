#include "lsa/alphabet.hpp"

#include <algorithm>
#include <stdexcept>

#include "lsa/errors.hpp"
#include "lsa/rng.hpp"

namespace lsa {

namespace {

bool is_identity(const std::array<char, Alphabet::kSize>& symbols) {
  for (int i = 0; i < Alphabet::kSize; ++i) {
    if (symbols[i] != static_cast<char>('a' + i)) return false;
  }
  return true;
}

}  // namespace

Alphabet::Alphabet() {
  kind_ = AlphabetKind::Real;
  for (int i = 0; i < kSize; ++i) {
    symbols_[i] = static_cast<char>('a' + i);
    position_of_[i] = static_cast<std::int8_t>(i);
  }
}

Alphabet Alphabet::real() { return Alphabet(); }

Alphabet Alphabet::synthetic(std::uint64_t seed) {
  Alphabet a;
  a.kind_ = AlphabetKind::Synthetic;
  a.seed_ = seed;
  for (int i = 0; i < kSize; ++i) a.symbols_[i] = static_cast<char>('a' + i);

  SplitMix64 rng(seed);
  do {
    for (int i = kSize - 1; i >= 1; --i) {
      const int j = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(i) + 1));
      std::swap(a.symbols_[i], a.symbols_[j]);
    }
  } while (is_identity(a.symbols_));  // a synthetic alphabet must differ from a..z

  for (int i = 0; i < kSize; ++i) {
    a.position_of_[a.symbols_[i] - 'a'] = static_cast<std::int8_t>(i);
  }
  return a;
}

char Alphabet::at(int position) const {
  if (position < 0 || position >= kSize) {
    throw std::out_of_range("alphabet position out of range: " + std::to_string(position));
  }
  return symbols_[position];
}

std::optional<int> Alphabet::try_position(char symbol) const noexcept {
  if (symbol < 'a' || symbol > 'z') return std::nullopt;
  return static_cast<int>(position_of_[symbol - 'a']);
}

int Alphabet::position(char symbol) const {
  if (auto p = try_position(symbol)) return *p;
  throw UnknownSymbolError(std::string("symbol not in alphabet: '") + symbol + "'");
}

bool Alphabet::contains(char symbol) const noexcept {
  return try_position(symbol).has_value();
}

char Alphabet::shift(char symbol, int delta) const {
  const int from = position(symbol);
  const int to = from + delta;
  if (to < 0 || to >= kSize) {
    throw BoundaryError("shift of '" + std::string(1, symbol) + "' by " + std::to_string(delta) +
                        " leaves the alphabet");
  }
  return symbols_[to];
}

std::optional<char> Alphabet::try_shift(char symbol, int delta) const {
  const int from = position(symbol);
  const int to = from + delta;
  if (to < 0 || to >= kSize) return std::nullopt;
  return symbols_[to];
}

std::strong_ordering Alphabet::compare(char lhs, char rhs) const {
  return position(lhs) <=> position(rhs);
}

std::string Alphabet::prompt_line() const {
  std::string out;
  out.reserve(2 * kSize - 1);
  for (int i = 0; i < kSize; ++i) {
    if (i > 0) out.push_back(' ');
    out.push_back(symbols_[i]);
  }
  return out;
}

std::string LetterSequence::joined() const {
  std::string out;
  if (letters.empty()) return out;
  out.reserve(2 * letters.size() - 1);
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out.push_back(letters[i]);
  }
  return out;
}

std::string LetterSequence::bracketed() const { return "[" + joined() + "]"; }

LetterSequence sorted_by(const Alphabet& alphabet, const LetterSequence& seq) {
  LetterSequence out = seq;
  std::sort(out.letters.begin(), out.letters.end(),
            [&](char x, char y) { return alphabet.position(x) < alphabet.position(y); });
  return out;
}

bool is_step_run(const Alphabet& alphabet, const LetterSequence& seq, int step) {
  if (seq.empty()) return false;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!alphabet.contains(seq.letters[i])) return false;
  }
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (alphabet.position(seq.letters[i + 1]) - alphabet.position(seq.letters[i]) != step) {
      return false;
    }
  }
  return true;
}

}  // namespace lsa
