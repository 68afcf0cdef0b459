#pragma once

#include <optional>
#include <vector>

#include "lsa/alphabet.hpp"
#include "lsa/transform.hpp"

namespace lsa {

inline constexpr int kDefaultSolverKMax = 6;

/// One transformation hypothesis consistent with a source pair. The slot is
/// the per-type parameter observed in the pair: changed-letter index for
/// Successor/Predecessor, duplicate index for RemoveRedundant, corrupted
/// index for FixAlphabetic; ExtendSequence and Sort carry none.
struct InducedRule {
  TransformationType ttype = TransformationType::ExtendSequence;
  int k = 1;
  std::optional<int> slot;

  bool operator==(const InducedRule&) const = default;
};

struct SolveResult {
  std::vector<InducedRule> rules;          // canonical order: ttype, then k, then slot
  std::vector<LetterSequence> answers;     // distinct, sorted lexicographically
  std::optional<LetterSequence> chosen;    // present iff answers.size() == 1
  bool ambiguous = false;                  // answers.size() > 1
};

/// Every rule in the space (six types, 1 <= k <= k_max, all slots) whose
/// forward application maps left to right exactly.
std::vector<InducedRule> induce(const LetterSequence& left, const LetterSequence& right,
                                const Alphabet& alphabet, int k_max = kDefaultSolverKMax);

/// Apply a rule to a stem; nullopt means the rule is inapplicable there
/// (a shift leaves the alphabet, the stem has no adjacent duplicate, the
/// repaired/sorted sequence is not a step-k run, or the stem is already
/// sorted). Inapplicability is a value, not an error.
std::optional<LetterSequence> apply_rule(const InducedRule& rule, const LetterSequence& stem,
                                         const Alphabet& alphabet);

/// Induce rules from the source pair and apply each to the stem.
SolveResult solve(const LetterSequence& source_left, const LetterSequence& source_right,
                  const LetterSequence& target_stem, const Alphabet& alphabet,
                  int k_max = kDefaultSolverKMax);

}  // namespace lsa
