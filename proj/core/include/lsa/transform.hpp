#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lsa/alphabet.hpp"
#include "lsa/rng.hpp"

namespace lsa {

/// The six letter-string transformations. Enum order is the fixed report
/// order used by every chart/CSV emitted by this project.
enum class TransformationType {
  ExtendSequence,
  Successor,
  Predecessor,
  RemoveRedundant,
  FixAlphabetic,
  Sort,
};

inline constexpr std::array<TransformationType, 6> kAllTransformationTypes{
    TransformationType::ExtendSequence, TransformationType::Successor,
    TransformationType::Predecessor,    TransformationType::RemoveRedundant,
    TransformationType::FixAlphabetic,  TransformationType::Sort,
};

constexpr int type_index(TransformationType t) noexcept { return static_cast<int>(t); }

std::string_view type_slug(TransformationType t);
std::optional<TransformationType> type_from_slug(std::string_view slug);

/// ExtendSequence/Successor/Predecessor edit a single letter (the last or
/// first one) by the interval; the other three rework a whole step-k run.
constexpr bool is_single_letter_edit(TransformationType t) noexcept {
  return t == TransformationType::ExtendSequence || t == TransformationType::Successor ||
         t == TransformationType::Predecessor;
}

inline constexpr int kMinRunLength = 3;
inline constexpr int kMaxRunLength = 8;
inline constexpr int kMaxSequenceLetters = 12;
inline constexpr int kDefaultChangeRunLength = 4;  // extend/successor/predecessor
inline constexpr int kDefaultFullRunLength = 5;    // remove/fix/sort
inline constexpr int kGenerationRetryBudget = 100;

/// Everything needed to regenerate one problem.
struct ProblemSpec {
  TransformationType ttype = TransformationType::ExtendSequence;
  int interval = 1;  // the step size k
  Alphabet alphabet;
  int run_length = kDefaultChangeRunLength;  // letters in the pre-edit run, 3..8
  std::uint64_t seed = 0;
};

/// One analogy instance: (source_left -> source_right) :: (target_stem -> ?),
/// with the unique ground-truth answer attached.
struct Problem {
  std::string id;
  LetterSequence source_left;
  LetterSequence source_right;
  LetterSequence target_stem;
  LetterSequence answer;
  ProblemSpec spec;
};

/// Letters at positions start, start+step, ... (length of them).
/// Throws OutOfBoundsError if the run exits the alphabet.
LetterSequence base_run(const Alphabet& alphabet, int start, int length, int step);

/// Inclusive range of start positions for which the construction of ttype
/// with interval k and the given run length stays inside the alphabet;
/// nullopt when no start fits.
std::optional<std::pair<int, int>> start_bounds(TransformationType ttype, int k, int run_length);

/// Build one (left, right) pair of the given type at a fixed start position.
/// The rng drives only the type's free choices (duplicate index, corrupted
/// letter, shuffle); ExtendSequence/Successor/Predecessor consume no draws.
std::pair<LetterSequence, LetterSequence> apply_forward(TransformationType ttype, int k,
                                                        const Alphabet& alphabet, int start,
                                                        int run_length, SplitMix64& rng);

/// Draws the generator discarded because the solver did not certify a single
/// answer for them.
struct GenStats {
  long rejected_draws = 0;
};

/// Deterministically generate a problem from its spec: sample distinct source
/// and target starts, build both pairs with the same (ttype, k), and keep the
/// draw only if the solver finds exactly one answer and it matches the
/// constructed one. Re-samples up to kGenerationRetryBudget times, then
/// throws GenerationExhaustedError.
Problem generate_problem(const ProblemSpec& spec, GenStats* stats = nullptr);

/// n problems of one type over one alphabet; instance seeds are
/// derive_seed(set_seed, i) for i in [0, n).
std::vector<Problem> generate_set(TransformationType ttype, const Alphabet& alphabet, int k,
                                  int run_length, int n, std::uint64_t set_seed,
                                  GenStats* stats = nullptr);

}  // namespace lsa
