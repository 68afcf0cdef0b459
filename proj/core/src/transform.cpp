#include "lsa/transform.hpp"

#include <cstdio>
#include <stdexcept>

#include "lsa/errors.hpp"
#include "lsa/solver.hpp"

namespace lsa {

std::string_view type_slug(TransformationType t) {
  switch (t) {
    case TransformationType::ExtendSequence: return "extend_sequence";
    case TransformationType::Successor: return "successor";
    case TransformationType::Predecessor: return "predecessor";
    case TransformationType::RemoveRedundant: return "remove_redundant";
    case TransformationType::FixAlphabetic: return "fix_alphabetic";
    case TransformationType::Sort: return "sort";
  }
  throw std::logic_error("unreachable: bad TransformationType");
}

std::optional<TransformationType> type_from_slug(std::string_view slug) {
  for (TransformationType t : kAllTransformationTypes) {
    if (type_slug(t) == slug) return t;
  }
  return std::nullopt;
}

LetterSequence base_run(const Alphabet& alphabet, int start, int length, int step) {
  if (length < 1 || step < 1 || start < 0) {
    throw std::invalid_argument("base_run: start/length/step out of domain");
  }
  const int last = start + (length - 1) * step;
  if (last >= Alphabet::kSize) {
    throw OutOfBoundsError("run " + std::to_string(start) + "+" + std::to_string(length) + "*" +
                           std::to_string(step) + " exits the alphabet");
  }
  LetterSequence seq;
  seq.letters.reserve(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) seq.letters.push_back(alphabet.at(start + i * step));
  return seq;
}

std::optional<std::pair<int, int>> start_bounds(TransformationType ttype, int k, int run_length) {
  const int n = Alphabet::kSize;
  int lo = 0;
  int hi = 0;
  switch (ttype) {
    case TransformationType::ExtendSequence:
    case TransformationType::Successor:
      // step-1 run plus a single letter pushed up by k
      lo = 0;
      hi = n - 1 - (run_length - 1) - k;
      break;
    case TransformationType::Predecessor:
      // step-1 run; the first letter is pulled down by k
      lo = k;
      hi = n - 1 - (run_length - 1);
      break;
    case TransformationType::RemoveRedundant:
    case TransformationType::FixAlphabetic:
    case TransformationType::Sort:
      // the whole run is step-k
      lo = 0;
      hi = n - 1 - (run_length - 1) * k;
      break;
  }
  if (hi < lo) return std::nullopt;
  return std::make_pair(lo, hi);
}

namespace {

// A non-identity shuffle of seq's letters. The draw loop repeats whole
// Fisher-Yates passes on the advanced stream until the result moved at
// least one letter.
LetterSequence scrambled(const LetterSequence& seq, SplitMix64& rng) {
  LetterSequence out = seq;
  do {
    out = seq;
    for (int i = static_cast<int>(out.size()) - 1; i >= 1; --i) {
      const int j = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(i) + 1));
      std::swap(out.letters[static_cast<std::size_t>(i)], out.letters[static_cast<std::size_t>(j)]);
    }
  } while (out == seq);
  return out;
}

}  // namespace

std::pair<LetterSequence, LetterSequence> apply_forward(TransformationType ttype, int k,
                                                        const Alphabet& alphabet, int start,
                                                        int run_length, SplitMix64& rng) {
  if (k < 1) throw std::invalid_argument("apply_forward: interval must be >= 1");
  switch (ttype) {
    case TransformationType::ExtendSequence: {
      LetterSequence left = base_run(alphabet, start, run_length, 1);
      LetterSequence right = left;
      right.letters.push_back(alphabet.shift(left.back(), k));
      return {left, right};
    }
    case TransformationType::Successor: {
      LetterSequence left = base_run(alphabet, start, run_length, 1);
      LetterSequence right = left;
      right.letters.back() = alphabet.shift(left.back(), k);
      return {left, right};
    }
    case TransformationType::Predecessor: {
      LetterSequence left = base_run(alphabet, start, run_length, 1);
      LetterSequence right = left;
      right.letters.front() = alphabet.shift(left.front(), -k);
      return {left, right};
    }
    case TransformationType::RemoveRedundant: {
      LetterSequence right = base_run(alphabet, start, run_length, k);
      const int dup = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(run_length)));
      LetterSequence left = right;
      left.letters.insert(left.letters.begin() + dup, right.letters[static_cast<std::size_t>(dup)]);
      return {left, right};
    }
    case TransformationType::FixAlphabetic: {
      if (run_length < 3) throw std::invalid_argument("fix_alphabetic needs run_length >= 3");
      LetterSequence right = base_run(alphabet, start, run_length, k);
      // corrupt an interior letter with one that is wrong and not equal to
      // either neighbor, so the repair stays uniquely identifiable
      const int idx = 1 + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(run_length - 2)));
      const char correct = right.letters[static_cast<std::size_t>(idx)];
      const char before = right.letters[static_cast<std::size_t>(idx - 1)];
      const char after = right.letters[static_cast<std::size_t>(idx + 1)];
      char wrong = correct;
      while (wrong == correct || wrong == before || wrong == after) {
        wrong = alphabet.at(static_cast<int>(rng.bounded(Alphabet::kSize)));
      }
      LetterSequence left = right;
      left.letters[static_cast<std::size_t>(idx)] = wrong;
      return {left, right};
    }
    case TransformationType::Sort: {
      if (run_length < 2) throw std::invalid_argument("sort needs run_length >= 2");
      LetterSequence right = base_run(alphabet, start, run_length, k);
      LetterSequence left = scrambled(right, rng);
      return {left, right};
    }
  }
  throw std::logic_error("unreachable: bad TransformationType");
}

namespace {

std::string format_problem_id(const ProblemSpec& spec) {
  std::string alpha = spec.alphabet.kind() == AlphabetKind::Real
                          ? "real"
                          : "syn" + std::to_string(*spec.alphabet.seed());
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(spec.seed));
  return std::string(type_slug(spec.ttype)) + "-k" + std::to_string(spec.interval) + "-" + alpha +
         "-L" + std::to_string(spec.run_length) + "-s" + hex;
}

void validate_spec(const ProblemSpec& spec) {
  if (spec.interval < 1) throw std::invalid_argument("problem spec: interval must be >= 1");
  if (spec.run_length < kMinRunLength || spec.run_length > kMaxRunLength) {
    throw std::invalid_argument("problem spec: run_length must be in [3, 8]");
  }
}

}  // namespace

Problem generate_problem(const ProblemSpec& spec, GenStats* stats) {
  validate_spec(spec);
  const auto bounds = start_bounds(spec.ttype, spec.interval, spec.run_length);
  const int count = bounds ? bounds->second - bounds->first + 1 : 0;
  if (count < 2) {
    // fewer than two in-bounds starts: source and target cannot differ
    throw GenerationExhaustedError("no room for distinct source/target starts with ttype=" +
                                   std::string(type_slug(spec.ttype)) +
                                   " k=" + std::to_string(spec.interval) +
                                   " L=" + std::to_string(spec.run_length));
  }

  SplitMix64 rng(spec.seed);
  const int k_max = std::max(kDefaultSolverKMax, spec.interval);
  for (int attempt = 0; attempt < kGenerationRetryBudget; ++attempt) {
    const int source_start = bounds->first + static_cast<int>(rng.bounded(count));
    int target_start = bounds->first + static_cast<int>(rng.bounded(count - 1));
    if (target_start >= source_start) ++target_start;  // distinct by construction

    auto [source_left, source_right] =
        apply_forward(spec.ttype, spec.interval, spec.alphabet, source_start, spec.run_length, rng);
    auto [target_stem, answer] =
        apply_forward(spec.ttype, spec.interval, spec.alphabet, target_start, spec.run_length, rng);

    // keep only instances the rule space pins to a single answer
    const SolveResult check =
        solve(source_left, source_right, target_stem, spec.alphabet, k_max);
    if (check.ambiguous || !check.chosen || *check.chosen != answer) {
      if (stats) ++stats->rejected_draws;
      continue;
    }
    if (answer == target_stem) {
      throw std::logic_error("generator produced an identity instance");  // impossible by cases
    }

    Problem p;
    p.id = format_problem_id(spec);
    p.source_left = std::move(source_left);
    p.source_right = std::move(source_right);
    p.target_stem = std::move(target_stem);
    p.answer = std::move(answer);
    p.spec = spec;
    return p;
  }
  throw GenerationExhaustedError("no unambiguous instance for " +
                                 std::string(type_slug(spec.ttype)) + " within " +
                                 std::to_string(kGenerationRetryBudget) + " retries");
}

std::vector<Problem> generate_set(TransformationType ttype, const Alphabet& alphabet, int k,
                                  int run_length, int n, std::uint64_t set_seed,
                                  GenStats* stats) {
  if (n < 1) throw std::invalid_argument("generate_set: n must be >= 1");
  std::vector<Problem> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    ProblemSpec spec;
    spec.ttype = ttype;
    spec.interval = k;
    spec.alphabet = alphabet;
    spec.run_length = run_length;
    spec.seed = derive_seed(set_seed, static_cast<std::uint64_t>(i));
    out.push_back(generate_problem(spec, stats));
  }
  return out;
}

}  // namespace lsa
