#include "lsa/solver.hpp"

#include <algorithm>
#include <stdexcept>

namespace lsa {

namespace {

bool differs_only_at(const LetterSequence& a, const LetterSequence& b, std::size_t idx) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool same = a.letters[i] == b.letters[i];
    if (i == idx ? same : !same) return false;
  }
  return true;
}

LetterSequence erased_at(const LetterSequence& s, std::size_t idx) {
  LetterSequence out = s;
  out.letters.erase(out.letters.begin() + static_cast<std::ptrdiff_t>(idx));
  return out;
}

int gap(const Alphabet& a, char from, char to) { return a.position(to) - a.position(from); }

void induce_one_type(TransformationType t, int k, const LetterSequence& left,
                     const LetterSequence& right, const Alphabet& a,
                     std::vector<InducedRule>& out) {
  switch (t) {
    case TransformationType::ExtendSequence: {
      if (right.size() != left.size() + 1 || left.empty()) return;
      if (!std::equal(left.letters.begin(), left.letters.end(), right.letters.begin())) return;
      if (gap(a, left.back(), right.back()) == k) out.push_back({t, k, std::nullopt});
      return;
    }
    case TransformationType::Successor: {
      if (left.empty() || !differs_only_at(left, right, left.size() - 1)) return;
      if (gap(a, left.back(), right.back()) == k) {
        out.push_back({t, k, static_cast<int>(left.size()) - 1});
      }
      return;
    }
    case TransformationType::Predecessor: {
      if (left.empty() || !differs_only_at(left, right, 0)) return;
      if (gap(a, left.front(), right.front()) == -k) out.push_back({t, k, 0});
      return;
    }
    case TransformationType::RemoveRedundant: {
      if (left.size() != right.size() + 1 || right.empty()) return;
      if (!is_step_run(a, right, k)) return;
      for (std::size_t i = 0; i + 1 < left.size(); ++i) {
        if (left.letters[i] == left.letters[i + 1] && erased_at(left, i) == right) {
          out.push_back({t, k, static_cast<int>(i)});
        }
      }
      return;
    }
    case TransformationType::FixAlphabetic: {
      if (left.size() != right.size() || left.size() < 3) return;
      if (!is_step_run(a, right, k)) return;
      for (std::size_t i = 1; i + 1 < left.size(); ++i) {  // interior positions only
        if (differs_only_at(left, right, i)) out.push_back({t, k, static_cast<int>(i)});
      }
      return;
    }
    case TransformationType::Sort: {
      if (left.size() != right.size() || left == right) return;
      if (sorted_by(a, left) != right) return;
      if (is_step_run(a, right, k)) out.push_back({t, k, std::nullopt});
      return;
    }
  }
}

}  // namespace

std::vector<InducedRule> induce(const LetterSequence& left, const LetterSequence& right,
                                const Alphabet& alphabet, int k_max) {
  if (left.empty() || right.empty()) throw std::invalid_argument("induce: empty sequence");
  if (k_max < 1) throw std::invalid_argument("induce: k_max must be >= 1");

  std::vector<InducedRule> rules;
  for (TransformationType t : kAllTransformationTypes) {
    for (int k = 1; k <= k_max; ++k) induce_one_type(t, k, left, right, alphabet, rules);
  }
  // soundness: a rule that does not reproduce the pair is a bug, not a result
  for (const InducedRule& r : rules) {
    const auto replay = apply_rule(r, left, alphabet);
    if (!replay || *replay != right) {
      throw std::logic_error("induce produced an unsound rule for type " +
                             std::string(type_slug(r.ttype)));
    }
  }
  return rules;
}

std::optional<LetterSequence> apply_rule(const InducedRule& rule, const LetterSequence& stem,
                                         const Alphabet& alphabet) {
  if (stem.empty()) return std::nullopt;
  switch (rule.ttype) {
    case TransformationType::ExtendSequence: {
      const auto next = alphabet.try_shift(stem.back(), rule.k);
      if (!next) return std::nullopt;
      LetterSequence out = stem;
      out.letters.push_back(*next);
      return out;
    }
    case TransformationType::Successor: {
      const auto next = alphabet.try_shift(stem.back(), rule.k);
      if (!next) return std::nullopt;
      LetterSequence out = stem;
      out.letters.back() = *next;
      return out;
    }
    case TransformationType::Predecessor: {
      const auto prev = alphabet.try_shift(stem.front(), -rule.k);
      if (!prev) return std::nullopt;
      LetterSequence out = stem;
      out.letters.front() = *prev;
      return out;
    }
    case TransformationType::RemoveRedundant: {
      // drop the stem's own adjacent duplicate; the residue must be a step-k
      // run. At most one removal can qualify: with two duplicate pairs any
      // single removal still leaves an equal-adjacent gap.
      std::optional<LetterSequence> found;
      for (std::size_t i = 0; i + 1 < stem.size(); ++i) {
        if (stem.letters[i] != stem.letters[i + 1]) continue;
        LetterSequence candidate = erased_at(stem, i);
        if (!is_step_run(alphabet, candidate, rule.k)) continue;
        if (found && *found != candidate) {
          throw std::logic_error("remove_redundant: two distinct residues");
        }
        found = std::move(candidate);
      }
      return found;
    }
    case TransformationType::FixAlphabetic: {
      // find the interior position whose replacement turns the stem into a
      // perfect step-k run; a run is determined by one fixed value, so at
      // most one position can work
      std::optional<LetterSequence> found;
      const std::size_t n = stem.size();
      if (n < 3) return std::nullopt;
      for (std::size_t i = 1; i + 1 < n; ++i) {
        bool plausible = true;
        for (std::size_t j = 0; j + 1 < n && plausible; ++j) {
          if (j == i - 1 || j == i) continue;  // gaps touching the hole
          if (!alphabet.contains(stem.letters[j]) || !alphabet.contains(stem.letters[j + 1]) ||
              gap(alphabet, stem.letters[j], stem.letters[j + 1]) != rule.k) {
            plausible = false;
          }
        }
        if (!plausible) continue;
        if (!alphabet.contains(stem.letters[i - 1]) || !alphabet.contains(stem.letters[i + 1])) {
          continue;
        }
        if (gap(alphabet, stem.letters[i - 1], stem.letters[i + 1]) != 2 * rule.k) continue;
        const auto corrected = alphabet.try_shift(stem.letters[i - 1], rule.k);
        if (!corrected || *corrected == stem.letters[i]) continue;  // nothing to fix
        LetterSequence candidate = stem;
        candidate.letters[i] = *corrected;
        if (found && *found != candidate) {
          throw std::logic_error("fix_alphabetic: two distinct repairs");
        }
        found = std::move(candidate);
      }
      return found;
    }
    case TransformationType::Sort: {
      for (char c : stem.letters) {
        if (!alphabet.contains(c)) return std::nullopt;
      }
      LetterSequence out = sorted_by(alphabet, stem);
      if (out == stem) return std::nullopt;  // already sorted
      if (!is_step_run(alphabet, out, rule.k)) return std::nullopt;
      return out;
    }
  }
  throw std::logic_error("unreachable: bad TransformationType");
}

SolveResult solve(const LetterSequence& source_left, const LetterSequence& source_right,
                  const LetterSequence& target_stem, const Alphabet& alphabet, int k_max) {
  SolveResult result;
  result.rules = induce(source_left, source_right, alphabet, k_max);
  for (const InducedRule& rule : result.rules) {
    auto answer = apply_rule(rule, target_stem, alphabet);
    if (!answer) continue;  // inapplicable on this stem
    if (std::find(result.answers.begin(), result.answers.end(), *answer) == result.answers.end()) {
      result.answers.push_back(std::move(*answer));
    }
  }
  std::sort(result.answers.begin(), result.answers.end(),
            [](const LetterSequence& a, const LetterSequence& b) { return a.letters < b.letters; });
  result.ambiguous = result.answers.size() > 1;
  if (result.answers.size() == 1) result.chosen = result.answers.front();
  return result;
}

}  // namespace lsa
