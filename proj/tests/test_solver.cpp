#include "lsa/solver.hpp"

#include "doctest.h"
#include "lsa/rng.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace lsa;
using lsa::test::seq;

namespace {

bool has_rule(const std::vector<InducedRule>& rules, TransformationType t, int k) {
  for (const InducedRule& r : rules) {
    if (r.ttype == t && r.k == k) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("induce finds the generating rule and nothing bogus") {
  const Alphabet a = Alphabet::real();

  const auto extend = induce(seq("abcd"), seq("abcde"), a);
  CHECK(has_rule(extend, TransformationType::ExtendSequence, 1));
  CHECK(extend.size() == 1);

  const auto successor = induce(seq("abcd"), seq("abcf"), a);
  CHECK(has_rule(successor, TransformationType::Successor, 2));
  CHECK_FALSE(has_rule(successor, TransformationType::Successor, 1));

  const auto identity = induce(seq("abcd"), seq("abcd"), a);
  CHECK(identity.empty());  // no identity rule lives in the space

  const auto unrelated = induce(seq("ab"), seq("qq"), a);
  CHECK(unrelated.empty());
}

TEST_CASE("induce orders rules canonically and deterministically") {
  const Alphabet a = Alphabet::real();
  // [x x] -> [x] is a remove_redundant instance for every k
  const auto rules = induce(seq("cc"), seq("c"), a, 6);
  REQUIRE(rules.size() == 6);
  for (int k = 1; k <= 6; ++k) {
    CHECK(rules[static_cast<std::size_t>(k - 1)].ttype == TransformationType::RemoveRedundant);
    CHECK(rules[static_cast<std::size_t>(k - 1)].k == k);
    CHECK(rules[static_cast<std::size_t>(k - 1)].slot == 0);
  }
  CHECK(induce(seq("cc"), seq("c"), a, 6) == rules);
}

TEST_CASE("apply_rule per-type semantics") {
  const Alphabet a = Alphabet::real();

  CHECK(apply_rule({TransformationType::ExtendSequence, 1, std::nullopt}, seq("ijkl"), a) ==
        seq("ijklm"));
  CHECK(apply_rule({TransformationType::Successor, 2, 3}, seq("ijkl"), a) == seq("ijkn"));
  CHECK(apply_rule({TransformationType::Sort, 2, std::nullopt}, seq("eacig"), a) == seq("acegi"));
  CHECK(apply_rule({TransformationType::RemoveRedundant, 2, 1}, seq("acceg"), a) == seq("aceg"));
  CHECK(apply_rule({TransformationType::FixAlphabetic, 2, 2}, seq("acxgi"), a) == seq("acegi"));

  SUBCASE("inapplicable is a value, not an error") {
    // shift out of bounds
    CHECK_FALSE(apply_rule({TransformationType::Predecessor, 2, 0}, seq("adef"), a).has_value());
    CHECK_FALSE(apply_rule({TransformationType::ExtendSequence, 1, std::nullopt}, seq("wxyz"), a)
                    .has_value());
    // no duplicate present
    CHECK_FALSE(
        apply_rule({TransformationType::RemoveRedundant, 1, 0}, seq("abc"), a).has_value());
    // stem already sorted
    CHECK_FALSE(apply_rule({TransformationType::Sort, 1, std::nullopt}, seq("abc"), a).has_value());
    // sorted stem is not a step-k run for this k
    CHECK_FALSE(apply_rule({TransformationType::Sort, 2, std::nullopt}, seq("cab"), a).has_value());
    // nothing to fix in a perfect run
    CHECK_FALSE(
        apply_rule({TransformationType::FixAlphabetic, 1, 1}, seq("abc"), a).has_value());
  }
}

TEST_CASE("solve outcome shapes") {
  const Alphabet a = Alphabet::real();

  SUBCASE("unique answer") {
    const SolveResult r = solve(seq("abcd"), seq("abce"), seq("ijkl"), a);
    CHECK_FALSE(r.ambiguous);
    REQUIRE(r.chosen.has_value());
    CHECK(*r.chosen == seq("ijkm"));
  }

  SUBCASE("rules exist but none applies at the boundary") {
    const SolveResult r = solve(seq("abcd"), seq("abcde"), seq("wxyz"), a);
    CHECK_FALSE(r.rules.empty());
    CHECK(r.answers.empty());
    CHECK_FALSE(r.chosen.has_value());
    CHECK_FALSE(r.ambiguous);
  }

  SUBCASE("empty hypothesis set") {
    const SolveResult r = solve(seq("ab"), seq("qq"), seq("cd"), a);
    CHECK(r.rules.empty());
    CHECK(r.answers.empty());
    CHECK_FALSE(r.chosen.has_value());
    CHECK_FALSE(r.ambiguous);
  }
}

TEST_CASE("solve is deterministic") {
  const Alphabet a = Alphabet::synthetic(21);
  const Problem p = [&] {
    ProblemSpec spec;
    spec.ttype = TransformationType::Sort;
    spec.interval = 2;
    spec.alphabet = a;
    spec.run_length = 5;
    spec.seed = 77;
    return generate_problem(spec);
  }();
  const SolveResult r1 = solve(p.source_left, p.source_right, p.target_stem, a);
  const SolveResult r2 = solve(p.source_left, p.source_right, p.target_stem, a);
  CHECK(r1.rules == r2.rules);
  CHECK(r1.answers == r2.answers);
  CHECK(r1.chosen == r2.chosen);
}

TEST_CASE("completeness: forward-generated pairs always induce their rule") {
  SplitMix64 rng(2024);
  const Alphabet real = Alphabet::real();
  const Alphabet syn = Alphabet::synthetic(5);
  int checked = 0;
  for (int iter = 0; iter < 400; ++iter) {
    const Alphabet& a = (rng.bounded(2) == 0) ? real : syn;
    const auto t = kAllTransformationTypes[rng.bounded(6)];
    const int k = 1 + static_cast<int>(rng.bounded(6));
    const int min_len = is_single_letter_edit(t) ? 3 : 3;
    const int run_length = min_len + static_cast<int>(rng.bounded(3));
    const auto bounds = start_bounds(t, k, run_length);
    if (!bounds) continue;
    const int start =
        bounds->first + static_cast<int>(rng.bounded(bounds->second - bounds->first + 1));
    auto [left, right] = apply_forward(t, k, a, start, run_length, rng);
    CHECK(has_rule(induce(left, right, a, 6), t, k));
    ++checked;
  }
  CHECK(checked > 300);
}

TEST_CASE("soundness: every induced rule replays the source pair") {
  SplitMix64 rng(4242);
  const Alphabet a = Alphabet::real();
  for (int iter = 0; iter < 300; ++iter) {
    // random small pairs, often unrelated
    const std::size_t ln = 1 + rng.bounded(4);
    const std::size_t rn = 1 + rng.bounded(4);
    LetterSequence left, right;
    for (std::size_t i = 0; i < ln; ++i) left.letters.push_back(a.at(rng.bounded(26)));
    for (std::size_t i = 0; i < rn; ++i) right.letters.push_back(a.at(rng.bounded(26)));
    for (const InducedRule& rule : induce(left, right, a, 6)) {
      const auto replay = apply_rule(rule, left, a);
      REQUIRE(replay.has_value());
      CHECK(*replay == right);
    }
  }
}

TEST_CASE("solver agrees with the brute-force oracle on small instances") {
  SplitMix64 rng(777);
  const Alphabet real = Alphabet::real();
  const Alphabet syn = Alphabet::synthetic(13);
  int agreements = 0;
  for (int iter = 0; iter < 60; ++iter) {
    const Alphabet& a = (iter % 2 == 0) ? real : syn;
    LetterSequence left, right, stem;
    if (iter % 3 == 0) {
      // letter soup, usually no rule at all
      const std::size_t n = 1 + rng.bounded(3);
      for (std::size_t i = 0; i < n; ++i) left.letters.push_back(a.at(rng.bounded(26)));
      right = left;
      if (rng.bounded(2) == 0) right.letters.back() = a.at(rng.bounded(26));
      for (std::size_t i = 0; i < n; ++i) stem.letters.push_back(a.at(rng.bounded(26)));
    } else {
      const auto t = kAllTransformationTypes[rng.bounded(6)];
      const int k = 1 + static_cast<int>(rng.bounded(2));
      const auto bounds = start_bounds(t, k, 3);
      if (!bounds) continue;
      const int span = bounds->second - bounds->first + 1;
      const int s1 = bounds->first + static_cast<int>(rng.bounded(span));
      const int s2 = bounds->first + static_cast<int>(rng.bounded(span));
      auto [l, r] = apply_forward(t, k, a, s1, 3, rng);
      auto [stem_pair_left, unused] = apply_forward(t, k, a, s2, 3, rng);
      (void)unused;
      left = l;
      right = r;
      stem = stem_pair_left;
    }
    const SolveResult solved = solve(left, right, stem, a, 6);
    const auto expected =
        test_oracle::brute_force_answers(a, left.letters, right.letters, stem.letters, 6, 6);
    CHECK(test_oracle::answers_of(solved) == expected);
    ++agreements;
  }
  CHECK(agreements >= 50);
}
