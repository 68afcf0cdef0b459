#include "lsa/prompt.hpp"

#include <fstream>
#include <set>

#include "doctest.h"
#include "lsa/serde.hpp"
#include "lsa/transform.hpp"
#include "test_util.hpp"

using namespace lsa;
using lsa::test::fixture_problem;
using lsa::test::seq;

namespace {

std::string golden(const std::string& name) {
  return read_file(std::string(LSA_TEST_DATA_DIR) + "/" + name);
}

}  // namespace

TEST_CASE("original style renders the exact template bytes") {
  const RenderedPrompt p = render(fixture_problem(), PromptStyle::Original);
  CHECK(p.text == "Let's try to complete the pattern:\n\n[a b c d] [a b c e]\n\n[i j k l] [");
  CHECK(p.text == golden("prompt_original_ascii.golden"));
  CHECK(p.problem_id == "fixture-successor-k1");
  CHECK(p.style == PromptStyle::Original);
}

TEST_CASE("preamble style lists the governing alphabet first") {
  const RenderedPrompt p = render(fixture_problem(), PromptStyle::AlphabetPreamble);
  CHECK(p.text.rfind("Use this fictional alphabet: [a b c d e f g h i j k l m n o p q r s t u v "
                     "w x y z]. ",
                     0) == 0);
  CHECK(p.text == golden("prompt_preamble_ascii.golden"));
}

TEST_CASE("typographic apostrophe variant is golden-filed too") {
  RenderOptions opts;
  opts.typographic_apostrophe = true;
  CHECK(render(fixture_problem(), PromptStyle::Original, opts).text ==
        golden("prompt_original_typographic.golden"));
  CHECK(render(fixture_problem(), PromptStyle::AlphabetPreamble, opts).text ==
        golden("prompt_preamble_typographic.golden"));
  // U+2019 in the pattern sentence
  CHECK(render(fixture_problem(), PromptStyle::Original, opts).text.find("Let\xE2\x80\x99s") !=
        std::string::npos);
}

TEST_CASE("synthetic alphabets flow into the preamble") {
  Problem p = fixture_problem();
  p.spec.alphabet = Alphabet::synthetic(9);
  CHECK(render(p, PromptStyle::AlphabetPreamble).text == golden("prompt_preamble_synthetic9.golden"));
}

TEST_CASE("every rendered prompt ends mid-bracket with two separators") {
  for (const PromptStyle style : {PromptStyle::Original, PromptStyle::AlphabetPreamble}) {
    for (std::uint64_t s = 1; s <= 20; ++s) {
      ProblemSpec spec;
      spec.ttype = kAllTransformationTypes[s % 6];
      spec.interval = 1 + static_cast<int>(s % 2);
      spec.alphabet = (s % 2 == 0) ? Alphabet::real() : Alphabet::synthetic(s);
      spec.run_length = is_single_letter_edit(spec.ttype) ? 4 : 5;
      spec.seed = s;
      const std::string text = render(generate_problem(spec), style).text;
      CHECK(text.back() == '[');
      int separators = 0;
      for (std::size_t i = 0; i + 1 < text.size(); ++i) {
        if (text[i] == '\n' && text[i + 1] == '\n') ++separators;
      }
      CHECK(separators == 2);
    }
  }
}

TEST_CASE("render is injective over distinct problems") {
  const Alphabet a = Alphabet::real();
  std::set<std::string> texts;
  const auto problems = generate_set(TransformationType::Successor, a, 2, 4, 40, 3);
  std::size_t distinct_triples = 0;
  std::set<std::string> triples;
  for (const Problem& p : problems) {
    triples.insert(p.source_left.joined() + "|" + p.source_right.joined() + "|" +
                   p.target_stem.joined());
    texts.insert(render(p, PromptStyle::Original).text);
  }
  distinct_triples = triples.size();
  CHECK(texts.size() == distinct_triples);
}

TEST_CASE("parse_completion happy paths") {
  const Alphabet a = Alphabet::real();
  CHECK(parse_completion("m n o p]", a).sequence == seq("mnop"));
  CHECK(parse_completion("  q r]\nThe pattern is complete", a).sequence == seq("qr"));
  CHECK(parse_completion("M N]", a).sequence == seq("mn"));      // lowercased
  CHECK(parse_completion("q r\nrest of text", a).sequence == seq("qr"));  // newline fallback
  CHECK(parse_completion("x y z", a).sequence == seq("xyz"));    // end-of-string fallback
  CHECK(parse_completion("\n\n  m n o p]", a).sequence == seq("mnop"));
}

TEST_CASE("']' wins over line breaks even on a later line") {
  const Alphabet a = Alphabet::real();
  const ParseResult r = parse_completion("a b\nc] x", a);
  CHECK(r.sequence == seq("abc"));
}

TEST_CASE("parse_completion error paths") {
  const Alphabet a = Alphabet::real();
  CHECK(parse_completion("", a).error == ParseError::Empty);
  CHECK(parse_completion("   ", a).error == ParseError::Empty);
  CHECK(parse_completion("]", a).error == ParseError::Empty);
  CHECK(parse_completion("\n", a).error == ParseError::Empty);
  CHECK(parse_completion("m n 42]", a).error == ParseError::BadToken);
  CHECK(parse_completion("mn op]", a).error == ParseError::BadToken);
  CHECK(parse_completion("m !]", a).error == ParseError::BadToken);
  CHECK_FALSE(parse_completion("m n 42]", a).ok());
}

TEST_CASE("round trip: a cooperative completion parses back to the answer") {
  SplitMix64 dummy(0);
  (void)dummy;
  for (std::uint64_t s = 1; s <= 30; ++s) {
    ProblemSpec spec;
    spec.ttype = kAllTransformationTypes[s % 6];
    spec.interval = 1 + static_cast<int>(s % 2);
    spec.alphabet = (s % 3 == 0) ? Alphabet::synthetic(s) : Alphabet::real();
    spec.run_length = is_single_letter_edit(spec.ttype) ? 4 : 5;
    spec.seed = s;
    const Problem p = generate_problem(spec);
    const ParseResult parsed = parse_completion(render_completion(p.answer), p.spec.alphabet);
    REQUIRE(parsed.ok());
    CHECK(*parsed.sequence == p.answer);
  }
}

TEST_CASE("parser survives hostile bytes") {
  const Alphabet a = Alphabet::real();
  SplitMix64 rng(31337);
  for (int iter = 0; iter < 500; ++iter) {
    std::string raw;
    const std::size_t n = rng.bounded(24);
    for (std::size_t i = 0; i < n; ++i) {
      raw.push_back(static_cast<char>(rng.bounded(256)));
    }
    const ParseResult r = parse_completion(raw, a);
    CHECK(r.sequence.has_value() != r.error.has_value());
  }
}
