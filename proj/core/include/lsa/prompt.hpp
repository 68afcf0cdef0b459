#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "lsa/alphabet.hpp"
#include "lsa/transform.hpp"

namespace lsa {

enum class PromptStyle { Original, AlphabetPreamble };

std::string_view style_slug(PromptStyle style);
std::optional<PromptStyle> style_from_slug(std::string_view slug);

struct RenderOptions {
  /// When set, the pattern sentence uses the typographic apostrophe
  /// (U+2019) instead of ASCII '\''. Both variants are golden-filed.
  bool typographic_apostrophe = false;
};

struct RenderedPrompt {
  std::string text;
  std::string problem_id;
  PromptStyle style = PromptStyle::Original;
};

/// Render a problem to the exact prompt bytes. The two templates are:
///
///   Original:
///     Let's try to complete the pattern:\n\n[<A>] [<A'>]\n\n[<B>] [
///   AlphabetPreamble:
///     Use this fictional alphabet: [<26 letters>]. Let's try to complete
///     the pattern:\n\n[<A>] [<A'>]\n\n[<B>] [
///
/// where <X> joins the letters with single spaces and the preamble lists the
/// problem's governing alphabet. The text always ends mid-bracket at the
/// answer slot; render() checks that and the two \n\n separators on every
/// call.
RenderedPrompt render(const Problem& problem, PromptStyle style, const RenderOptions& opts = {});

enum class ParseError { Empty, BadToken };

std::string_view parse_error_tag(ParseError e);  // "empty" / "bad_token"

/// Outcome of parsing a raw model completion: either a letter sequence or a
/// tagged error, never an exception.
struct ParseResult {
  std::optional<LetterSequence> sequence;
  std::optional<ParseError> error;

  bool ok() const noexcept { return sequence.has_value(); }
};

/// Strip leading whitespace, truncate at the first ']' if present (else at
/// the first line break, else take everything), split on whitespace,
/// lowercase, and accept only single-letter tokens of the alphabet.
ParseResult parse_completion(std::string_view raw, const Alphabet& alphabet);

/// The completion string a cooperative model would produce for an answer:
/// the letters space-joined plus the closing bracket, e.g. "i j k m]".
std::string render_completion(const LetterSequence& answer);

}  // namespace lsa
