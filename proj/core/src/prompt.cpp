#include "lsa/prompt.hpp"

#include <cctype>
#include <stdexcept>

namespace lsa {

std::string_view style_slug(PromptStyle style) {
  return style == PromptStyle::Original ? "original" : "preamble";
}

std::optional<PromptStyle> style_from_slug(std::string_view slug) {
  if (slug == "original") return PromptStyle::Original;
  if (slug == "preamble") return PromptStyle::AlphabetPreamble;
  return std::nullopt;
}

std::string_view parse_error_tag(ParseError e) {
  return e == ParseError::Empty ? "empty" : "bad_token";
}

namespace {

constexpr std::string_view kAsciiPattern = "Let's try to complete the pattern:";
constexpr std::string_view kTypographicPattern = "Let\xE2\x80\x99s try to complete the pattern:";

void check_rendered(const std::string& text) {
  if (text.empty() || text.back() != '[') {
    throw std::logic_error("rendered prompt must end with '['");
  }
  int separators = 0;
  for (std::size_t i = 0; i + 1 < text.size(); ++i) {
    if (text[i] == '\n' && text[i + 1] == '\n') ++separators;
  }
  if (separators != 2) {
    throw std::logic_error("rendered prompt must contain exactly two blank-line separators");
  }
}

}  // namespace

RenderedPrompt render(const Problem& problem, PromptStyle style, const RenderOptions& opts) {
  std::string text;
  if (style == PromptStyle::AlphabetPreamble) {
    text += "Use this fictional alphabet: [";
    text += problem.spec.alphabet.prompt_line();
    text += "]. ";
  }
  text += opts.typographic_apostrophe ? kTypographicPattern : kAsciiPattern;
  text += "\n\n";
  text += problem.source_left.bracketed();
  text += ' ';
  text += problem.source_right.bracketed();
  text += "\n\n";
  text += problem.target_stem.bracketed();
  text += " [";

  check_rendered(text);
  return RenderedPrompt{std::move(text), problem.id, style};
}

ParseResult parse_completion(std::string_view raw, const Alphabet& alphabet) {
  std::size_t begin = 0;
  while (begin < raw.size() && std::isspace(static_cast<unsigned char>(raw[begin]))) ++begin;
  std::string_view body = raw.substr(begin);

  // ']' terminates the answer slot opened by the prompt; it wins over line
  // breaks even when it appears on a later line
  std::size_t cut = body.find(']');
  if (cut == std::string_view::npos) cut = body.find_first_of("\r\n");
  if (cut != std::string_view::npos) body = body.substr(0, cut);

  LetterSequence seq;
  std::size_t i = 0;
  while (i < body.size()) {
    while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
    std::size_t start = i;
    while (i < body.size() && !std::isspace(static_cast<unsigned char>(body[i]))) ++i;
    if (i == start) break;
    std::string_view token = body.substr(start, i - start);
    if (token.size() != 1) return {std::nullopt, ParseError::BadToken};
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(token[0])));
    if (!alphabet.contains(c)) return {std::nullopt, ParseError::BadToken};
    seq.letters.push_back(c);
  }
  if (seq.empty()) return {std::nullopt, ParseError::Empty};
  return {std::move(seq), std::nullopt};
}

std::string render_completion(const LetterSequence& answer) { return answer.joined() + "]"; }

}  // namespace lsa
