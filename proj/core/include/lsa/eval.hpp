#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lsa/alphabet.hpp"
#include "lsa/model_client.hpp"
#include "lsa/prompt.hpp"
#include "lsa/transform.hpp"

namespace lsa {

/// A named experimental setting: which alphabet, which interval, which
/// prompt style.
struct Condition {
  std::string label;
  AlphabetKind alphabet_kind = AlphabetKind::Real;
  int interval = 1;
  PromptStyle prompt_style = PromptStyle::Original;

  bool operator==(const Condition&) const = default;
};

/// The four standard settings plus the two appendix settings, in report order:
/// original, interval2, interval2_prompt, interval2_synthetic, interval5,
/// synthetic_interval1.
std::vector<Condition> standard_conditions();
std::optional<Condition> condition_by_label(std::string_view label);

/// One scored model interaction.
struct EvalRecord {
  std::string problem_id;
  std::string condition;
  std::string ttype;       // type slug
  std::string prompt_hash; // "fnv1a64:<16 hex digits>" of the prompt bytes
  std::string raw_completion;
  std::optional<LetterSequence> parsed;
  std::optional<ParseError> parse_error;
  bool correct = false;
  bool alt_answer_wider_k = false;  // parsed answer lies in the solver's full
                                    // answer set at k_max=6; logged, never scored
  bool scored = true;               // false only for lenient-mode transport failures
  std::optional<std::string> transport_error;
};

struct EvalOptions {
  PromptStyle style = PromptStyle::Original;
  std::string condition_label = "custom";
  bool strict = true;  // transport failures abort the run instead of being excluded
  RenderOptions render;
  int alt_k_max = 6;
  int parallelism = 1;  // capped by the model's bound for live sources
};

/// Render, complete, parse and score every problem. Records come back in
/// problem order regardless of completion arrival order. In strict mode a
/// transport/API failure propagates; in lenient mode it yields an unscored
/// record. AuthError and GenerationExhaustedError always propagate.
std::vector<EvalRecord> run_on_problems(const std::vector<Problem>& problems,
                                        CompletionSource& model, const EvalOptions& opts);

struct GenDefaults {
  int change_run_length = kDefaultChangeRunLength;
  int full_run_length = kDefaultFullRunLength;
};

/// Alphabet for a condition under a run seed: the real order, or the
/// synthetic permutation seeded with derive_seed(run_seed, 0).
Alphabet condition_alphabet(const Condition& condition, std::uint64_t run_seed);

/// n problems of one type under a condition; the per-type set seed is
/// derive_seed(run_seed, 1 + type_index).
std::vector<Problem> generate_condition_set(const Condition& condition, TransformationType ttype,
                                            int n, std::uint64_t run_seed,
                                            const GenDefaults& defaults = {});

/// All six types, n problems each, in report order.
std::vector<Problem> generate_condition_problems(const Condition& condition, int n_per_type,
                                                 std::uint64_t run_seed,
                                                 const GenDefaults& defaults = {});

/// Generate the condition's problems and evaluate the model on them.
std::vector<EvalRecord> run(const Condition& condition, CompletionSource& model, int n_per_type,
                            std::uint64_t run_seed, bool strict = true,
                            const RenderOptions& render = {}, const GenDefaults& defaults = {});

/// Strict generative accuracy: the parsed answer equals the stored ground
/// truth letter for letter.
bool score(const std::optional<LetterSequence>& parsed, const Problem& problem);

/// Per-(condition, ttype) accuracy cell. accuracy is the exact decimal
/// rendering of n_correct/n (see exact_decimal).
struct AccuracyCell {
  std::string condition;
  std::string ttype;
  std::int64_t n = 0;
  std::int64_t n_correct = 0;
  std::string accuracy;

  bool operator==(const AccuracyCell&) const = default;
};

struct AccuracyReport {
  std::vector<AccuracyCell> cells;               // condition-major, type-minor order
  std::vector<std::string> condition_order;      // standard labels first, then others
  std::vector<std::string> ttype_order;          // fixed chart order
  std::int64_t excluded_unscored = 0;            // lenient-mode exclusions

  bool operator==(const AccuracyReport&) const = default;
};

/// Fold records into per-cell counts over an id-sorted copy, so the result
/// does not depend on input order. Unscored records are counted in
/// excluded_unscored and omitted from denominators.
AccuracyReport aggregate(const std::vector<EvalRecord>& records);

enum class ReportFormat { Csv, Json, PlotData };
std::optional<ReportFormat> report_format_from_slug(std::string_view slug);

/// Serialize a report. CSV columns: condition,ttype,n,n_correct,accuracy.
/// PlotData emits one grouped-bar series per condition over the fixed type
/// order. All three are deterministic byte-for-byte.
std::string export_report(const AccuracyReport& report, ReportFormat format);

/// Exact decimal rendering of the rational n_correct/n: terminating
/// expansions are printed in full ("13/50" -> "0.26", "1/8" -> "0.125"),
/// non-terminating ones are truncated at 12 fractional digits.
std::string exact_decimal(std::int64_t numerator, std::int64_t denominator);

/// FNV-1a 64-bit hash, hex encoded; used to fingerprint prompt bytes.
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace lsa
