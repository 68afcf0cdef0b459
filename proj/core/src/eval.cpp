#include "lsa/eval.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "lsa/errors.hpp"
#include "lsa/rng.hpp"
#include "lsa/solver.hpp"
#include "lsa/version.hpp"

namespace lsa {

using nlohmann::ordered_json;

std::vector<Condition> standard_conditions() {
  return {
      {"original", AlphabetKind::Real, 1, PromptStyle::Original},
      {"interval2", AlphabetKind::Real, 2, PromptStyle::Original},
      {"interval2_prompt", AlphabetKind::Real, 2, PromptStyle::AlphabetPreamble},
      {"interval2_synthetic", AlphabetKind::Synthetic, 2, PromptStyle::AlphabetPreamble},
      {"interval5", AlphabetKind::Real, 5, PromptStyle::Original},
      {"synthetic_interval1", AlphabetKind::Synthetic, 1, PromptStyle::AlphabetPreamble},
  };
}

std::optional<Condition> condition_by_label(std::string_view label) {
  for (const Condition& c : standard_conditions()) {
    if (c.label == label) return c;
  }
  return std::nullopt;
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool score(const std::optional<LetterSequence>& parsed, const Problem& problem) {
  return parsed.has_value() && *parsed == problem.answer;
}

Alphabet condition_alphabet(const Condition& condition, std::uint64_t run_seed) {
  if (condition.alphabet_kind == AlphabetKind::Real) return Alphabet::real();
  return Alphabet::synthetic(derive_seed(run_seed, 0));
}

std::vector<Problem> generate_condition_set(const Condition& condition, TransformationType ttype,
                                            int n, std::uint64_t run_seed,
                                            const GenDefaults& defaults) {
  const Alphabet alphabet = condition_alphabet(condition, run_seed);
  const int run_length =
      is_single_letter_edit(ttype) ? defaults.change_run_length : defaults.full_run_length;
  const std::uint64_t set_seed =
      derive_seed(run_seed, 1 + static_cast<std::uint64_t>(type_index(ttype)));
  return generate_set(ttype, alphabet, condition.interval, run_length, n, set_seed);
}

std::vector<Problem> generate_condition_problems(const Condition& condition, int n_per_type,
                                                 std::uint64_t run_seed,
                                                 const GenDefaults& defaults) {
  std::vector<Problem> out;
  out.reserve(static_cast<std::size_t>(n_per_type) * kAllTransformationTypes.size());
  for (TransformationType t : kAllTransformationTypes) {
    auto set = generate_condition_set(condition, t, n_per_type, run_seed, defaults);
    for (auto& p : set) out.push_back(std::move(p));
  }
  return out;
}

namespace {

struct Completion {
  std::string raw;
  std::optional<std::string> transport_error;
};

std::vector<Completion> fetch_completions(const std::vector<Problem>& problems,
                                          const std::vector<RenderedPrompt>& prompts,
                                          CompletionSource& model, const EvalOptions& opts) {
  std::vector<Completion> out(problems.size());
  auto fetch_one = [&](std::size_t i) {
    try {
      out[i].raw = model.complete_for(problems[i], prompts[i]);
    } catch (const AuthError&) {
      throw;
    } catch (const TransportError& e) {
      if (opts.strict) throw;
      out[i].transport_error = e.what();
    } catch (const ApiError& e) {
      if (opts.strict) throw;
      out[i].transport_error = e.what();
    }
  };

  const int par = model.scripted() ? 1 : std::max(1, opts.parallelism);
  if (par == 1 || problems.size() < 2) {
    for (std::size_t i = 0; i < problems.size(); ++i) fetch_one(i);
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= problems.size()) return;
      {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (failure) return;
      }
      try {
        fetch_one(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(par), problems.size());
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace

std::vector<EvalRecord> run_on_problems(const std::vector<Problem>& problems,
                                        CompletionSource& model, const EvalOptions& opts) {
  std::vector<RenderedPrompt> prompts;
  prompts.reserve(problems.size());
  for (const Problem& p : problems) prompts.push_back(render(p, opts.style, opts.render));

  const std::vector<Completion> completions = fetch_completions(problems, prompts, model, opts);

  std::vector<EvalRecord> records;
  records.reserve(problems.size());
  for (std::size_t i = 0; i < problems.size(); ++i) {
    const Problem& p = problems[i];
    EvalRecord rec;
    rec.problem_id = p.id;
    rec.condition = opts.condition_label;
    rec.ttype = std::string(type_slug(p.spec.ttype));
    rec.prompt_hash = "fnv1a64:" + fnv1a64_hex(prompts[i].text);
    if (completions[i].transport_error) {
      rec.scored = false;
      rec.transport_error = completions[i].transport_error;
      records.push_back(std::move(rec));
      continue;
    }
    rec.raw_completion = completions[i].raw;
    ParseResult parsed = parse_completion(rec.raw_completion, p.spec.alphabet);
    rec.parsed = parsed.sequence;
    rec.parse_error = parsed.error;
    rec.correct = score(rec.parsed, p);
    if (rec.parsed) {
      const SolveResult wide = solve(p.source_left, p.source_right, p.target_stem,
                                     p.spec.alphabet, std::max(opts.alt_k_max, p.spec.interval));
      rec.alt_answer_wider_k =
          std::find(wide.answers.begin(), wide.answers.end(), *rec.parsed) != wide.answers.end();
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<EvalRecord> run(const Condition& condition, CompletionSource& model, int n_per_type,
                            std::uint64_t run_seed, bool strict, const RenderOptions& render_opts,
                            const GenDefaults& defaults) {
  EvalOptions opts;
  opts.style = condition.prompt_style;
  opts.condition_label = condition.label;
  opts.strict = strict;
  opts.render = render_opts;
  const std::vector<Problem> problems =
      generate_condition_problems(condition, n_per_type, run_seed, defaults);
  return run_on_problems(problems, model, opts);
}

std::string exact_decimal(std::int64_t numerator, std::int64_t denominator) {
  if (denominator <= 0 || numerator < 0 || numerator > denominator) {
    throw std::invalid_argument("exact_decimal: need 0 <= numerator <= denominator, denominator > 0");
  }
  if (numerator == 0) return "0.0";
  if (numerator == denominator) return "1.0";

  const std::int64_t g = std::gcd(numerator, denominator);
  const std::int64_t num = numerator / g;
  std::int64_t den = denominator / g;

  // number of digits of a terminating expansion = max exponent of 2 and 5
  std::int64_t stripped = den;
  int twos = 0;
  int fives = 0;
  while (stripped % 2 == 0) {
    stripped /= 2;
    ++twos;
  }
  while (stripped % 5 == 0) {
    stripped /= 5;
    ++fives;
  }
  const bool terminating = stripped == 1;
  const int digits = terminating ? std::max(twos, fives) : 12;

  std::string out = "0.";
  std::int64_t remainder = num;
  for (int d = 0; d < digits; ++d) {
    remainder *= 10;
    out.push_back(static_cast<char>('0' + remainder / den));
    remainder %= den;
  }
  return out;
}

namespace {

int standard_condition_rank(const std::string& label) {
  const auto conditions = standard_conditions();
  for (std::size_t i = 0; i < conditions.size(); ++i) {
    if (conditions[i].label == label) return static_cast<int>(i);
  }
  return -1;
}

int ttype_rank(const std::string& slug) {
  const auto t = type_from_slug(slug);
  return t ? type_index(*t) : -1;
}

std::vector<std::string> ordered_labels(const std::vector<std::string>& present,
                                        int (*rank)(const std::string&)) {
  std::vector<std::string> out = present;
  std::sort(out.begin(), out.end(), [&](const std::string& a, const std::string& b) {
    const int ra = rank(a);
    const int rb = rank(b);
    if ((ra >= 0) != (rb >= 0)) return ra >= 0;  // known labels first
    if (ra >= 0) return ra < rb;
    return a < b;
  });
  return out;
}

int ttype_rank_wrapper(const std::string& s) { return ttype_rank(s); }

}  // namespace

AccuracyReport aggregate(const std::vector<EvalRecord>& records) {
  if (records.empty()) throw std::invalid_argument("aggregate: no records");

  std::vector<const EvalRecord*> sorted;
  sorted.reserve(records.size());
  for (const EvalRecord& r : records) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](const EvalRecord* a, const EvalRecord* b) {
    if (a->condition != b->condition) return a->condition < b->condition;
    return a->problem_id < b->problem_id;
  });

  struct Counts {
    std::int64_t n = 0;
    std::int64_t n_correct = 0;
  };
  std::map<std::pair<std::string, std::string>, Counts> cells;
  std::vector<std::string> conditions_present;
  std::vector<std::string> ttypes_present;
  std::int64_t excluded = 0;

  for (const EvalRecord* r : sorted) {
    if (!r->scored) {
      ++excluded;
      continue;
    }
    auto& cell = cells[{r->condition, r->ttype}];
    ++cell.n;
    if (r->correct) ++cell.n_correct;
    if (std::find(conditions_present.begin(), conditions_present.end(), r->condition) ==
        conditions_present.end()) {
      conditions_present.push_back(r->condition);
    }
    if (std::find(ttypes_present.begin(), ttypes_present.end(), r->ttype) == ttypes_present.end()) {
      ttypes_present.push_back(r->ttype);
    }
  }

  AccuracyReport report;
  report.excluded_unscored = excluded;
  report.condition_order = ordered_labels(conditions_present, standard_condition_rank);
  report.ttype_order = ordered_labels(ttypes_present, ttype_rank_wrapper);
  for (const std::string& cond : report.condition_order) {
    for (const std::string& tt : report.ttype_order) {
      const auto it = cells.find({cond, tt});
      if (it == cells.end()) continue;
      AccuracyCell cell;
      cell.condition = cond;
      cell.ttype = tt;
      cell.n = it->second.n;
      cell.n_correct = it->second.n_correct;
      cell.accuracy = it->second.n > 0 ? exact_decimal(it->second.n_correct, it->second.n) : "0.0";
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

std::optional<ReportFormat> report_format_from_slug(std::string_view slug) {
  if (slug == "csv") return ReportFormat::Csv;
  if (slug == "json") return ReportFormat::Json;
  if (slug == "plotdata") return ReportFormat::PlotData;
  return std::nullopt;
}

namespace {

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += "\"\"";
    else quoted.push_back(c);
  }
  quoted.push_back('"');
  return quoted;
}

const AccuracyCell* find_cell(const AccuracyReport& report, const std::string& cond,
                              const std::string& tt) {
  for (const AccuracyCell& c : report.cells) {
    if (c.condition == cond && c.ttype == tt) return &c;
  }
  return nullptr;
}

}  // namespace

std::string export_report(const AccuracyReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Csv: {
      std::string out = "condition,ttype,n,n_correct,accuracy\n";
      for (const AccuracyCell& c : report.cells) {
        out += csv_field(c.condition) + "," + csv_field(c.ttype) + "," + std::to_string(c.n) + "," +
               std::to_string(c.n_correct) + "," + c.accuracy + "\n";
      }
      if (report.excluded_unscored > 0) {
        out += "# excluded_unscored," + std::to_string(report.excluded_unscored) + "\n";
      }
      return out;
    }
    case ReportFormat::Json: {
      ordered_json j;
      j["schema_version"] = kSchemaVersion;
      j["cells"] = ordered_json::array();
      for (const AccuracyCell& c : report.cells) {
        ordered_json cell;
        cell["condition"] = c.condition;
        cell["ttype"] = c.ttype;
        cell["n"] = c.n;
        cell["n_correct"] = c.n_correct;
        cell["accuracy"] = std::stod(c.accuracy);
        j["cells"].push_back(std::move(cell));
      }
      j["condition_order"] = report.condition_order;
      j["ttype_order"] = report.ttype_order;
      j["excluded_unscored"] = report.excluded_unscored;
      return j.dump(2) + "\n";
    }
    case ReportFormat::PlotData: {
      ordered_json j;
      j["schema_version"] = kSchemaVersion;
      j["ttype_order"] = report.ttype_order;
      j["series"] = ordered_json::array();
      for (const std::string& cond : report.condition_order) {
        ordered_json series;
        series["condition"] = cond;
        series["values"] = ordered_json::array();
        for (const std::string& tt : report.ttype_order) {
          const AccuracyCell* cell = find_cell(report, cond, tt);
          if (cell) {
            series["values"].push_back(std::stod(cell->accuracy));
          } else {
            series["values"].push_back(nullptr);
          }
        }
        j["series"].push_back(std::move(series));
      }
      return j.dump(2) + "\n";
    }
  }
  throw std::logic_error("unreachable: bad ReportFormat");
}

}  // namespace lsa
