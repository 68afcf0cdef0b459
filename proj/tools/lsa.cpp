// lsa: letter-string analogy benchmark harness.
//
// Subcommands wire procedural problem generation, the symbolic solver, prompt
// rendering, model evaluation and report aggregation into reproducible runs:
//
//   lsa gen         generate a problem file for a condition
//   lsa solve       run the rule-induction solver over a problem file
//   lsa prompt-dump render prompts to stdout or one .txt per problem
//   lsa eval        evaluate a live endpoint or a scripted model
//   lsa report      merge record files into a CSV/JSON/plotdata report
//
// Every subcommand is deterministic under --seed and writes a manifest that
// is sufficient to re-execute it (secrets excluded; the API key only ever
// travels through an environment variable).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lsa/errors.hpp"
#include "lsa/eval.hpp"
#include "lsa/model_client.hpp"
#include "lsa/prompt.hpp"
#include "lsa/serde.hpp"
#include "lsa/solver.hpp"
#include "lsa/transform.hpp"
#include "lsa/version.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;       // bad flags, bad/empty inputs, schema mismatch
constexpr int kExitExhausted = 3;   // problem generation gave up
constexpr int kExitAuth = 4;        // missing or rejected credential
constexpr int kExitTransport = 5;   // strict-mode transport failure

struct GenArgs {
  std::string condition_label;
  std::string alphabet_kind;
  int interval = 0;
  std::string style = "original";
  std::vector<std::string> ttypes;
  int n = 50;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> alphabet_seed;
  int len_change = lsa::kDefaultChangeRunLength;
  int len_full = lsa::kDefaultFullRunLength;
  std::string out;
};

struct EvalArgs {
  std::string problems;
  std::string scripted;
  std::string fixed_text;
  std::string transcript;
  std::string endpoint;
  std::string model_name = "text-davinci-003";
  double temperature = 0.0;
  int max_tokens = 20;
  std::string api_key_env = "OPENAI_API_KEY";
  double timeout = 30.0;
  int max_attempts = 5;
  int parallel = 4;
  std::string condition_label;
  std::string style;
  bool lenient = false;
  bool typographic = false;
  int alt_k_max = lsa::kDefaultSolverKMax;
  std::uint64_t seed = 0;
  std::string out;
};

struct SolveArgs {
  std::string problems;
  int k_max = lsa::kDefaultSolverKMax;
  std::string out;
};

struct DumpArgs {
  std::string problems;
  std::string style = "original";
  bool typographic = false;
  std::string out_dir;
};

struct ReportArgs {
  std::vector<std::string> records;
  std::string format = "csv";
  std::string out;
};

ordered_json manifest_skeleton(const std::string& subcommand, std::uint64_t seed) {
  ordered_json m;
  m["schema_version"] = lsa::kSchemaVersion;
  m["tool_version"] = lsa::kToolVersion;
  m["prompt_format_version"] = lsa::kPromptFormatVersion;
  m["subcommand"] = subcommand;
  m["seed"] = seed;
  m["created_at"] = lsa::iso8601_utc_now();
  return m;
}

ordered_json condition_to_json(const lsa::Condition& c) {
  ordered_json j;
  j["label"] = c.label;
  j["alphabet_kind"] = c.alphabet_kind == lsa::AlphabetKind::Real ? "real" : "synthetic";
  j["interval"] = c.interval;
  j["prompt_style"] = std::string(lsa::style_slug(c.prompt_style));
  return j;
}

lsa::Condition resolve_condition(const std::string& label, const std::string& alphabet_kind,
                                 int interval, const std::string& style) {
  if (!label.empty()) {
    const auto c = lsa::condition_by_label(label);
    if (!c) throw CLI::ValidationError("--condition", "unknown condition label: " + label);
    return *c;
  }
  if (alphabet_kind.empty() || interval < 1) {
    throw CLI::ValidationError(
        "--condition", "give --condition LABEL, or --alphabet real|synthetic with --interval K");
  }
  lsa::Condition c;
  c.label = "custom";
  if (alphabet_kind == "real") c.alphabet_kind = lsa::AlphabetKind::Real;
  else if (alphabet_kind == "synthetic") c.alphabet_kind = lsa::AlphabetKind::Synthetic;
  else throw CLI::ValidationError("--alphabet", "must be real or synthetic");
  c.interval = interval;
  const auto st = lsa::style_from_slug(style);
  if (!st) throw CLI::ValidationError("--style", "must be original or preamble");
  c.prompt_style = *st;
  return c;
}

std::vector<lsa::TransformationType> resolve_ttypes(const std::vector<std::string>& slugs) {
  if (slugs.empty()) {
    return {lsa::kAllTransformationTypes.begin(), lsa::kAllTransformationTypes.end()};
  }
  std::vector<lsa::TransformationType> out;
  for (const std::string& slug : slugs) {
    const auto t = lsa::type_from_slug(slug);
    if (!t) throw CLI::ValidationError("--ttype", "unknown transformation type: " + slug);
    out.push_back(*t);
  }
  return out;
}

int run_gen(const GenArgs& args) {
  lsa::Condition condition =
      resolve_condition(args.condition_label, args.alphabet_kind, args.interval, args.style);
  const std::vector<lsa::TransformationType> ttypes = resolve_ttypes(args.ttypes);

  lsa::Alphabet alphabet = condition.alphabet_kind == lsa::AlphabetKind::Real
                               ? lsa::Alphabet::real()
                               : lsa::Alphabet::synthetic(args.alphabet_seed
                                                              ? *args.alphabet_seed
                                                              : lsa::derive_seed(args.seed, 0));

  std::vector<lsa::Problem> problems;
  lsa::GenStats stats;
  for (lsa::TransformationType t : ttypes) {
    const int run_length = lsa::is_single_letter_edit(t) ? args.len_change : args.len_full;
    const std::uint64_t set_seed =
        lsa::derive_seed(args.seed, 1 + static_cast<std::uint64_t>(lsa::type_index(t)));
    auto set =
        lsa::generate_set(t, alphabet, condition.interval, run_length, args.n, set_seed, &stats);
    for (auto& p : set) problems.push_back(std::move(p));
  }

  std::ostringstream body;
  lsa::write_problems_jsonl(body, problems);
  lsa::write_file_atomic(args.out, body.str());

  ordered_json manifest = manifest_skeleton("gen", args.seed);
  manifest["condition"] = condition_to_json(condition);
  manifest["alphabet"] = lsa::alphabet_manifest_json(alphabet);
  ordered_json params;
  params["n_per_type"] = args.n;
  params["run_length_change"] = args.len_change;
  params["run_length_full"] = args.len_full;
  ordered_json type_list = ordered_json::array();
  for (lsa::TransformationType t : ttypes) type_list.push_back(std::string(lsa::type_slug(t)));
  params["ttypes"] = type_list;
  manifest["params"] = params;
  manifest["rejected_draws"] = stats.rejected_draws;
  manifest["outputs"] = ordered_json::array({args.out});
  lsa::write_file_atomic(args.out + ".manifest.json", manifest.dump(2) + "\n");

  std::cout << "wrote " << problems.size() << " problems to " << args.out << "\n";
  return kExitOk;
}

int run_solve(const SolveArgs& args) {
  const std::vector<lsa::Problem> problems = lsa::read_problems_file(args.problems);
  if (problems.empty()) {
    std::cerr << "error: no problems in " << args.problems << "\n";
    return kExitUsage;
  }
  std::ostringstream body;
  for (const lsa::Problem& p : problems) {
    const int k_max = std::max(args.k_max, p.spec.interval);
    const lsa::SolveResult result =
        lsa::solve(p.source_left, p.source_right, p.target_stem, p.spec.alphabet, k_max);
    body << lsa::solve_result_to_json(p.id, result).dump() << '\n';
  }
  if (args.out.empty()) {
    std::cout << body.str();
  } else {
    lsa::write_file_atomic(args.out, body.str());
    std::cout << "wrote " << problems.size() << " solve results to " << args.out << "\n";
  }
  return kExitOk;
}

int run_prompt_dump(const DumpArgs& args) {
  const std::vector<lsa::Problem> problems = lsa::read_problems_file(args.problems);
  if (problems.empty()) {
    std::cerr << "error: no problems in " << args.problems << "\n";
    return kExitUsage;
  }
  const auto style = lsa::style_from_slug(args.style);
  if (!style) {
    std::cerr << "error: --style must be original or preamble\n";
    return kExitUsage;
  }
  lsa::RenderOptions opts;
  opts.typographic_apostrophe = args.typographic;

  if (args.out_dir.empty()) {
    for (const lsa::Problem& p : problems) {
      std::cout << lsa::render(p, *style, opts).text << "\n";
    }
    return kExitOk;
  }
  fs::create_directories(args.out_dir);
  for (const lsa::Problem& p : problems) {
    // prompt files carry the exact prompt bytes, no trailing newline
    lsa::write_file_atomic(fs::path(args.out_dir) / (p.id + ".txt"),
                           lsa::render(p, *style, opts).text);
  }
  std::cout << "wrote " << problems.size() << " prompts to " << args.out_dir << "\n";
  return kExitOk;
}

int run_eval(const EvalArgs& args) {
  const std::vector<lsa::Problem> problems = lsa::read_problems_file(args.problems);
  if (problems.empty()) {
    std::cerr << "error: no problems in " << args.problems << "\n";
    return kExitUsage;
  }

  lsa::EvalOptions opts;
  opts.strict = !args.lenient;
  opts.render.typographic_apostrophe = args.typographic;
  opts.alt_k_max = args.alt_k_max;
  opts.parallelism = args.parallel;
  if (!args.condition_label.empty()) {
    if (const auto c = lsa::condition_by_label(args.condition_label)) {
      opts.style = c->prompt_style;
      opts.condition_label = c->label;
    } else {
      opts.condition_label = args.condition_label;
      const auto st = lsa::style_from_slug(args.style.empty() ? "original" : args.style);
      if (!st) {
        std::cerr << "error: --style must be original or preamble\n";
        return kExitUsage;
      }
      opts.style = *st;
    }
  } else {
    opts.condition_label = "custom";
    const auto st = lsa::style_from_slug(args.style.empty() ? "original" : args.style);
    if (!st) {
      std::cerr << "error: --style must be original or preamble\n";
      return kExitUsage;
    }
    opts.style = *st;
  }
  if (!args.style.empty()) {
    const auto st = lsa::style_from_slug(args.style);
    if (!st) {
      std::cerr << "error: --style must be original or preamble\n";
      return kExitUsage;
    }
    opts.style = *st;  // explicit style wins over the condition's
  }

  const std::string transcript_path = args.out + ".transcript.jsonl";
  std::ofstream transcript_stream;
  std::unique_ptr<lsa::TranscriptWriter> transcript;
  std::unique_ptr<lsa::CompletionSource> model;
  ordered_json model_manifest;

  if (!args.scripted.empty()) {
    lsa::ScriptedKind kind;
    if (args.scripted == "oracle") kind = lsa::ScriptedKind::Oracle;
    else if (args.scripted == "copy-target") kind = lsa::ScriptedKind::CopyTarget;
    else if (args.scripted == "fixed") kind = lsa::ScriptedKind::FixedText;
    else if (args.scripted == "recorder") kind = lsa::ScriptedKind::Recorder;
    else {
      std::cerr << "error: --scripted must be oracle, copy-target, fixed or recorder\n";
      return kExitUsage;
    }
    if (kind == lsa::ScriptedKind::Recorder && args.transcript.empty()) {
      std::cerr << "error: --scripted recorder needs --transcript FILE\n";
      return kExitUsage;
    }
    model = lsa::make_scripted(kind, args.fixed_text, args.transcript);
    model_manifest["scripted"] = args.scripted;
    if (kind == lsa::ScriptedKind::FixedText) model_manifest["fixed_text"] = args.fixed_text;
    if (kind == lsa::ScriptedKind::Recorder) model_manifest["transcript"] = args.transcript;
  } else if (!args.endpoint.empty()) {
    lsa::ModelParams params;
    params.model_name = args.model_name;
    params.temperature = args.temperature;
    params.max_tokens = args.max_tokens;
    params.endpoint_url = args.endpoint;
    params.api_key_env = args.api_key_env;
    params.timeout_seconds = args.timeout;
    params.max_attempts = args.max_attempts;
    params.parallelism = args.parallel;
    // fail before any file or network activity when the credential is absent
    const char* key = std::getenv(params.api_key_env.c_str());
    if (key == nullptr || *key == '\0') {
      throw lsa::AuthError("credential environment variable " + params.api_key_env +
                           " is empty or unset");
    }
    transcript_stream.open(transcript_path, std::ios::trunc);
    if (!transcript_stream) {
      std::cerr << "error: cannot write " << transcript_path << "\n";
      return kExitUsage;
    }
    transcript = std::make_unique<lsa::TranscriptWriter>(transcript_stream);
    model = std::make_unique<lsa::HttpModel>(params, transcript.get());
    model_manifest["model_name"] = params.model_name;
    model_manifest["endpoint_url"] = params.endpoint_url;
    model_manifest["temperature"] = params.temperature;
    model_manifest["max_tokens"] = params.max_tokens;
    model_manifest["api_key_env"] = params.api_key_env;  // variable name only
    model_manifest["timeout_seconds"] = params.timeout_seconds;
    model_manifest["max_attempts"] = params.max_attempts;
    model_manifest["parallelism"] = params.parallelism;
  } else {
    std::cerr << "error: give either --scripted KIND or --endpoint URL\n";
    return kExitUsage;
  }

  std::vector<lsa::EvalRecord> records = lsa::run_on_problems(problems, *model, opts);

  // scripted runs still get a transcript so they can be replayed later
  if (model->scripted()) {
    transcript_stream.open(transcript_path, std::ios::trunc);
    lsa::TranscriptWriter scripted_transcript(transcript_stream);
    for (const lsa::EvalRecord& r : records) {
      lsa::TranscriptEntry entry;
      entry.problem_id = r.problem_id;
      entry.request = ordered_json{{"scripted", args.scripted}};
      ordered_json response;
      response["status"] = nullptr;
      response["body"] = lsa::completion_response_body(r.raw_completion);
      entry.response = response;
      entry.attempt = 1;
      entry.timestamp = lsa::iso8601_utc_now();
      scripted_transcript.append(entry);
    }
  }

  const lsa::AccuracyReport report = lsa::aggregate(records);

  std::ostringstream records_body;
  lsa::write_records_jsonl(records_body, records);
  lsa::write_file_atomic(args.out + ".records.jsonl", records_body.str());
  lsa::write_file_atomic(args.out + ".report.csv",
                         lsa::export_report(report, lsa::ReportFormat::Csv));
  lsa::write_file_atomic(args.out + ".report.json",
                         lsa::export_report(report, lsa::ReportFormat::Json));

  ordered_json manifest = manifest_skeleton("eval", args.seed);
  manifest["condition_label"] = opts.condition_label;
  if (const auto c = lsa::condition_by_label(opts.condition_label)) {
    manifest["condition"] = condition_to_json(*c);
  }
  manifest["prompt_style"] = std::string(lsa::style_slug(opts.style));
  manifest["typographic_apostrophe"] = args.typographic;
  manifest["strict"] = opts.strict;
  manifest["alt_k_max"] = opts.alt_k_max;
  manifest["model"] = model_manifest;
  manifest["inputs"] = ordered_json::array({args.problems});
  manifest["outputs"] = ordered_json::array(
      {args.out + ".records.jsonl", args.out + ".report.csv", args.out + ".report.json"});
  lsa::write_file_atomic(args.out + ".manifest.json", manifest.dump(2) + "\n");

  std::cout << "evaluated " << records.size() << " problems; outputs at " << args.out << ".*\n";
  return kExitOk;
}

int run_report(const ReportArgs& args) {
  std::vector<lsa::EvalRecord> records;
  for (const std::string& path : args.records) {
    auto part = lsa::read_records_file(path);
    for (auto& r : part) records.push_back(std::move(r));
  }
  if (records.empty()) {
    std::cerr << "error: nothing to report (no records in inputs)\n";
    return kExitUsage;
  }
  const auto format = lsa::report_format_from_slug(args.format);
  if (!format) {
    std::cerr << "error: --format must be csv, json or plotdata\n";
    return kExitUsage;
  }
  const std::string content = lsa::export_report(lsa::aggregate(records), *format);
  if (args.out.empty()) {
    std::cout << content;
  } else {
    lsa::write_file_atomic(args.out, content);
    std::cout << "wrote report to " << args.out << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"letter-string analogy benchmark harness"};
  app.set_config("--config", "",
                 "read flags from a TOML/INI file (keys under a [subcommand] section); "
                 "command-line flags win");
  app.require_subcommand(1);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "generate a problem JSONL file");
  gen->fallthrough(true);
  gen->add_option("--condition", gen_args.condition_label,
                  "condition label (original, interval2, interval2_prompt, interval2_synthetic, "
                  "interval5, synthetic_interval1)");
  gen->add_option("--alphabet", gen_args.alphabet_kind, "real or synthetic (with --interval)");
  gen->add_option("--interval", gen_args.interval, "interval size k >= 1");
  gen->add_option("--style", gen_args.style, "prompt style recorded in the manifest");
  gen->add_option("--ttype", gen_args.ttypes,
                  "restrict to these transformation types (default: all six)");
  gen->add_option("--n", gen_args.n, "instances per transformation type")->default_val(50);
  gen->add_option("--seed", gen_args.seed, "run seed; all problem content derives from it")
      ->default_val(0);
  gen->add_option("--alphabet-seed", gen_args.alphabet_seed,
                  "override the derived synthetic-alphabet seed");
  gen->add_option("--len-change", gen_args.len_change,
                  "run length for extend/successor/predecessor")
      ->default_val(lsa::kDefaultChangeRunLength);
  gen->add_option("--len-full", gen_args.len_full, "run length for remove/fix/sort")
      ->default_val(lsa::kDefaultFullRunLength);
  gen->add_option("--out", gen_args.out, "output problems JSONL path")->required();

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "solve problems with the symbolic rule inducer");
  solve_cmd->fallthrough(true);
  solve_cmd->add_option("--problems", solve_args.problems, "problems JSONL file")->required();
  solve_cmd->add_option("--k-max", solve_args.k_max, "largest interval hypothesis to search")
      ->default_val(lsa::kDefaultSolverKMax);
  solve_cmd->add_option("--out", solve_args.out, "output JSONL path (default: stdout)");

  DumpArgs dump_args;
  auto* dump = app.add_subcommand("prompt-dump", "render prompts for a problem file");
  dump->fallthrough(true);
  dump->add_option("--problems", dump_args.problems, "problems JSONL file")->required();
  dump->add_option("--style", dump_args.style, "original or preamble")->default_val("original");
  dump->add_flag("--typographic-apostrophe", dump_args.typographic,
                 "render U+2019 instead of ASCII ' in the pattern sentence");
  dump->add_option("--out-dir", dump_args.out_dir,
                   "write one <problem-id>.txt per problem instead of stdout");

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a model over a problem file");
  eval_cmd->fallthrough(true);
  eval_cmd->add_option("--problems", eval_args.problems, "problems JSONL file")->required();
  eval_cmd->add_option("--scripted", eval_args.scripted,
                       "scripted model: oracle, copy-target, fixed or recorder");
  eval_cmd->add_option("--fixed-text", eval_args.fixed_text,
                       "constant completion for --scripted fixed");
  eval_cmd->add_option("--transcript", eval_args.transcript,
                       "transcript JSONL replayed by --scripted recorder");
  eval_cmd->add_option("--endpoint", eval_args.endpoint,
                       "OpenAI-compatible base URL, e.g. https://host/v1");
  eval_cmd->add_option("--model", eval_args.model_name, "model name sent on the wire")
      ->default_val("text-davinci-003");
  eval_cmd->add_option("--temperature", eval_args.temperature)->default_val(0.0);
  eval_cmd->add_option("--max-tokens", eval_args.max_tokens)->default_val(20);
  eval_cmd->add_option("--api-key-env", eval_args.api_key_env,
                       "environment variable holding the API key")
      ->default_val("OPENAI_API_KEY");
  eval_cmd->add_option("--timeout", eval_args.timeout, "per-request timeout in seconds")
      ->default_val(30.0);
  eval_cmd->add_option("--max-attempts", eval_args.max_attempts,
                       "total tries per request, first included")
      ->default_val(5);
  eval_cmd->add_option("--parallel", eval_args.parallel, "in-flight request bound")->default_val(4);
  eval_cmd->add_option("--condition", eval_args.condition_label,
                       "condition label for records (sets the prompt style when standard)");
  eval_cmd->add_option("--style", eval_args.style, "original or preamble (wins over --condition)");
  eval_cmd->add_flag("--lenient", eval_args.lenient,
                     "record transport failures as unscored instead of aborting");
  eval_cmd->add_flag("--typographic-apostrophe", eval_args.typographic,
                     "render U+2019 instead of ASCII ' in prompts");
  eval_cmd->add_option("--alt-k-max", eval_args.alt_k_max,
                       "k bound for the logged wider-rule-space answer check")
      ->default_val(lsa::kDefaultSolverKMax);
  eval_cmd->add_option("--seed", eval_args.seed, "recorded in the manifest")->default_val(0);
  eval_cmd->add_option("--out", eval_args.out,
                       "output prefix; writes <out>.records.jsonl, <out>.report.{csv,json}, "
                       "<out>.transcript.jsonl and <out>.manifest.json")
      ->required();

  ReportArgs report_args;
  auto* report_cmd = app.add_subcommand("report", "merge record files into a report");
  report_cmd->fallthrough(true);
  report_cmd->add_option("--records", report_args.records, "one or more records JSONL files")
      ->required();
  report_cmd->add_option("--format", report_args.format, "csv, json or plotdata")
      ->default_val("csv");
  report_cmd->add_option("--out", report_args.out, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return run_gen(gen_args);
    if (solve_cmd->parsed()) return run_solve(solve_args);
    if (dump->parsed()) return run_prompt_dump(dump_args);
    if (eval_cmd->parsed()) return run_eval(eval_args);
    if (report_cmd->parsed()) return run_report(report_args);
  } catch (const lsa::GenerationExhaustedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitExhausted;
  } catch (const lsa::AuthError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAuth;
  } catch (const lsa::TransportError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTransport;
  } catch (const lsa::ApiError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTransport;
  } catch (const lsa::SchemaVersionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const lsa::RecorderMissingKeyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
