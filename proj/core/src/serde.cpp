#include "lsa/serde.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "lsa/errors.hpp"
#include "lsa/version.hpp"

namespace lsa {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void check_schema_version(const json& j, const char* what) {
  if (!j.contains("schema_version") || !j["schema_version"].is_string() ||
      j["schema_version"].get<std::string>() != kSchemaVersion) {
    throw SchemaVersionError(std::string(what) + ": unsupported schema_version (expected \"" +
                             kSchemaVersion + "\")");
  }
}

}  // namespace

ordered_json alphabet_to_json(const Alphabet& alphabet) {
  ordered_json j;
  j["kind"] = alphabet.kind() == AlphabetKind::Real ? "real" : "synthetic";
  if (alphabet.seed()) j["seed"] = *alphabet.seed();
  return j;
}

ordered_json alphabet_manifest_json(const Alphabet& alphabet) {
  ordered_json j = alphabet_to_json(alphabet);
  std::vector<std::string> symbols;
  symbols.reserve(Alphabet::kSize);
  for (char c : alphabet.symbols()) symbols.emplace_back(1, c);
  j["symbols"] = symbols;
  return j;
}

Alphabet alphabet_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "real") return Alphabet::real();
  if (kind == "synthetic") {
    if (!j.contains("seed")) throw std::invalid_argument("synthetic alphabet without seed");
    return Alphabet::synthetic(j["seed"].get<std::uint64_t>());
  }
  throw std::invalid_argument("unknown alphabet kind: " + kind);
}

ordered_json letters_to_json(const LetterSequence& seq) {
  ordered_json arr = ordered_json::array();
  for (char c : seq.letters) arr.push_back(std::string(1, c));
  return arr;
}

LetterSequence letters_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("letter sequence must be a JSON array");
  LetterSequence seq;
  for (const auto& item : j) {
    const std::string s = item.get<std::string>();
    if (s.size() != 1) throw std::invalid_argument("letters must be single characters: " + s);
    seq.letters.push_back(s[0]);
  }
  return seq;
}

ordered_json problem_to_json(const Problem& problem) {
  ordered_json j;
  j["id"] = problem.id;
  j["ttype"] = std::string(type_slug(problem.spec.ttype));
  j["interval"] = problem.spec.interval;
  j["alphabet"] = alphabet_to_json(problem.spec.alphabet);
  j["source_left"] = letters_to_json(problem.source_left);
  j["source_right"] = letters_to_json(problem.source_right);
  j["target_stem"] = letters_to_json(problem.target_stem);
  j["answer"] = letters_to_json(problem.answer);
  j["schema_version"] = kSchemaVersion;
  return j;
}

namespace {

void validate_loaded_sequence(const LetterSequence& seq, const Alphabet& alphabet,
                              const std::string& id, const char* field) {
  if (seq.empty()) {
    throw std::invalid_argument("problem " + id + ": " + field + " is empty");
  }
  if (seq.size() > static_cast<std::size_t>(kMaxSequenceLetters)) {
    throw std::invalid_argument("problem " + id + ": " + field + " exceeds " +
                                std::to_string(kMaxSequenceLetters) + " letters");
  }
  for (char c : seq.letters) {
    if (!alphabet.contains(c)) {
      throw std::invalid_argument("problem " + id + ": " + field + " has a letter outside the alphabet");
    }
  }
}

}  // namespace

Problem problem_from_json(const json& j) {
  Problem p;
  p.id = j.at("id").get<std::string>();
  const std::string slug = j.at("ttype").get<std::string>();
  const auto ttype = type_from_slug(slug);
  if (!ttype) throw std::invalid_argument("problem " + p.id + ": unknown ttype " + slug);
  p.spec.ttype = *ttype;
  p.spec.interval = j.at("interval").get<int>();
  if (p.spec.interval < 1) throw std::invalid_argument("problem " + p.id + ": interval < 1");
  p.spec.alphabet = alphabet_from_json(j.at("alphabet"));
  p.source_left = letters_from_json(j.at("source_left"));
  p.source_right = letters_from_json(j.at("source_right"));
  p.target_stem = letters_from_json(j.at("target_stem"));
  p.answer = letters_from_json(j.at("answer"));

  validate_loaded_sequence(p.source_left, p.spec.alphabet, p.id, "source_left");
  validate_loaded_sequence(p.source_right, p.spec.alphabet, p.id, "source_right");
  validate_loaded_sequence(p.target_stem, p.spec.alphabet, p.id, "target_stem");
  validate_loaded_sequence(p.answer, p.spec.alphabet, p.id, "answer");
  if (p.answer == p.target_stem) {
    throw std::invalid_argument("problem " + p.id + ": answer equals target stem");
  }
  // run_length and seed are generation-time inputs; files do not carry them
  p.spec.run_length = static_cast<int>(p.target_stem.size());
  p.spec.seed = 0;
  return p;
}

void write_problems_jsonl(std::ostream& out, const std::vector<Problem>& problems) {
  for (const Problem& p : problems) out << problem_to_json(p).dump() << '\n';
}

std::vector<Problem> read_problems_jsonl(std::istream& in) {
  std::vector<Problem> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(problem_from_json(json::parse(line)));
  }
  return out;
}

std::vector<Problem> read_problems_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open problems file: " + path.string());
  return read_problems_jsonl(in);
}

ordered_json record_to_json(const EvalRecord& record) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["problem_id"] = record.problem_id;
  j["condition"] = record.condition;
  j["ttype"] = record.ttype;
  j["prompt_hash"] = record.prompt_hash;
  j["raw_completion"] = record.raw_completion;
  j["parsed"] = record.parsed ? letters_to_json(*record.parsed) : ordered_json(nullptr);
  j["parse_error"] =
      record.parse_error ? ordered_json(std::string(parse_error_tag(*record.parse_error)))
                         : ordered_json(nullptr);
  j["correct"] = record.correct;
  j["alt_answer_wider_k"] = record.alt_answer_wider_k;
  j["scored"] = record.scored;
  j["transport_error"] =
      record.transport_error ? ordered_json(*record.transport_error) : ordered_json(nullptr);
  return j;
}

EvalRecord record_from_json(const json& j) {
  check_schema_version(j, "eval record");
  EvalRecord r;
  r.problem_id = j.at("problem_id").get<std::string>();
  r.condition = j.at("condition").get<std::string>();
  r.ttype = j.at("ttype").get<std::string>();
  r.prompt_hash = j.at("prompt_hash").get<std::string>();
  r.raw_completion = j.at("raw_completion").get<std::string>();
  if (!j.at("parsed").is_null()) r.parsed = letters_from_json(j["parsed"]);
  if (!j.at("parse_error").is_null()) {
    const std::string tag = j["parse_error"].get<std::string>();
    if (tag == "empty") r.parse_error = ParseError::Empty;
    else if (tag == "bad_token") r.parse_error = ParseError::BadToken;
    else throw std::invalid_argument("unknown parse_error tag: " + tag);
  }
  r.correct = j.at("correct").get<bool>();
  r.alt_answer_wider_k = j.at("alt_answer_wider_k").get<bool>();
  r.scored = j.at("scored").get<bool>();
  if (!j.at("transport_error").is_null()) {
    r.transport_error = j["transport_error"].get<std::string>();
  }
  return r;
}

void write_records_jsonl(std::ostream& out, const std::vector<EvalRecord>& records) {
  for (const EvalRecord& r : records) out << record_to_json(r).dump() << '\n';
}

std::vector<EvalRecord> read_records_jsonl(std::istream& in) {
  std::vector<EvalRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(record_from_json(json::parse(line)));
  }
  return out;
}

std::vector<EvalRecord> read_records_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open records file: " + path.string());
  return read_records_jsonl(in);
}

ordered_json rule_to_json(const InducedRule& rule) {
  ordered_json j;
  j["ttype"] = std::string(type_slug(rule.ttype));
  j["k"] = rule.k;
  ordered_json slots = ordered_json::object();
  if (rule.slot) {
    switch (rule.ttype) {
      case TransformationType::Successor:
      case TransformationType::Predecessor: slots["changed_index"] = *rule.slot; break;
      case TransformationType::RemoveRedundant: slots["dup_index"] = *rule.slot; break;
      case TransformationType::FixAlphabetic: slots["corrupt_index"] = *rule.slot; break;
      default: break;
    }
  }
  j["slots"] = std::move(slots);
  return j;
}

ordered_json solve_result_to_json(const std::string& problem_id, const SolveResult& result) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["problem_id"] = problem_id;
  j["rules"] = ordered_json::array();
  for (const InducedRule& r : result.rules) j["rules"].push_back(rule_to_json(r));
  j["answers"] = ordered_json::array();
  for (const LetterSequence& a : result.answers) j["answers"].push_back(letters_to_json(a));
  j["chosen"] = result.chosen ? letters_to_json(*result.chosen) : ordered_json(nullptr);
  j["ambiguous"] = result.ambiguous;
  return j;
}

ordered_json report_to_json(const AccuracyReport& report) {
  return ordered_json::parse(export_report(report, ReportFormat::Json));
}

AccuracyReport report_from_json(const json& j) {
  check_schema_version(j, "accuracy report");
  AccuracyReport report;
  for (const auto& cell_json : j.at("cells")) {
    AccuracyCell cell;
    cell.condition = cell_json.at("condition").get<std::string>();
    cell.ttype = cell_json.at("ttype").get<std::string>();
    cell.n = cell_json.at("n").get<std::int64_t>();
    cell.n_correct = cell_json.at("n_correct").get<std::int64_t>();
    cell.accuracy = cell.n > 0 ? exact_decimal(cell.n_correct, cell.n) : "0.0";
    report.cells.push_back(std::move(cell));
  }
  report.condition_order = j.at("condition_order").get<std::vector<std::string>>();
  report.ttype_order = j.at("ttype_order").get<std::vector<std::string>>();
  report.excluded_unscored = j.at("excluded_unscored").get<std::int64_t>();
  return report;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace lsa
