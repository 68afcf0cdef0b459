#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "lsa/eval.hpp"
#include "lsa/solver.hpp"
#include "lsa/transform.hpp"

namespace lsa {

// File formats. Problems, records and solve results travel as JSON Lines;
// reports and manifests as single JSON documents. Every line and document
// carries schema_version so old files stay re-analyzable.

nlohmann::ordered_json alphabet_to_json(const Alphabet& alphabet);          // {kind, seed}
nlohmann::ordered_json alphabet_manifest_json(const Alphabet& alphabet);    // {kind, seed, symbols}
Alphabet alphabet_from_json(const nlohmann::json& j);

nlohmann::ordered_json letters_to_json(const LetterSequence& seq);
LetterSequence letters_from_json(const nlohmann::json& j);

/// One problem line: {id, ttype, interval, alphabet:{kind,seed}, source_left,
/// source_right, target_stem, answer, schema_version}.
nlohmann::ordered_json problem_to_json(const Problem& problem);
Problem problem_from_json(const nlohmann::json& j);

void write_problems_jsonl(std::ostream& out, const std::vector<Problem>& problems);
std::vector<Problem> read_problems_jsonl(std::istream& in);
std::vector<Problem> read_problems_file(const std::filesystem::path& path);

nlohmann::ordered_json record_to_json(const EvalRecord& record);
EvalRecord record_from_json(const nlohmann::json& j);  // throws SchemaVersionError on mismatch

void write_records_jsonl(std::ostream& out, const std::vector<EvalRecord>& records);
std::vector<EvalRecord> read_records_jsonl(std::istream& in);
std::vector<EvalRecord> read_records_file(const std::filesystem::path& path);

nlohmann::ordered_json rule_to_json(const InducedRule& rule);
nlohmann::ordered_json solve_result_to_json(const std::string& problem_id,
                                            const SolveResult& result);

nlohmann::ordered_json report_to_json(const AccuracyReport& report);
AccuracyReport report_from_json(const nlohmann::json& j);

/// Write via a sibling temp file and rename, so readers never observe a
/// half-written file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace lsa
