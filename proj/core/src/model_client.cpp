#include "httplib.h"

#include "lsa/model_client.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "lsa/errors.hpp"
#include "lsa/rng.hpp"

namespace lsa {

using nlohmann::ordered_json;

std::string iso8601_utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void TranscriptWriter::append(const TranscriptEntry& entry) {
  ordered_json line;
  line["problem_id"] = entry.problem_id;
  line["request"] = entry.request;
  if (entry.response) {
    line["response"] = *entry.response;
  } else {
    line["response"] = nullptr;
  }
  if (entry.error) {
    line["error"] = *entry.error;
  } else {
    line["error"] = nullptr;
  }
  line["attempt"] = entry.attempt;
  line["timestamp"] = entry.timestamp;

  std::lock_guard<std::mutex> lock(mutex_);
  out_ << line.dump() << '\n';
  out_.flush();
}

ordered_json completion_response_body(const std::string& text) {
  ordered_json body;
  body["choices"] = ordered_json::array({ordered_json{{"text", text}}});
  return body;
}

namespace {

struct Endpoint {
  std::string base;         // scheme://host[:port]
  std::string path_prefix;  // "" or "/v1"
};

Endpoint split_endpoint(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw std::invalid_argument("endpoint URL needs a scheme: " + url);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, ""};
  std::string prefix = url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {url.substr(0, path_start), prefix};
}

std::chrono::milliseconds backoff_delay(const ModelParams& params, int attempt,
                                        const std::string& retry_after_header) {
  double seconds = params.backoff_base_seconds * static_cast<double>(1u << (attempt - 1));
  if (seconds > 8.0) seconds = 8.0;
  auto ms = static_cast<std::int64_t>(seconds * 1000.0);
  if (ms > 0) {
    // deterministic jitter: up to half the delay, derived from the attempt number
    ms += static_cast<std::int64_t>(mix64(static_cast<std::uint64_t>(attempt)) %
                                    static_cast<std::uint64_t>(ms / 2 + 1));
  }
  if (!retry_after_header.empty()) {
    char* end = nullptr;
    const double ra = std::strtod(retry_after_header.c_str(), &end);
    if (end != retry_after_header.c_str() && ra > 0) {
      ms = std::max<std::int64_t>(ms, static_cast<std::int64_t>(ra * 1000.0));
    }
  }
  return std::chrono::milliseconds(ms);
}

std::string extract_completion_text(const std::string& body) {
  ordered_json parsed;
  try {
    parsed = ordered_json::parse(body);
  } catch (const nlohmann::json::exception&) {
    throw ApiError(200, body, "response is not valid JSON");
  }
  if (!parsed.contains("choices") || !parsed["choices"].is_array() || parsed["choices"].empty() ||
      !parsed["choices"][0].contains("text")) {
    throw ApiError(200, body, "response has no choices[0].text");
  }
  return parsed["choices"][0]["text"].get<std::string>();
}

}  // namespace

std::string complete(const ModelParams& params, const std::string& prompt_text,
                     TranscriptWriter* transcript, const std::string& problem_id) {
  const char* key = std::getenv(params.api_key_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw AuthError("credential environment variable " + params.api_key_env + " is empty or unset");
  }
  const Endpoint endpoint = split_endpoint(params.endpoint_url);

  ordered_json request_body;
  request_body["model"] = params.model_name;
  request_body["prompt"] = prompt_text;
  request_body["temperature"] = params.temperature;
  request_body["max_tokens"] = params.max_tokens;
  const std::string payload = request_body.dump();

  const int max_attempts = std::max(1, params.max_attempts);
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    httplib::Client client(endpoint.base);
    client.set_connection_timeout(std::chrono::milliseconds(
        static_cast<std::int64_t>(params.timeout_seconds * 1000.0)));
    client.set_read_timeout(std::chrono::milliseconds(
        static_cast<std::int64_t>(params.timeout_seconds * 1000.0)));
    client.set_bearer_token_auth(key);

    auto res = client.Post(endpoint.path_prefix + "/completions", payload, "application/json");

    TranscriptEntry entry;
    entry.problem_id = problem_id;
    entry.request = request_body;
    entry.attempt = attempt;
    entry.timestamp = iso8601_utc_now();

    if (!res) {
      entry.error = "transport: " + httplib::to_string(res.error());
      if (transcript) transcript->append(entry);
      if (attempt == max_attempts) {
        throw TransportError("endpoint unreachable after " + std::to_string(attempt) +
                             " attempts: " + httplib::to_string(res.error()));
      }
      std::this_thread::sleep_for(backoff_delay(params, attempt, ""));
      continue;
    }

    ordered_json response_json;
    response_json["status"] = res->status;
    try {
      response_json["body"] = ordered_json::parse(res->body);
    } catch (const nlohmann::json::exception&) {
      response_json["body"] = res->body;
    }
    entry.response = response_json;
    if (transcript) transcript->append(entry);

    if (res->status == 200) return extract_completion_text(res->body);
    if (res->status == 401 || res->status == 403) {
      throw AuthError("credential rejected with HTTP " + std::to_string(res->status));
    }
    if (res->status == 429 || res->status >= 500) {
      if (attempt == max_attempts) {
        throw TransportError("retryable HTTP " + std::to_string(res->status) + " persisted through " +
                             std::to_string(attempt) + " attempts");
      }
      std::this_thread::sleep_for(
          backoff_delay(params, attempt, res->get_header_value("Retry-After")));
      continue;
    }
    throw ApiError(res->status, res->body, "HTTP " + std::to_string(res->status) + " from endpoint");
  }
  throw std::logic_error("unreachable: retry loop fell through");
}

std::string OracleModel::complete_for(const Problem& problem, const RenderedPrompt&) {
  const int k_max = std::max(kDefaultSolverKMax, problem.spec.interval);
  const SolveResult result = solve(problem.source_left, problem.source_right, problem.target_stem,
                                   problem.spec.alphabet, k_max);
  if (!result.chosen) {
    throw std::logic_error("oracle model given an unsolvable problem: " + problem.id);
  }
  return render_completion(*result.chosen);
}

std::string CopyTargetModel::complete_for(const Problem& problem, const RenderedPrompt&) {
  return render_completion(problem.target_stem);
}

RecorderModel::RecorderModel(const std::string& transcript_path) {
  std::ifstream in(transcript_path);
  if (!in) throw std::runtime_error("cannot open transcript: " + transcript_path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const ordered_json entry = ordered_json::parse(line);
    if (!entry.contains("response") || entry["response"].is_null()) continue;
    const auto& response = entry["response"];
    if (!response.contains("body")) continue;
    const auto& body = response["body"];
    if (!body.is_object() || !body.contains("choices") || !body["choices"].is_array() ||
        body["choices"].empty() || !body["choices"][0].contains("text")) {
      continue;
    }
    // keep the last successful attempt per problem
    completions_[entry["problem_id"].get<std::string>()] =
        body["choices"][0]["text"].get<std::string>();
  }
}

std::string RecorderModel::complete_for(const Problem& problem, const RenderedPrompt&) {
  const auto it = completions_.find(problem.id);
  if (it == completions_.end()) {
    throw RecorderMissingKeyError("transcript has no completion for problem " + problem.id);
  }
  return it->second;
}

std::string HttpModel::complete_for(const Problem& problem, const RenderedPrompt& prompt) {
  return complete(params_, prompt.text, transcript_, problem.id);
}

std::unique_ptr<CompletionSource> make_scripted(ScriptedKind kind, const std::string& fixed_text,
                                                const std::string& transcript_path) {
  switch (kind) {
    case ScriptedKind::Oracle: return std::make_unique<OracleModel>();
    case ScriptedKind::CopyTarget: return std::make_unique<CopyTargetModel>();
    case ScriptedKind::FixedText: return std::make_unique<FixedTextModel>(fixed_text);
    case ScriptedKind::Recorder: return std::make_unique<RecorderModel>(transcript_path);
  }
  throw std::logic_error("unreachable: bad ScriptedKind");
}

}  // namespace lsa
