#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>

#include "json.hpp"
#include "lsa/prompt.hpp"
#include "lsa/solver.hpp"
#include "lsa/transform.hpp"

namespace lsa {

/// Request parameters for an OpenAI-compatible text-completion endpoint.
/// The defaults are the reference settings every run starts from.
struct ModelParams {
  std::string model_name = "text-davinci-003";
  double temperature = 0.0;
  int max_tokens = 20;
  std::string endpoint_url;  // e.g. "http://127.0.0.1:8080/v1"
  std::string api_key_env = "OPENAI_API_KEY";
  double timeout_seconds = 30.0;
  int max_attempts = 5;              // total tries, first request included
  double backoff_base_seconds = 0.5; // doubles per retry, deterministic jitter
  int parallelism = 4;               // in-flight request bound (used by eval)
};

/// One network (or scripted) attempt, exactly as sent and received. Failures
/// are logged too, so a transcript is a complete account of a run.
struct TranscriptEntry {
  std::string problem_id;
  nlohmann::ordered_json request;
  std::optional<nlohmann::ordered_json> response;  // {"status": ..., "body": ...}
  std::optional<std::string> error;
  int attempt = 1;
  std::string timestamp;  // ISO-8601 UTC, seconds resolution
};

/// Thread-safe JSONL appender for transcript entries.
class TranscriptWriter {
 public:
  explicit TranscriptWriter(std::ostream& out) : out_(out) {}
  void append(const TranscriptEntry& entry);

 private:
  std::ostream& out_;
  std::mutex mutex_;
};

/// POST the prompt to <endpoint_url>/completions and return choices[0].text
/// verbatim. Body is exactly {model, prompt, temperature, max_tokens}; the
/// credential is read from the environment variable named in params and sent
/// as a bearer token. Retryable failures (network errors, 429, 5xx) back off
/// exponentially with jitter, honoring Retry-After, up to max_attempts.
/// Throws AuthError, TransportError or ApiError. Every attempt is appended
/// to the transcript when one is given.
std::string complete(const ModelParams& params, const std::string& prompt_text,
                     TranscriptWriter* transcript = nullptr, const std::string& problem_id = "");

/// A model the evaluator can query: the live HTTP client or a scripted stand-in.
class CompletionSource {
 public:
  virtual ~CompletionSource() = default;
  virtual std::string complete_for(const Problem& problem, const RenderedPrompt& prompt) = 0;
  /// True when no network is involved (scripted models never touch it).
  virtual bool scripted() const = 0;
};

enum class ScriptedKind { Oracle, CopyTarget, FixedText, Recorder };

/// Answers every problem correctly through the symbolic solver.
class OracleModel final : public CompletionSource {
 public:
  std::string complete_for(const Problem& problem, const RenderedPrompt& prompt) override;
  bool scripted() const override { return true; }
};

/// Echoes the target stem back, a plausible-but-never-correct completion.
class CopyTargetModel final : public CompletionSource {
 public:
  std::string complete_for(const Problem& problem, const RenderedPrompt& prompt) override;
  bool scripted() const override { return true; }
};

/// Returns one constant string for every problem.
class FixedTextModel final : public CompletionSource {
 public:
  explicit FixedTextModel(std::string text) : text_(std::move(text)) {}
  std::string complete_for(const Problem&, const RenderedPrompt&) override { return text_; }
  bool scripted() const override { return true; }

 private:
  std::string text_;
};

/// Replays completions from a transcript file, keyed by problem id. Throws
/// RecorderMissingKeyError when a problem has no recorded completion.
class RecorderModel final : public CompletionSource {
 public:
  explicit RecorderModel(const std::string& transcript_path);
  std::string complete_for(const Problem& problem, const RenderedPrompt&) override;
  bool scripted() const override { return true; }

 private:
  std::map<std::string, std::string> completions_;
};

/// Live client; forwards to complete() with the problem id for transcripts.
class HttpModel final : public CompletionSource {
 public:
  HttpModel(ModelParams params, TranscriptWriter* transcript = nullptr)
      : params_(std::move(params)), transcript_(transcript) {}
  std::string complete_for(const Problem& problem, const RenderedPrompt& prompt) override;
  bool scripted() const override { return false; }
  const ModelParams& params() const { return params_; }

 private:
  ModelParams params_;
  TranscriptWriter* transcript_;
};

std::unique_ptr<CompletionSource> make_scripted(ScriptedKind kind, const std::string& fixed_text = "",
                                                const std::string& transcript_path = "");

/// The wire shape of a successful completion response for a given text;
/// scripted transcript entries use it so recorded and live transcripts can
/// be replayed through the same path.
nlohmann::ordered_json completion_response_body(const std::string& text);

/// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string iso8601_utc_now();

}  // namespace lsa
