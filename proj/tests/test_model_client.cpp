#include "lsa/model_client.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "lsa/errors.hpp"
#include "lsa/prompt.hpp"
#include "stub_server.hpp"
#include "test_util.hpp"

using namespace lsa;
using lsa::test::StubCompletionServer;
using lsa::test::fixture_problem;
using lsa::test::seq;
using nlohmann::json;

namespace {

ModelParams test_params(const StubCompletionServer& server) {
  ModelParams p;
  p.endpoint_url = server.url();
  p.backoff_base_seconds = 0.0;  // no sleeping in tests
  p.timeout_seconds = 5.0;
  return p;
}

struct EnvKey {
  EnvKey() { ::setenv("OPENAI_API_KEY", "test-key", 1); }
  ~EnvKey() { ::unsetenv("OPENAI_API_KEY"); }
};

}  // namespace

TEST_CASE("complete passes the endpoint's text through verbatim") {
  EnvKey key;
  StubCompletionServer server;
  server.enqueue_text("m n o p]");
  CHECK(complete(test_params(server), "prompt text") == "m n o p]");
}

TEST_CASE("request body is exactly {model, prompt, temperature, max_tokens} with the defaults") {
  EnvKey key;
  StubCompletionServer server;
  server.enqueue_text("x]");
  (void)complete(test_params(server), "some prompt");

  const auto requests = server.requests();
  REQUIRE(requests.size() == 1);
  const json body = json::parse(requests[0].body);
  CHECK(body.size() == 4);
  CHECK(body["model"] == "text-davinci-003");
  CHECK(body["prompt"] == "some prompt");
  CHECK(body["temperature"] == 0);
  CHECK(body["max_tokens"] == 20);
  CHECK(requests[0].authorization == "Bearer test-key");
  CHECK(requests[0].content_type == "application/json");
  CHECK(requests[0].path == "/v1/completions");
}

TEST_CASE("two 429s then a 200: retries succeed and the transcript is complete") {
  EnvKey key;
  StubCompletionServer server;
  server.enqueue({429, "{\"error\":\"rate limit\"}", "0"});
  server.enqueue({429, "{\"error\":\"rate limit\"}", ""});
  server.enqueue_text("q r]");

  std::ostringstream transcript_out;
  TranscriptWriter transcript(transcript_out);
  CHECK(complete(test_params(server), "p", &transcript, "prob-1") == "q r]");
  CHECK(server.request_count() == 3);

  // one transcript entry per attempt, ordered, statuses visible
  std::istringstream lines(transcript_out.str());
  std::string line;
  int attempt = 0;
  while (std::getline(lines, line)) {
    const json entry = json::parse(line);
    ++attempt;
    CHECK(entry["attempt"] == attempt);
    CHECK(entry["problem_id"] == "prob-1");
    const int status = entry["response"]["status"].get<int>();
    CHECK(status == (attempt < 3 ? 429 : 200));
  }
  CHECK(attempt == 3);
}

TEST_CASE("retryable failures exhaust into TransportError") {
  EnvKey key;
  StubCompletionServer server;
  server.enqueue({429, "{}", ""});  // repeats forever
  ModelParams params = test_params(server);
  params.max_attempts = 3;
  CHECK_THROWS_AS(complete(params, "p"), TransportError);
  CHECK(server.request_count() == 3);
}

TEST_CASE("unreachable endpoint raises TransportError after the attempt budget") {
  EnvKey key;
  ModelParams params;
  params.endpoint_url = "http://127.0.0.1:9";  // discard port, nothing listens
  params.max_attempts = 2;
  params.backoff_base_seconds = 0.0;
  params.timeout_seconds = 0.5;
  CHECK_THROWS_AS(complete(params, "p"), TransportError);
}

TEST_CASE("missing credential fails before any network activity") {
  ::unsetenv("OPENAI_API_KEY");
  ModelParams params;
  params.endpoint_url = "http://127.0.0.1:9";
  CHECK_THROWS_AS(complete(params, "p"), AuthError);

  ::setenv("OPENAI_API_KEY", "", 1);
  CHECK_THROWS_AS(complete(params, "p"), AuthError);
  ::unsetenv("OPENAI_API_KEY");
}

TEST_CASE("401 is an AuthError, 400 an ApiError with body captured") {
  EnvKey key;
  StubCompletionServer server;
  server.enqueue({401, "{\"error\":\"bad key\"}", ""});
  CHECK_THROWS_AS(complete(test_params(server), "p"), AuthError);

  StubCompletionServer server2;
  server2.enqueue({400, "{\"error\":\"bad request\"}", ""});
  try {
    (void)complete(test_params(server2), "p");
    FAIL("expected ApiError");
  } catch (const ApiError& e) {
    CHECK(e.status == 400);
    CHECK(e.body.find("bad request") != std::string::npos);
  }
}

TEST_CASE("scripted models behave per variant and never touch the network") {
  const Problem p = fixture_problem();
  const RenderedPrompt rp = render(p, PromptStyle::Original);

  OracleModel oracle;
  CHECK(oracle.scripted());
  const std::string oracle_raw = oracle.complete_for(p, rp);
  const ParseResult parsed = parse_completion(oracle_raw, p.spec.alphabet);
  REQUIRE(parsed.ok());
  CHECK(*parsed.sequence == p.answer);

  CopyTargetModel copy;
  CHECK(copy.complete_for(p, rp) == "i j k l]");

  FixedTextModel fixed("");
  CHECK(fixed.complete_for(p, rp) == "");
  CHECK(parse_completion(fixed.complete_for(p, rp), p.spec.alphabet).error == ParseError::Empty);

  FixedTextModel constant("z z z");
  CHECK(constant.complete_for(p, rp) == "z z z");
}

TEST_CASE("scripted models are deterministic per (variant, problem)") {
  const Problem p = fixture_problem();
  const RenderedPrompt rp = render(p, PromptStyle::Original);
  OracleModel m1, m2;
  CHECK(m1.complete_for(p, rp) == m2.complete_for(p, rp));
}

TEST_CASE("recorder replays a transcript keyed by problem id") {
  const auto dir = lsa::test::scratch_dir("recorder");
  const auto path = dir / "transcript.jsonl";
  {
    std::ofstream out(path);
    TranscriptWriter w(out);
    TranscriptEntry entry;
    entry.problem_id = "fixture-successor-k1";
    entry.request = nlohmann::ordered_json{{"scripted", "oracle"}};
    nlohmann::ordered_json response;
    response["status"] = nullptr;
    response["body"] = completion_response_body("i j k m]");
    entry.response = response;
    entry.attempt = 1;
    entry.timestamp = "2026-01-01T00:00:00Z";
    w.append(entry);
  }
  RecorderModel recorder(path.string());
  const Problem p = fixture_problem();
  const RenderedPrompt rp = render(p, PromptStyle::Original);
  CHECK(recorder.complete_for(p, rp) == "i j k m]");

  Problem other = p;
  other.id = "missing-id";
  CHECK_THROWS_AS(recorder.complete_for(other, rp), RecorderMissingKeyError);
}
