#pragma once

#include <stdexcept>
#include <string>

namespace lsa {

/// A symbol that is not part of the governing alphabet.
struct UnknownSymbolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A shift stepped past either end of the alphabet (the domain is linear,
/// there is no wrap-around).
struct BoundaryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A run of letters would leave the 26-position alphabet.
struct OutOfBoundsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Problem generation could not produce an unambiguous instance within the
/// retry budget, or the requested parameters admit too few start positions.
struct GenerationExhaustedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Network-level failure (unreachable endpoint, timeout, or retryable
/// statuses still failing after the retry budget).
struct TransportError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Non-success HTTP status that is not retryable; body is captured.
struct ApiError : std::runtime_error {
  ApiError(int status_, std::string body_, const std::string& what_)
      : std::runtime_error(what_), status(status_), body(std::move(body_)) {}
  int status;
  std::string body;
};

/// Missing or rejected API credential.
struct AuthError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A recorder transcript has no completion for the requested problem id.
struct RecorderMissingKeyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An input file carries a schema version this build does not understand.
struct SchemaVersionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lsa
