#pragma once

namespace lsa {

inline constexpr const char* kToolVersion = "0.1.0";

// Bumped whenever the byte layout of an output file changes.
inline constexpr const char* kSchemaVersion = "1";

// Bumped whenever rendered prompt bytes change. Stored in run manifests so
// old completions can be re-scored against the prompts that produced them.
inline constexpr const char* kPromptFormatVersion = "1";

}  // namespace lsa
