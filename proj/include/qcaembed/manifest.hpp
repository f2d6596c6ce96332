#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qcaembed {

inline constexpr const char* kToolVersion = "0.3.0";

/// Everything needed to re-run a CLI invocation. `args` is the argument list
/// after the program name; replaying it reproduces the outputs.
struct RunManifest {
  std::string subcommand;
  std::vector<std::string> args;
  std::map<std::string, std::string> flags;
  std::map<std::string, std::uint64_t> seeds;
  std::string version = kToolVersion;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::string started;   // UTC, ISO 8601
  std::string finished;
  int exit_code = 0;
};

std::string utc_timestamp();
std::string manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const std::string& text);

} // namespace qcaembed
