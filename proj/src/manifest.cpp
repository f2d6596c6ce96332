#include "qcaembed/manifest.hpp"

#include "json.hpp"

#include <chrono>
#include <ctime>
#include <stdexcept>

namespace qcaembed {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string manifest_to_json(const RunManifest& m) {
  nlohmann::ordered_json doc;
  doc["tool"] = "qcaembed";
  doc["version"] = m.version;
  doc["subcommand"] = m.subcommand;
  doc["args"] = m.args;
  doc["flags"] = m.flags;
  doc["seeds"] = m.seeds;
  doc["inputs"] = m.inputs;
  doc["outputs"] = m.outputs;
  doc["started"] = m.started;
  doc["finished"] = m.finished;
  doc["exit_code"] = m.exit_code;
  return doc.dump(2) + "\n";
}

RunManifest manifest_from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  RunManifest m;
  m.subcommand = doc.at("subcommand").get<std::string>();
  m.args = doc.at("args").get<std::vector<std::string>>();
  m.flags = doc.value("flags", std::map<std::string, std::string>{});
  m.seeds = doc.value("seeds", std::map<std::string, std::uint64_t>{});
  m.version = doc.value("version", std::string());
  m.inputs = doc.value("inputs", std::vector<std::string>{});
  m.outputs = doc.value("outputs", std::vector<std::string>{});
  m.started = doc.value("started", std::string());
  m.finished = doc.value("finished", std::string());
  m.exit_code = doc.value("exit_code", 0);
  if (m.args.empty() || m.args.front() != m.subcommand) {
    throw std::invalid_argument("manifest args must start with the subcommand");
  }
  return m;
}

} // namespace qcaembed
