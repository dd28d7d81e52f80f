#include "core/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

#include "json.hpp"

#include "core/csv.hpp"
#include "core/version.hpp"

namespace collapse {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string config_digest(const ScenarioDoc& doc) {
  const std::uint64_t h = fnv1a64(serialize_config(doc));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string manifest_json(const ScenarioDoc& doc, const std::string& subcommand,
                          std::uint64_t seed) {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm utc{};
  gmtime_r(&tt, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &utc);

  nlohmann::json j;
  j["tool"] = tool_name;
  j["version"] = tool_version;
  j["config_digest"] = config_digest(doc);
  j["subcommand"] = subcommand;
  j["seed"] = seed;
  j["timestamp_utc"] = stamp;
  return j.dump(2) + "\n";
}

void write_manifest(const std::string& path, const ScenarioDoc& doc,
                    const std::string& subcommand, std::uint64_t seed) {
  write_file(path, manifest_json(doc, subcommand, seed));
}

}  // namespace collapse
