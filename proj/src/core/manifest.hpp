#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "core/scenario.hpp"

namespace collapse {

std::uint64_t fnv1a64(std::string_view data);

// 16 hex digits over the canonical serialization; key order in the source
// file does not matter.
std::string config_digest(const ScenarioDoc& doc);

// Provenance record emitted alongside every output file.
std::string manifest_json(const ScenarioDoc& doc, const std::string& subcommand,
                          std::uint64_t seed);
void write_manifest(const std::string& path, const ScenarioDoc& doc,
                    const std::string& subcommand, std::uint64_t seed);

}  // namespace collapse
