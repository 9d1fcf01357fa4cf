#pragma once

// Run configuration: a flat "key = value" file. Sections "[potential]" prefix
// the keys that follow, so "[potential] v0 = 2" and "potential.v0 = 2" are the
// same entry. '#' starts a comment.

#include <cstdint>
#include <map>
#include <string>

#include "bosegas/free_energy.hpp"

namespace bosegas {

struct RunConfig {
  GasParameters params;
  std::string out;               // empty when absent
  std::uint64_t seed = 20261018;  // random draws of the verify suites
};

/// Key-value pairs with section prefixes applied. Throws ConfigError on
/// malformed lines and duplicate keys.
std::map<std::string, std::string> read_key_values(const std::string& text);

/// Builds and validates a RunConfig. Relative potential files resolve against
/// base_dir. Every ConfigError names the offending key.
RunConfig parse_config(const std::string& text, const std::string& base_dir = ".");

RunConfig load_config(const std::string& path);

}  // namespace bosegas
