#ifndef IER_CONFIG_HPP
#define IER_CONFIG_HPP

#include <cstdint>
#include <string>

#include "ier/experiment.hpp"

namespace ier {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses the flat key-value experiment format: one `section.key = value`
/// per line, '#' comments, keys mirroring the config field names. Unknown
/// keys and malformed values raise ConfigError naming the offender.
ExperimentConfig parse_experiment_config(const std::string& text);

ExperimentConfig load_experiment_config(const std::string& path);

/// Canonical round-trippable rendering (fixed key order); also the input
/// to config_hash.
std::string serialize_experiment_config(const ExperimentConfig& cfg);

/// FNV-1a 64 over the canonical serialization, as a hex string.
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace ier

#endif
