#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "magfb/measures.hpp"
#include "magfb/model.hpp"
#include "magfb/sweep.hpp"

namespace magfb {

enum class Command { correlations, sweep, reproduce, stability };

struct RunConfig {
  SystemParams system;
  DriveParams drive;
  NegativityForm negativity = NegativityForm::standard;

  Command command = Command::correlations;
  std::vector<AxisSpec> axes;
  std::string output;
  std::optional<int> grid;
  int threads = 1;
  std::vector<std::string> warnings;
};

// Parses flat "key = value [unit]" text. '#' starts a comment. Frequencies
// are ordinary (Hz, kHz, MHz, GHz; bare numbers are Hz) unless given as
// "rad/s" or as multiples of omega_m ("wm"). Temperatures accept K or mK,
// beta accepts "pi". Unknown keys, malformed numbers, unknown units and
// out-of-range values raise ConfigError naming the key and line.
RunConfig parse_config(std::string_view text);

// Parses a single value with the unit rules of `key`, in internal units.
double parse_value(std::string_view key, std::string_view text, double omega_m);

}  // namespace magfb
