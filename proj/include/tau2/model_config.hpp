#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tau2/hamiltonians.hpp"
#include "tau2/transfer_matrix.hpp"

namespace tau2 {

enum class RunMode { Explicit, Random, Clock };

std::string mode_name(RunMode mode);

// A fully resolved run description: couplings are always populated, whatever
// the mode, so downstream code never consults the mode again except for the
// clock-reduction check.
struct RunConfig {
  int N = 0;
  int L = 0;
  RunMode mode = RunMode::Random;
  std::uint64_t seed = 1;
  ModelParams params;
  ClockParams clock;  // meaningful in clock mode only
  std::map<std::string, double> tolerances;
  std::vector<std::string> checks;  // empty means the full catalog
};

// Seeded coupling draw. Stream order is fixed: arrays a, b, c, d, each
// entry l = 0 .. 2L-1 drawing modulus 0.5 + u then phase 2 pi u, so a file
// recording (N, L, seed) pins the model exactly.
ModelParams random_params(int n, int l, std::uint64_t seed);

// Parses and validates a JSON run description. Throws ConfigError naming
// the offending field, or SizeError when the state space N^L would exceed
// 4096.
RunConfig parse_config(const std::string& json_text);

}  // namespace tau2
