#pragma once

#include <string>
#include <vector>

#include "tau2/model_config.hpp"
#include "tau2/transfer_matrix.hpp"

namespace tau2 {

// One verified identity. `skipped` with pass = true means the check did not
// apply to this model (wrong mode, too large, too short a chain); skipped
// with pass = false means a prerequisite stage failed and the note carries
// the reason. Checks with asserted = false are informational and never
// count toward overall_pass.
struct CheckRecord {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool asserted = true;
  bool pass = false;
  bool skipped = false;
  std::string note;
  double wall_ms = 0.0;
};

struct VerificationReport {
  RunConfig config;
  bool have_spectral = false;
  SpectralData spectral;
  std::vector<CheckRecord> checks;
  bool overall_pass = false;
};

struct CheckSpec {
  std::string name;
  double default_threshold;
  bool asserted;
};

// Full catalog in execution order, with default thresholds.
const std::vector<CheckSpec>& check_catalog();

// Runs the catalog (or the subset named in cfg.checks) against the model.
// Throws ConfigError for unknown check or tolerance names; numerical
// failures never throw, they are recorded.
VerificationReport run_suite(const RunConfig& cfg);

std::string report_to_json(const VerificationReport& rep, int indent = 2);
std::string render_report(const VerificationReport& rep);

// Re-serializes a report with the per-check wall_ms removed, so two runs
// of the same model can be compared byte for byte.
std::string strip_timing(const std::string& report_json);

}  // namespace tau2
