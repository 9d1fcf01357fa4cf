#pragma once

// Self-checks of every module on the parameters of a run configuration.
// Each check compares a closed form or a bound against an independent
// evaluation and records the measured deviation and its limit.

#include <string>
#include <vector>

#include "bosegas/config.hpp"

namespace bosegas {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  double value = 0.0;  // measured deviation (or margin, see detail)
  double limit = 0.0;
  std::string detail;
};

/// lattice, ideal_gas, scattering, condensate, bogoliubov, oracle, free_energy.
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws ConfigError for an unknown name.
std::vector<CheckResult> run_suite(const RunConfig& config, const std::string& name);

/// One JSON object per line.
std::string to_json_line(const CheckResult& c);

}  // namespace bosegas
