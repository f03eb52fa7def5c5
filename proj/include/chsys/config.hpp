#pragma once

// Run configuration: a JSON document with the sections grid, time, model,
// coefficients, initial, lp, harness, monitor and output. Unknown keys are
// rejected and every problem is reported with its field path.

#include <string>
#include <vector>

#include "chsys/errors.hpp"
#include "chsys/harness.hpp"
#include "chsys/initial_data.hpp"
#include "chsys/integrator.hpp"
#include "json.hpp"

namespace chsys {

/// Validation failure carrying one message per offending field path.
class ConfigValidationError : public ConfigError {
 public:
  explicit ConfigValidationError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

struct RunConfig {
  std::size_t n_modes = 0;
  IntegratorConfig integrator;
  Model model;
  InitialSpec m_spec;
  InitialSpec n_spec;
  HarnessSettings harness;
  BlowupMonitor monitor;
  std::string output_directory;
};

/// Environment variable naming the root under which the default run directory is created.
inline constexpr const char* kOutputRootEnv = "CHSYS_OUTPUT_ROOT";

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Normalized echo with every default filled in; parse_config(dump) round trips.
nlohmann::json config_to_json(const RunConfig& cfg);

nlohmann::json schedule_to_json(const CoefficientSchedule& s);
nlohmann::json initial_to_json(const InitialSpec& s);

State make_initial_state(const RunConfig& cfg);

}  // namespace chsys
