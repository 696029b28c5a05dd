#pragma once

// Config-driven parameter sweeps and table emission.
//
// A config is one JSON object:
//
//   {
//     "model": "A" | "B" | "C",
//     "params": {
//       "gamma": 0.001, "V6": 20000, "delta_ka": -30, "Lambda": 1.5707963,
//       "drive1": {"Omega": 1, "Delta": 30, "theta": 0},
//       "drive2": {"Omega": 1, "Delta": -30, "theta": 0},
//       "mode_a": {"Gamma": 1, "phi": "pi/2"},
//       "mode_b": {"Gamma": 1, "phi": "pi/2"}
//     },
//     "axis1": {"name": "delta_ka", "start": -31, "stop": -29, "count": 801, "also": []},
//     "axis2": {...},
//     "outputs": ["T12_eff", "T12_full"]
//   }
//
// Angles accept a number or a string such as "pi/2", "3pi/2", "-0.25*pi".
// Output columns are <observable>_<route>; see `describe_outputs`.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "giantscatter/core.hpp"

namespace giantscatter {

inline constexpr const char* kToolVersion = "1.0.0";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepAxis {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  int count = 801;
  std::vector<std::string> also;  ///< parameters set to the same value at each point

  double value(int index) const;
};

struct SweepSpec {
  ModelFamily family = ModelFamily::A;
  ScatterParams params;
  double lambda = kPi / 2;
  bool delta_c2_follows = true;  ///< Delta_c2 tracks -Delta_c1 unless given explicitly
  SweepAxis axis1;
  std::optional<SweepAxis> axis2;
  std::vector<std::string> outputs;

  /// Fully resolved config, defaults filled in, as a JSON object.
  nlohmann::json resolved() const;
};

struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::json provenance = nlohmann::json::object();
};

/// Throws ConfigError with the offending key path.
SweepSpec parse_config(const std::string& text);
SweepSpec parse_config(const nlohmann::json& doc);
inline SweepSpec parse_config(const char* text) { return parse_config(std::string(text)); }

/// Parameter names accepted on an axis.
const std::vector<std::string>& axis_names();

/// Valid output columns for a model family.
std::vector<std::string> describe_outputs(ModelFamily family);

/// Row order: axis2 outer, axis1 inner. Evaluation is spread over `jobs`
/// threads; the table does not depend on `jobs`. Errors at a grid point are
/// rethrown with its coordinates (NumericalError stays NumericalError, every
/// other failure becomes ConfigError).
SweepTable run_sweep(const SweepSpec& spec, int jobs = 1);

enum class TableFormat { csv, json };

std::string emit(const SweepTable& table, TableFormat format);
SweepTable parse_table_json(const std::string& text);

}  // namespace giantscatter
