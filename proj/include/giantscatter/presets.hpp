#pragma once

// Named figure-panel parameter sets and the `check` invariant suite.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "giantscatter/sweep.hpp"

namespace giantscatter {

struct FigurePreset {
  std::string id;
  std::string description;
  nlohmann::json config;              ///< sweep config document
  nlohmann::json caption_parameters;  ///< fixed values stated for the panel, by parameter name
  std::vector<std::string> notes;
};

const std::vector<FigurePreset>& figure_presets();

/// Throws ConfigError for an unknown id.
const FigurePreset& find_preset(const std::string& id);

/// Value of a named parameter (gamma, V6, delta_ka, Lambda, Delta_c1,
/// Delta_c2, Omega_c1, Omega_c2, theta1, theta2, phi_a, phi_b, Gamma_a,
/// Gamma_b) in the fixed part of a spec.
double spec_parameter(const SweepSpec& spec, const std::string& name);

struct ReproduceResult {
  std::filesystem::path table_path;
  std::filesystem::path manifest_path;
  std::size_t rows = 0;
};

/// Writes <id>.csv (or .json) and <id>.manifest.json into `out_dir`.
/// `points` replaces every axis count.
ReproduceResult reproduce(const std::string& id, const std::filesystem::path& out_dir,
                          std::optional<int> points = std::nullopt, int jobs = 1,
                          TableFormat format = TableFormat::csv);

/// Random physical parameters for a family. `closed_loop` forces
/// Delta_c2 = -Delta_c1, `equal_rabi` forces Omega_c2 = Omega_c1 and
/// `lossless` sets gamma = 0.
ScatterParams random_params(ModelFamily family, std::mt19937_64& rng, bool lossless, bool closed_loop,
                            bool equal_rabi = false);

/// Runs the invariant suite, one PASS/FAIL line per check. Returns true if all pass.
bool run_checks(std::ostream& out, int draws, std::uint64_t seed);

}  // namespace giantscatter
