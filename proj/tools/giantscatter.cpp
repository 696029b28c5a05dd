#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "giantscatter/presets.hpp"
#include "giantscatter/sweep.hpp"

using namespace giantscatter;

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
}

int run_table(const std::string& config_path, bool want_grid, const std::string& out_path, TableFormat format,
              int jobs) {
  const SweepSpec spec = parse_config(slurp(config_path));
  if (want_grid && !spec.axis2) throw ConfigError("axis2: required by the grid command");
  if (!want_grid && spec.axis2) throw ConfigError("axis2: the spectrum command takes one axis; use grid");
  for (const auto& w : regime_warnings(spec.params, spec.family)) std::cerr << "warning: " << w << "\n";
  write_output(emit(run_sweep(spec, jobs), format), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-photon scattering by driven Rydberg-atom pairs in waveguides"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format_name = "csv";
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::optional<int> points;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format_name, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  };

  auto* spectrum = app.add_subcommand("spectrum", "One model, one sweep axis");
  spectrum->add_option("--config", config_path, "Sweep config (JSON)")->required();
  spectrum->add_option("--out", out_path, "Output file (stdout if omitted)");
  add_common(spectrum);

  auto* grid = app.add_subcommand("grid", "One model, two sweep axes");
  grid->add_option("--config", config_path, "Sweep config (JSON)")->required();
  grid->add_option("--out", out_path, "Output file (stdout if omitted)");
  add_common(grid);

  std::string figure;
  std::string out_dir = ".";
  auto* repro = app.add_subcommand("reproduce", "Write the data of a figure panel, or all of them");
  repro->add_option("figure", figure, "Panel id (fig2a ... figS1b) or 'all'")->required();
  repro->add_option("--out", out_dir, "Output directory");
  repro->add_option("--points", points, "Points per axis (default 801)")->check(CLI::Range(2, 10'000'000));
  add_common(repro);

  int draws = 200;
  std::uint64_t seed = 20240229;
  auto* check = app.add_subcommand("check", "Run the invariant suite");
  check->add_option("--draws", draws, "Random draws per property")->check(CLI::PositiveNumber);
  check->add_option("--seed", seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  const TableFormat format = format_name == "json" ? TableFormat::json : TableFormat::csv;
  try {
    if (*spectrum) return run_table(config_path, false, out_path, format, jobs);
    if (*grid) return run_table(config_path, true, out_path, format, jobs);
    if (*repro) {
      std::vector<std::string> ids;
      if (figure == "all") {
        for (const auto& f : figure_presets()) ids.push_back(f.id);
      } else {
        ids.push_back(figure);
      }
      for (const auto& id : ids) {
        const auto result = reproduce(id, out_dir, points, jobs, format);
        std::cerr << id << ": " << result.rows << " rows -> " << result.table_path.string() << "\n";
      }
      return 0;
    }
    if (*check) return run_checks(std::cout, draws, seed) ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
