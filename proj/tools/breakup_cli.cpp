// Command-line front end: run, sweep, fit, emit, presets.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "breakup/config.hpp"
#include "breakup/harness.hpp"

namespace {

using breakup::RunConfig;

struct ConfigFlags {
  std::string preset;
  std::string file;
  std::vector<std::string> sets;
  std::map<std::string, std::string> fields;
};

// Every RunConfig key becomes a --key flag; --set key=value is the generic form.
void add_config_flags(CLI::App* app, ConfigFlags& flags) {
  app->add_option("--preset", flags.preset, "built-in preset to start from");
  app->add_option("--config", flags.file, "key = value file applied after the preset");
  app->add_option("--set", flags.sets, "key=value override, repeatable");
  for (const auto& [key, value] : RunConfig{}.to_map()) {
    if (key == "preset") continue;
    app->add_option("--" + key, flags.fields[key], "default " + (value.empty() ? std::string("''") : value));
  }
}

RunConfig resolve(const ConfigFlags& flags) {
  RunConfig cfg = flags.preset.empty() ? RunConfig{} : breakup::preset(flags.preset);
  if (!flags.file.empty()) cfg = breakup::load_config(flags.file, cfg);
  for (const auto& [key, value] : flags.fields) {
    if (!value.empty()) cfg.set(key, value);
  }
  for (const auto& kv : flags.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw breakup::Error("--set expects key=value, got '" + kv + "'");
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (const char* w = std::getenv("BREAKUP_WORKERS"); w != nullptr && flags.fields.at("workers").empty()) {
    cfg.workers = breakup::worker_budget();
  }
  return cfg;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral break-up solver with complex-singularity tracking"};
  app.require_subcommand(1);

  ConfigFlags run_flags;
  auto* run_cmd = app.add_subcommand("run", "evolve, track and write a run directory");
  add_config_flags(run_cmd, run_flags);
  bool dry = false;
  run_cmd->add_flag("--print-config", dry, "print the resolved configuration and exit");

  ConfigFlags sweep_flags;
  std::string eps_text;
  std::string times_text;
  std::string sweep_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "dispersive versus dispersionless sup-norm scaling");
  add_config_flags(sweep_cmd, sweep_flags);
  sweep_cmd->add_option("--eps", eps_text, "comma separated epsilon list")->required();
  sweep_cmd->add_option("--times", times_text, "comma separated comparison times")->required();
  sweep_cmd->add_option("--out", sweep_out, "output directory (default: output_dir)");

  ConfigFlags fit_flags;
  std::string fit_path;
  auto* fit_cmd = app.add_subcommand("fit", "fit the spectrum of a stored snapshot");
  add_config_flags(fit_cmd, fit_flags);
  fit_cmd->add_option("snapshot", fit_path, "snapshot file")->required();

  std::string emit_dir;
  std::string emit_kind;
  std::string emit_offsets = "0,1,2";
  auto* emit_cmd = app.add_subcommand("emit", "write plot-ready columns from a run directory");
  emit_cmd->add_option("run_dir", emit_dir, "run directory")->required();
  emit_cmd->add_option("--kind", emit_kind, "profile, spectrum_loglog, trace or contour_slices")->required();
  emit_cmd->add_option("--y-offsets", emit_offsets, "y positions for contour_slices");

  auto* presets_cmd = app.add_subcommand("presets", "list built-in presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*presets_cmd) {
      for (const auto& name : breakup::preset_names()) std::cout << name << '\n';
      return 0;
    }
    if (*run_cmd) {
      const RunConfig cfg = resolve(run_flags);
      if (dry) {
        std::cout << cfg.serialize();
        return 0;
      }
      const breakup::RunSummary s = breakup::run(cfg);
      std::cout << s.to_json() << '\n';
      return breakup::exit_code(s.status);
    }
    if (*sweep_cmd) {
      const RunConfig cfg = resolve(sweep_flags);
      const auto report = breakup::sweep_epsilon(cfg, parse_list(eps_text), parse_list(times_text), cfg.workers);
      breakup::write_sweep(sweep_out.empty() ? cfg.output_dir : sweep_out, report);
      std::cout << report.to_json() << '\n';
      return report.error.empty() ? 0 : 1;
    }
    if (*fit_cmd) {
      const RunConfig cfg = resolve(fit_flags);
      const auto fit = breakup::fit_snapshot(fit_path, cfg.policy(), breakup::parse_slice_kind(cfg.slice));
      std::cout << fit.to_json() << '\n';
      return 0;
    }
    if (*emit_cmd) {
      for (const auto& p : breakup::emit_plotdata(emit_dir, breakup::parse_plot_kind(emit_kind), parse_list(emit_offsets))) {
        std::cout << p.string() << '\n';
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
