#include "magfb/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "magfb/config.hpp"
#include "magfb/csv.hpp"
#include "magfb/errors.hpp"
#include "magfb/sweep.hpp"

namespace magfb::cli {

namespace {

struct Options {
  std::string config_file;
  std::vector<std::string> overrides;
  std::string output;
  std::string outdir = ".";
  std::string dump_matrices;
  std::vector<std::string> axes;
  std::vector<std::string> figures;
  int grid = 0;
  int threads = 1;
};

RunConfig load_config(const Options& opt) {
  std::string text;
  if (!opt.config_file.empty()) {
    std::ifstream in(opt.config_file, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + opt.config_file + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
    if (!text.empty() && text.back() != '\n') text += '\n';
  }
  for (const std::string& kv : opt.overrides) text += kv + '\n';
  RunConfig cfg = parse_config(text);
  cfg.threads = std::max(1, opt.threads);
  if (opt.grid > 0) cfg.grid = opt.grid;
  cfg.output = opt.output;
  return cfg;
}

// NAME:START:STOP[:POINTS], values take the unit rules of NAME.
AxisSpec parse_axis(const std::string& text, const RunConfig& cfg) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() < 3 || parts.size() > 4) {
    throw ConfigError("axis '" + text + "': expected NAME:START:STOP[:POINTS]");
  }
  AxisSpec axis;
  axis.parameter = parse_parameter(parts[0]);
  axis.unit = default_unit(axis.parameter, cfg.system);
  try {
    axis.start = parse_value(parts[0], parts[1], cfg.system.omega_m);
    axis.stop = parse_value(parts[0], parts[2], cfg.system.omega_m);
    axis.points = cfg.grid.value_or(kDefaultGridPoints);
    if (parts.size() == 4) axis.points = std::stoi(parts[3]);
  } catch (const std::logic_error&) {
    throw ConfigError("axis '" + text + "': malformed point count");
  } catch (const ConfigError& e) {
    throw ConfigError("axis '" + text + "': " + e.what());
  }
  axis.validate();
  return axis;
}

void print_stability(std::ostream& out, const StabilityReport& s) {
  out << "stable: " << (s.stable ? "yes" : "no") << '\n'
      << "max real part (rad/s): " << format_number(s.max_real_part) << '\n'
      << "eigenvalues (rad/s):\n";
  for (const auto& ev : s.eigenvalues) {
    out << "  " << format_number(ev.real()) << (ev.imag() < 0 ? " - " : " + ")
        << format_number(std::abs(ev.imag())) << "i\n";
  }
}

void print_reports(std::ostream& out, const PointResult& p) {
  out << std::left << std::setw(6) << "pair" << std::setw(16) << "E_N" << std::setw(16)
      << "S_AtoB" << std::setw(16) << "S_BtoA" << std::setw(18) << "S_asym"
      << "class\n";
  for (const CorrelationReport& r : *p.reports) {
    out << std::setw(6) << pair_label(r.pair) << std::setw(16) << format_number(r.e_n)
        << std::setw(16) << format_number(r.s_ab) << std::setw(16)
        << format_number(r.s_ba) << std::setw(18) << format_number(r.s_asym)
        << to_string(r.classification) << '\n';
  }
  out << "min symplectic eigenvalue of V: " << format_number(p.min_symplectic)
      << (p.physical ? "" : "  (below 1/2: covariance is not physical)") << '\n';
}

int cmd_stability(const RunConfig& cfg, std::ostream& out) {
  const FeedbackRates rates = feedback_rates(cfg.system);
  const StabilityReport s =
      check_stability(build_drift(cfg.system, rates, cfg.system.g_gb_eff));
  print_stability(out, s);
  return s.stable ? kExitOk : kExitUnstable;
}

int cmd_correlations(const RunConfig& cfg, const Options& opt, std::ostream& out,
                     std::ostream& err) {
  const PointResult p = evaluate_point(cfg.system, {cfg.negativity});
  if (!opt.dump_matrices.empty()) {
    std::ofstream dump(opt.dump_matrices, std::ios::binary);
    if (!dump) throw Error("cannot open '" + opt.dump_matrices + "' for writing");
    const FeedbackRates rates = feedback_rates(cfg.system);
    write_matrix(dump, "L", build_drift(cfg.system, rates, cfg.system.g_gb_eff).entries);
    write_matrix(dump, "K",
                 build_diffusion(cfg.system, rates, thermal_occupancies(cfg.system)).entries);
    if (p.covariance) write_matrix(dump, "V", p.covariance->entries);
  }
  if (p.status == PointStatus::unstable) {
    err << "operating point is unstable\n";
    print_stability(out, p.stability);
    return kExitUnstable;
  }
  if (p.status == PointStatus::numerical_failure) {
    err << "numerical failure: " << p.message << '\n';
    return kExitFailure;
  }
  print_reports(out, p);
  if (!cfg.output.empty()) emit_csv(p, cfg.output);
  return kExitOk;
}

void print_sweep_summary(std::ostream& out, const SweepResult& r) {
  std::size_t unstable = 0, unphysical = 0;
  std::array<double, 3> max_en{};
  for (const PointResult& p : r.records) {
    if (p.status != PointStatus::ok) {
      ++unstable;
      continue;
    }
    if (!p.physical) ++unphysical;
    for (std::size_t k = 0; k < 3; ++k) max_en[k] = std::max(max_en[k], (*p.reports)[k].e_n);
  }
  out << "points: " << r.records.size() << ", unstable or failed: " << unstable
      << ", unphysical: " << unphysical << '\n';
  for (std::size_t k = 0; k < 3; ++k) {
    out << "  max E_" << pair_label(kPairs[k]) << " = " << format_number(max_en[k]) << '\n';
  }
}

int cmd_sweep(const RunConfig& cfg, const Options& opt, std::ostream& out) {
  if (opt.axes.empty() || opt.axes.size() > 2) {
    throw ConfigError("sweep needs one or two --axis options");
  }
  std::vector<AxisSpec> axes;
  for (const std::string& a : opt.axes) axes.push_back(parse_axis(a, cfg));
  const SweepResult r = sweep(cfg.system, axes, cfg.threads, {cfg.negativity});
  const std::string path = cfg.output.empty() ? "sweep.csv" : cfg.output;
  emit_csv(r, path);
  print_sweep_summary(out, r);
  out << "wrote " << path << '\n';
  return kExitOk;
}

int cmd_reproduce(const RunConfig& cfg, const Options& opt, std::ostream& out) {
  std::vector<std::string> names = opt.figures;
  if (names.size() == 1 && names[0] == "all") {
    names.assign(kPresetNames.begin(), kPresetNames.end());
  }
  // Resolve every name before running anything.
  std::vector<FigurePreset> presets;
  for (const std::string& n : names) {
    presets.push_back(figure_preset(n, cfg.system, cfg.grid.value_or(kDefaultGridPoints)));
  }
  std::filesystem::create_directories(opt.outdir);
  for (const FigurePreset& preset : presets) {
    const SweepResult r = sweep(preset.base, preset.axes, cfg.threads, {cfg.negativity});
    const std::filesystem::path path =
        std::filesystem::path(opt.outdir) / (preset.name + ".csv");
    emit_csv(r, path);
    out << preset.name << ": ";
    print_sweep_summary(out, r);
    out << "wrote " << path.string() << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steady-state correlations of a coherent-feedback cavity magnomechanical system",
               "magfb"};
  app.require_subcommand(1, 1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", opt.config_file, "key = value configuration file");
    sub->add_option("-s,--set", opt.overrides, "override one key, e.g. -s 'tau = 0.5'");
    sub->add_option("--threads", opt.threads, "worker threads (does not affect values)");
  };

  CLI::App* correlations = app.add_subcommand("correlations", "evaluate one operating point");
  add_common(correlations);
  correlations->add_option("-o,--output", opt.output, "CSV output path");
  correlations->add_option("--dump-matrices", opt.dump_matrices,
                           "write L, K and V as plain-text matrices");

  CLI::App* stability = app.add_subcommand("stability", "report drift-matrix eigenvalues");
  add_common(stability);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "evaluate a 1D or 2D parameter grid");
  add_common(sweep_cmd);
  sweep_cmd->add_option("-a,--axis", opt.axes, "NAME:START:STOP[:POINTS], given once or twice")
      ->required();
  sweep_cmd->add_option("-o,--output", opt.output, "CSV output path (default sweep.csv)");
  sweep_cmd->add_option("--grid", opt.grid, "points per axis when POINTS is omitted");

  CLI::App* reproduce = app.add_subcommand("reproduce", "run figure presets, write <fig>.csv");
  add_common(reproduce);
  reproduce->add_option("figures", opt.figures, "fig2 fig3 fig4a fig4b fig4c fig5 or all")
      ->required();
  reproduce->add_option("--outdir", opt.outdir, "output directory");
  reproduce->add_option("--grid", opt.grid, "points per axis");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // Help requests exit 0 and print the help of the subcommand asked for.
    const int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;
    err << '\n' << app.help();
    return kExitConfig;
  }

  try {
    RunConfig cfg = load_config(opt);
    for (const std::string& w : cfg.warnings) err << "warning: " << w << '\n';
    if (*correlations) return cmd_correlations(cfg, opt, out, err);
    if (*stability) return cmd_stability(cfg, out);
    if (*sweep_cmd) return cmd_sweep(cfg, opt, out);
    return cmd_reproduce(cfg, opt, out);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace magfb::cli
