// Command-line front end: Monte Carlo runs, parameter sweeps, and the
// closed-form rate-scaling tables.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <swan/config.hpp>
#include <swan/errors.hpp>
#include <swan/harness.hpp>
#include <swan/report.hpp>
#include <swan/scaling_laws.hpp>

namespace {

swan::ScenarioConfig load_scenario(const std::string& config_path) {
  swan::ScenarioConfig cfg;
  if (!config_path.empty()) swan::load_config_file(cfg, config_path);
  swan::apply_env_overrides(cfg);
  return cfg;
}

std::string default_out(swan::OutputFormat format) {
  return format == swan::OutputFormat::Csv ? "results.csv" : "results.json";
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed,
            std::string out_path, const std::string& format_name) {
  swan::ScenarioConfig cfg = load_scenario(config_path);
  if (seed) cfg.seed = *seed;
  cfg.finalize();

  const swan::OutputFormat format = swan::parse_format(format_name);
  if (out_path.empty()) out_path = default_out(format);

  const std::vector<swan::ScenarioResults> results = cfg.sweep
      ? swan::run_sweep(cfg)
      : std::vector<swan::ScenarioResults>{swan::run_scenario(cfg)};
  const std::string summary = swan::emit_results(results, out_path, format);

  std::size_t ok = 0, failed = 0;
  for (const auto& r : results) {
    ok += r.trials.size();
    failed += r.failures.size();
  }
  std::cout << "wrote " << out_path << " and " << summary << " (" << ok << " trials";
  if (failed > 0) std::cout << ", " << failed << " failed";
  std::cout << ")\n";
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& key,
              const std::string& values, std::optional<std::uint64_t> seed,
              std::string out_path, const std::string& format_name) {
  swan::ScenarioConfig cfg = load_scenario(config_path);
  if (!key.empty()) swan::set_config_key(cfg, "sweep_key", key);
  if (!values.empty()) swan::set_config_key(cfg, "sweep_values", values);
  if (seed) cfg.seed = *seed;
  cfg.finalize();
  if (!cfg.sweep) throw swan::ConfigError("sweep requires --key and --values");

  const swan::OutputFormat format = swan::parse_format(format_name);
  if (out_path.empty()) out_path = default_out(format);

  const std::vector<swan::ScenarioResults> results = swan::run_sweep(cfg);
  const std::string summary = swan::emit_results(results, out_path, format);
  std::cout << "wrote " << out_path << " and " << summary << " (" << results.size()
            << " sweep points)\n";
  return 0;
}

int cmd_scaling_laws(const std::string& limit, double L, double delta_yz, int m_max,
                     const std::string& out_path) {
  if (limit != "fc" && limit != "pc") {
    throw swan::ConfigError("--limit must be fc or pc");
  }
  if (m_max < 1 || m_max % 2 == 0) {
    throw swan::ConfigError("--m-max must be a positive odd integer");
  }

  swan::ScenarioConfig table;  // power/noise defaults
  table.finalize();
  const swan::RadioConfig radio = table.radio();

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw swan::IoError("cannot write '" + out_path + "'");
  out << "M,snr_exact,snr_approx,rate_exact,rate_approx\n";
  for (int M = 1; M <= m_max; M += 2) {
    swan::ScalingParams p{radio.P, radio.sigma2, radio.eta, L, delta_yz, M};
    const double exact = (limit == "fc") ? swan::snr_fc_exact(p) : swan::snr_pc_exact(p);
    const double approx = (limit == "fc") ? swan::snr_fc_approx(p) : swan::snr_pc_approx(p);
    out << M << ',' << swan::format_double(exact) << ',' << swan::format_double(approx) << ','
        << swan::format_double(swan::rate_from_snr(exact)) << ','
        << swan::format_double(swan::rate_from_snr(approx)) << '\n';
  }
  out.flush();
  if (!out) throw swan::IoError("write failed for '" + out_path + "'");
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uplink simulator for segmented-waveguide pinching-antenna receivers"};
  app.require_subcommand(1);

  // run
  std::string run_config, run_out, run_format = "csv";
  std::optional<std::uint64_t> run_seed;
  CLI::App* run = app.add_subcommand("run", "Run the configured Monte Carlo scenario");
  run->add_option("--config", run_config, "Scenario config file (key = value lines)");
  run->add_option("--seed", run_seed, "Override the scenario seed");
  run->add_option("--out", run_out, "Output path (default results.csv/.json)");
  run->add_option("--format", run_format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  // sweep
  std::string sweep_config, sweep_key, sweep_values, sweep_out, sweep_format = "csv";
  std::optional<std::uint64_t> sweep_seed;
  CLI::App* sweep = app.add_subcommand("sweep", "Run the scenario once per swept value");
  sweep->add_option("--config", sweep_config, "Scenario config file");
  sweep->add_option("--key", sweep_key, "Numeric scenario field to sweep");
  sweep->add_option("--values", sweep_values, "Comma-separated sweep values, e.g. 4,8,16");
  sweep->add_option("--seed", sweep_seed, "Override the scenario seed");
  sweep->add_option("--out", sweep_out, "Output path (default results.csv/.json)");
  sweep->add_option("--format", sweep_format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  // scaling-laws
  std::string sl_limit, sl_out = "scaling_laws.csv";
  double sl_L = 0.0, sl_dyz = 0.0;
  int sl_mmax = 0;
  CLI::App* sl = app.add_subcommand("scaling-laws", "Closed-form single-user SNR/rate tables");
  sl->add_option("--limit", sl_limit, "Architecture limit: fc or pc")->required();
  sl->add_option("--L", sl_L, "Segment length [m]")->required();
  sl->add_option("--delta-yz", sl_dyz, "User transverse distance [m]")->required();
  sl->add_option("--m-max", sl_mmax, "Largest odd segment count")->required();
  sl->add_option("--out", sl_out, "Output CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_config, run_seed, run_out, run_format);
    if (sweep->parsed()) {
      return cmd_sweep(sweep_config, sweep_key, sweep_values, sweep_seed, sweep_out,
                       sweep_format);
    }
    if (sl->parsed()) return cmd_scaling_laws(sl_limit, sl_L, sl_dyz, sl_mmax, sl_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
