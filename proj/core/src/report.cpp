#include <swan/report.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include <json.hpp>

#include <swan/errors.hpp>

namespace swan {
namespace {

using nlohmann::json;

constexpr const char* kTrialHeader =
    "trial,seed,method,M,N_RF,K,P_dBm,sum_rate_bpshz,ee_bpshz_per_w,iterations,wall_ms";
constexpr const char* kSummaryHeader =
    "sweep_key,sweep_value,method,M,N_RF,K,P_dBm,trials_ok,trials_failed,rate_mean,rate_median,"
    "rate_std,ee_mean,ee_median,ee_std";

std::string stat_or_empty(double v) { return std::isnan(v) ? std::string() : format_double(v); }

int effective_n_rf(const ScenarioResults& r) {
  return r.cfg.method == Method::ConvPass ? 1 : r.cfg.N_RF;
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
  if (!out) throw IoError("cannot write '" + path + "'");
  return out;
}

void finish_write(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

void write_trials_csv(const std::vector<ScenarioResults>& results, const std::string& path) {
  std::ofstream out = open_for_write(path);
  out << kTrialHeader << '\n';
  for (const ScenarioResults& r : results) {
    for (const TrialRecord& t : r.trials) {
      out << t.trial << ',' << t.seed << ',' << method_name(t.method) << ',' << t.M << ','
          << t.N_RF << ',' << t.K << ',' << format_double(t.P_dBm) << ','
          << format_double(t.sum_rate) << ',' << format_double(t.ee) << ',' << t.iterations
          << ',' << format_double(t.wall_ms) << '\n';
    }
  }
  finish_write(out, path);
}

void write_summary_csv(const std::vector<ScenarioResults>& results, const std::string& path) {
  std::ofstream out = open_for_write(path);
  out << kSummaryHeader << '\n';
  for (const ScenarioResults& r : results) {
    out << r.sweep_key << ',' << (r.sweep_value ? format_double(*r.sweep_value) : std::string())
        << ',' << method_name(r.cfg.method) << ',' << r.cfg.M << ',' << effective_n_rf(r) << ','
        << r.cfg.K << ',' << format_double(r.cfg.P_dBm) << ',' << r.trials.size() << ','
        << r.failures.size() << ',' << stat_or_empty(r.rate.mean) << ','
        << stat_or_empty(r.rate.median) << ',' << stat_or_empty(r.rate.stddev) << ','
        << stat_or_empty(r.ee.mean) << ',' << stat_or_empty(r.ee.median) << ','
        << stat_or_empty(r.ee.stddev) << '\n';
  }
  finish_write(out, path);
}

json stats_json(const AggregateStats& s) {
  json j;
  j["mean"] = s.mean;
  j["median"] = s.median;
  j["std"] = s.stddev;
  return j;
}

json scenario_json(const ScenarioResults& r, bool with_trials) {
  json j;
  const ScenarioConfig& c = r.cfg;
  j["config"] = {{"f_c", c.f_c},
                 {"n_eff", c.n_eff},
                 {"kappa", c.kappa},
                 {"P_dBm", c.P_dBm},
                 {"sigma2_dBm", c.sigma2_dBm},
                 {"D_x", c.D_x},
                 {"D_y", c.D_y},
                 {"H", c.H},
                 {"K", c.K},
                 {"N_RF", c.N_RF},
                 {"M", c.M},
                 {"resolution", c.resolution},
                 {"delta_min", c.delta_min_m},
                 {"tol", c.tol},
                 {"method", method_name(c.method)},
                 {"trials", c.trials},
                 {"seed", c.seed}};
  if (!r.sweep_key.empty()) {
    j["sweep_key"] = r.sweep_key;
    j["sweep_value"] = r.sweep_value.value_or(0.0);
  }
  if (with_trials) {
    json trials = json::array();
    for (const TrialRecord& t : r.trials) {
      trials.push_back({{"trial", t.trial},
                        {"seed", t.seed},
                        {"method", method_name(t.method)},
                        {"M", t.M},
                        {"N_RF", t.N_RF},
                        {"K", t.K},
                        {"P_dBm", t.P_dBm},
                        {"sum_rate_bpshz", t.sum_rate},
                        {"per_user_rates", t.per_user_rates},
                        {"ee_bpshz_per_w", t.ee},
                        {"iterations", t.iterations},
                        {"wall_ms", t.wall_ms}});
    }
    j["trials"] = std::move(trials);
    json failures = json::array();
    for (const TrialFailure& f : r.failures) {
      failures.push_back({{"trial", f.trial}, {"reason", f.reason}});
    }
    j["failures"] = std::move(failures);
  }
  j["aggregate"] = {{"trials_ok", r.trials.size()},
                    {"trials_failed", r.failures.size()},
                    {"rate", stats_json(r.rate)},
                    {"ee", stats_json(r.ee)}};
  return j;
}

void write_json(const std::vector<ScenarioResults>& results, const std::string& path,
                bool with_trials) {
  json j;
  j["scenarios"] = json::array();
  for (const ScenarioResults& r : results) j["scenarios"].push_back(scenario_json(r, with_trials));
  std::ofstream out = open_for_write(path);
  out << j.dump(2) << '\n';
  finish_write(out, path);
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw ConfigError("unknown output format '" + name + "' (expected csv or json)");
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string summary_path_for(const std::string& path) {
  const auto slash = path.find_last_of("/\\");
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + "_summary";
  }
  return path.substr(0, dot) + "_summary" + path.substr(dot);
}

std::string emit_results(const std::vector<ScenarioResults>& results, const std::string& path,
                         OutputFormat format) {
  const std::string summary = summary_path_for(path);
  if (format == OutputFormat::Csv) {
    write_trials_csv(results, path);
    write_summary_csv(results, summary);
  } else {
    write_json(results, path, true);
    write_json(results, summary, false);
  }
  return summary;
}

}  // namespace swan
