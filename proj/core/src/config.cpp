#include <swan/config.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <swan/errors.hpp>

namespace swan {
namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Strips a trailing '#' comment, honoring double quotes.
std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::string unquote(const std::string& raw) {
  if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"') {
    return raw.substr(1, raw.size() - 2);
  }
  return raw;
}

double parse_double(const std::string& key, const std::string& raw) {
  const std::string v = unquote(trim(raw));
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected a number, got '" + raw + "'");
  }
}

long long parse_int(const std::string& key, const std::string& raw) {
  const double x = parse_double(key, raw);
  const long long n = static_cast<long long>(std::llround(x));
  if (static_cast<double>(n) != x) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" + raw + "'");
  }
  return n;
}

std::uint64_t parse_u64(const std::string& key, const std::string& raw) {
  const std::string v = unquote(trim(raw));
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("config key '" + key + "': expected an unsigned integer, got '" + raw +
                      "'");
  }
  return out;
}

std::vector<double> parse_list(const std::string& key, const std::string& raw) {
  std::string v = unquote(trim(raw));
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']') throw ConfigError("config key '" + key + "': unterminated list");
    v = v.substr(1, v.size() - 2);
  }
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_double(key, item));
  }
  if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
  return out;
}

int checked_int(const std::string& key, long long v, long long lo) {
  if (v < lo || v > std::numeric_limits<int>::max()) {
    throw ConfigError("config key '" + key + "': value out of range");
  }
  return static_cast<int>(v);
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::SwanFcWmmse: return "swan_fc_wmmse";
    case Method::SwanFcZf: return "swan_fc_zf";
    case Method::SwanPcWmmse: return "swan_pc_wmmse";
    case Method::MmimoFcWmmse: return "mmimo_fc_wmmse";
    case Method::ConvPass: return "conv_pass";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "swan_fc_wmmse") return Method::SwanFcWmmse;
  if (name == "swan_fc_zf") return Method::SwanFcZf;
  if (name == "swan_pc_wmmse") return Method::SwanPcWmmse;
  if (name == "mmimo_fc_wmmse") return Method::MmimoFcWmmse;
  if (name == "conv_pass") return Method::ConvPass;
  if (name == "swan_pc_zf") {
    throw UnsupportedVariantError(
        "zero-forcing digital stage is not defined for the partially-connected "
        "topology (per-user receivers span disjoint antenna subsets)");
  }
  throw ConfigError("unknown method '" + name + "'");
}

void ScenarioConfig::finalize() {
  if (!(f_c > 0.0)) throw ConfigError("f_c must be positive");
  if (!(n_eff >= 1.0)) throw ConfigError("n_eff must be >= 1");
  if (kappa < 0.0) throw ConfigError("kappa must be non-negative");
  if (!(D_x > 0.0) || !(D_y > 0.0)) throw ConfigError("D_x and D_y must be positive");
  if (!(H > 0.0)) throw ConfigError("H must be positive");
  if (K < 1) throw ConfigError("K must be >= 1");
  if (N_RF < 1) throw ConfigError("N_RF must be >= 1");
  if (M < 1) throw ConfigError("M must be >= 1");
  if (!(resolution > 0.0)) throw ConfigError("resolution must be positive");
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  if (trials < 0) throw ConfigError("trials must be non-negative");

  P = dbm_to_watt(P_dBm);
  sigma2 = dbm_to_watt(sigma2_dBm);
  const double lambda_c = kSpeedOfLight / f_c;
  delta_min_m = delta_min.value_or(lambda_c / 2.0);
  if (delta_min_m < 0.0) throw ConfigError("delta_min must be non-negative");

  if (sweep) {
    if (!is_numeric_key(sweep->key)) {
      throw ConfigError("sweep key '" + sweep->key + "' is not a numeric scenario field");
    }
    if (sweep->values.empty()) throw ConfigError("sweep requires at least one value");
  }
}

bool is_numeric_key(const std::string& key) {
  static const char* names[] = {"f_c",  "n_eff", "kappa",      "P_dBm",     "sigma2_dBm",
                                "D_x",  "D_y",   "H",          "K",         "N_RF",
                                "M",    "resolution", "delta_min", "tol"};
  return std::find_if(std::begin(names), std::end(names),
                      [&](const char* n) { return key == n; }) != std::end(names);
}

void set_config_key(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "f_c") cfg.f_c = parse_double(key, value);
  else if (key == "n_eff") cfg.n_eff = parse_double(key, value);
  else if (key == "kappa") cfg.kappa = parse_double(key, value);
  else if (key == "P_dBm") cfg.P_dBm = parse_double(key, value);
  else if (key == "sigma2_dBm") cfg.sigma2_dBm = parse_double(key, value);
  else if (key == "D_x") cfg.D_x = parse_double(key, value);
  else if (key == "D_y") cfg.D_y = parse_double(key, value);
  else if (key == "H") cfg.H = parse_double(key, value);
  else if (key == "K") cfg.K = checked_int(key, parse_int(key, value), 1);
  else if (key == "N_RF") cfg.N_RF = checked_int(key, parse_int(key, value), 1);
  else if (key == "M") cfg.M = checked_int(key, parse_int(key, value), 1);
  else if (key == "resolution") cfg.resolution = parse_double(key, value);
  else if (key == "delta_min") cfg.delta_min = parse_double(key, value);
  else if (key == "tol") cfg.tol = parse_double(key, value);
  else if (key == "method") cfg.method = parse_method(unquote(trim(value)));
  else if (key == "trials") cfg.trials = checked_int(key, parse_int(key, value), 0);
  else if (key == "seed") cfg.seed = parse_u64(key, value);
  else if (key == "sweep_key") {
    if (!cfg.sweep) cfg.sweep.emplace();
    cfg.sweep->key = unquote(trim(value));
  } else if (key == "sweep_values") {
    if (!cfg.sweep) cfg.sweep.emplace();
    cfg.sweep->values = parse_list(key, value);
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

ScenarioConfig with_swept_value(const ScenarioConfig& base, const std::string& key,
                                double value) {
  ScenarioConfig cfg = base;
  cfg.sweep.reset();
  if (key == "f_c") cfg.f_c = value;
  else if (key == "n_eff") cfg.n_eff = value;
  else if (key == "kappa") cfg.kappa = value;
  else if (key == "P_dBm") cfg.P_dBm = value;
  else if (key == "sigma2_dBm") cfg.sigma2_dBm = value;
  else if (key == "D_x") cfg.D_x = value;
  else if (key == "D_y") cfg.D_y = value;
  else if (key == "H") cfg.H = value;
  else if (key == "K") cfg.K = checked_int(key, parse_int(key, std::to_string(value)), 1);
  else if (key == "N_RF") cfg.N_RF = checked_int(key, parse_int(key, std::to_string(value)), 1);
  else if (key == "M") cfg.M = checked_int(key, parse_int(key, std::to_string(value)), 1);
  else if (key == "resolution") cfg.resolution = value;
  else if (key == "delta_min") cfg.delta_min = value;
  else if (key == "tol") cfg.tol = value;
  else throw ConfigError("sweep key '" + key + "' is not a numeric scenario field");
  cfg.finalize();
  return cfg;
}

void load_config_file(ScenarioConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config file '" + path + "' line " + std::to_string(lineno) +
                        ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config file '" + path + "' line " + std::to_string(lineno) +
                        ": expected key = value");
    }
    set_config_key(cfg, key, value);
  }
}

void apply_env_overrides(ScenarioConfig& cfg) {
  static const char* keys[] = {"f_c",   "n_eff",      "kappa",     "P_dBm", "sigma2_dBm",
                               "D_x",   "D_y",        "H",         "K",     "N_RF",
                               "M",     "resolution", "delta_min", "tol",   "method",
                               "trials", "seed",      "sweep_key", "sweep_values"};
  for (const char* key : keys) {
    std::string var = "SWANSIM_";
    for (const char* p = key; *p; ++p) {
      var += static_cast<char>(std::toupper(static_cast<unsigned char>(*p)));
    }
    if (const char* value = std::getenv(var.c_str())) set_config_key(cfg, key, value);
  }
}

}  // namespace swan
