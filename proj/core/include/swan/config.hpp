#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <swan/geometry.hpp>

namespace swan {

enum class Method { SwanFcWmmse, SwanFcZf, SwanPcWmmse, MmimoFcWmmse, ConvPass };

const char* method_name(Method m);

// Throws UnsupportedVariantError for the recognized-but-unsupported
// "swan_pc_zf" combination and ConfigError for anything else unknown.
Method parse_method(const std::string& name);

struct SweepSpec {
  std::string key;
  std::vector<double> values;
};

// Scenario parameters in source units (dBm at the boundary). finalize()
// validates, converts to watts, and fills the wavelength-dependent default
// for delta_min; everything downstream consumes SI units only.
struct ScenarioConfig {
  double f_c = 28e9;         // carrier frequency [Hz]
  double n_eff = 1.4;        // waveguide effective refractive index
  double kappa = 0.08;       // in-waveguide attenuation [dB/m]
  double P_dBm = 10.0;       // per-user transmit power [dBm]
  double sigma2_dBm = -80.0; // noise power [dBm]
  double D_x = 80.0;         // service area extent along x [m]
  double D_y = 20.0;         // service area extent along y [m]
  double H = 3.0;            // waveguide height [m]
  int K = 4;                 // user count
  int N_RF = 25;             // RF chain count
  int M = 50;                // segment / antenna count
  double resolution = 0.01;  // pinching search grid step [m]
  std::optional<double> delta_min;  // min antenna spacing [m]; default lambda_c/2
  double tol = 1e-8;         // BCD fractional convergence tolerance
  Method method = Method::SwanFcWmmse;
  int trials = 1;
  std::uint64_t seed = 1;
  std::optional<SweepSpec> sweep;

  // Derived by finalize().
  double P = 0.0;           // [W]
  double sigma2 = 0.0;      // [W]
  double delta_min_m = 0.0; // [m]

  void finalize();

  GeometryConfig geometry() const { return GeometryConfig::make(D_x, D_y, H, M, delta_min_m); }
  RadioConfig radio() const { return RadioConfig::make(f_c, n_eff, kappa, P, sigma2); }
};

// Assigns one key from its textual value; numeric keys accept any numeric
// literal, integer keys must parse to an exact integer. Unknown keys throw
// ConfigError. Does not re-finalize.
void set_config_key(ScenarioConfig& cfg, const std::string& key, const std::string& value);

// True for keys sweep may target (the numeric scenario fields).
bool is_numeric_key(const std::string& key);

// Applies one sweep value to a copy of the scenario.
ScenarioConfig with_swept_value(const ScenarioConfig& base, const std::string& key, double value);

// Flat key = value text (TOML-compatible subset): '#' comments, blank lines,
// double-quoted or bare scalar values, [a, b, c] numeric lists for
// sweep_values. Later assignments win.
void load_config_file(ScenarioConfig& cfg, const std::string& path);

// Environment overrides: SWANSIM_<KEY> with the key upper-cased, e.g.
// SWANSIM_P_DBM, SWANSIM_N_RF, SWANSIM_METHOD.
void apply_env_overrides(ScenarioConfig& cfg);

}  // namespace swan
