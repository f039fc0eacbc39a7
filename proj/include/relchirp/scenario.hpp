#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relchirp/oscillatory.hpp"
#include "relchirp/received_signal.hpp"

namespace relchirp {

class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Scenario description parsed from a JSON document. Kinematic parameters can
// be given in geometric units (a0 in 1/m, j0 in 1/m^2) or SI (m/s^2, m/s^3);
// exactly one form per parameter. SI values convert as a0 = a_si / c^2,
// j0 = j_si / c^3.
struct ScenarioConfig {
  std::string model;  // inertial | accel | jolt | fs
  double beta = 0.0;
  std::optional<double> a0_geom, a0_si;
  std::optional<double> j0_geom, j0_si;
  double x1_0 = 0.0;

  struct FsBlock {
    double kappa1 = 0.0, kappa1_p = 0.0, kappa1_pp = 0.0;
    double kappa2 = 0.0, kappa2_p = 0.0, kappa3 = 0.0;
    std::string frame_preset = "rest";            // or "explicit"
    std::optional<std::array<std::array<double, 4>, 4>> frame_rows;
    std::optional<std::array<double, 3>> khat;    // must match wave.khat if set
  };
  std::optional<FsBlock> fs;

  double f0_hz = 1e9;  // reference carrier
  std::array<double, 3> khat{1.0, 0.0, 0.0};
  double e0 = 1.0;

  double ctau_i = 0.0;
  double ctau_f = 1.0;

  std::optional<double> k_min, k_max;  // default: [0.97, 1.01] * wavenumber band
  int n_k = 512;
  std::vector<std::string> methods;    // subset of quadrature|spa|airy

  std::optional<std::size_t> n_samples;  // default: Nyquist-guarded automatic

  // Parsed model parameters in geometric units.
  double a0() const;
  double j0() const;

  SignalModel build_model() const;
  PlaneWave build_wave() const;
  std::vector<std::string> effective_methods() const;
  std::vector<double> k_grid() const;

  static ScenarioConfig from_json_text(const std::string& text);
  std::string to_json_text() const;
};

ScenarioConfig load_config(const std::string& path);

// One output row of the spectrum command, sorted by (k, method).
struct SpectrumRow {
  double k = 0.0;
  double k_over_k0 = 0.0;
  double abs_s = 0.0;
  double abs_s_normalized = 0.0;
  double re_s = 0.0;
  double im_s = 0.0;
  std::string method;
};

struct SpectrumTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<SpectrumRow> rows;
};

// Evaluates every requested method on the scenario's k grid. The
// normalization column divides by the method's own magnitude at the
// reference wavenumber K(ctau_i). Worker count 0 means hardware concurrency.
SpectrumTable compute_spectrum_table(const ScenarioConfig& config,
                                     int oversample = 8, unsigned workers = 0);

// Kinematics dump: z, u, a, jolt, sigma and the derived magnitudes on a
// uniform proper-time grid.
struct KinematicsTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

KinematicsTable compute_kinematics_table(const ScenarioConfig& config,
                                         std::size_t samples = 101);

unsigned worker_count_from_env();

}  // namespace relchirp
