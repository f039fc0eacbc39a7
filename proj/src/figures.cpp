#include "relchirp/figures.hpp"

#include <stdexcept>

namespace relchirp {

namespace {

// Carrier used by the figure scenarios: high enough that the band structure
// sits deep in the stationary-phase regime (see the spectrum acceptance
// checks), low enough that the quadrature oracle runs in seconds.
constexpr double kFigureCarrierHz = 2e13;

ScenarioConfig base_config(const std::string& model) {
  ScenarioConfig c;
  c.model = model;
  c.beta = 0.1;
  c.f0_hz = kFigureCarrierHz;
  c.khat = {1.0, 0.0, 0.0};
  c.e0 = 1.0;
  c.ctau_i = 0.0;
  c.ctau_f = 1.0;
  c.n_k = 512;
  return c;
}

ScenarioConfig inertial_line_config() {
  ScenarioConfig c = base_config("inertial");
  const double k_ref = doppler_factor(c.beta) * c.build_wave().k0();
  c.k_min = k_ref - 40.0;
  c.k_max = k_ref + 40.0;
  c.methods = {"quadrature"};
  return c;
}

// Clamp the sweep to the image of the wavenumber function (with a hair of
// inset) so every row has a stationary point in the window.
void clamp_to_band(ScenarioConfig& c) {
  const KBand band = wavenumber_range(c.build_model());
  c.k_min = band.k_min * (1.0 + 1e-9);
  c.k_max = band.k_max * (1.0 - 1e-9);
}

ScenarioConfig accel_config(double ctau_f, bool exact_band) {
  ScenarioConfig c = base_config("accel");
  c.a0_geom = 0.05;
  c.ctau_f = ctau_f;
  c.methods = {"quadrature", "spa"};
  if (exact_band) clamp_to_band(c);
  return c;
}

ScenarioConfig jolt_config(double ctau_f, bool exact_band) {
  ScenarioConfig c = base_config("jolt");
  c.a0_geom = 0.05;
  c.j0_geom = 0.02;
  c.ctau_f = ctau_f;
  c.methods = {"quadrature", "spa"};
  if (exact_band) clamp_to_band(c);
  return c;
}

ScenarioConfig fs_monotone_config() {
  ScenarioConfig c = base_config("fs");
  ScenarioConfig::FsBlock b;
  b.kappa1 = 0.05;
  b.kappa1_p = 0.01;
  b.kappa2 = 0.02;
  c.fs = b;
  c.methods = {"quadrature", "spa"};
  return c;
}

ScenarioConfig fs_turning_config() {
  ScenarioConfig c = base_config("fs");
  ScenarioConfig::FsBlock b;
  b.kappa1 = 0.05;
  b.kappa1_p = -0.0975;  // alpha.w = 0.1 for the +x wave, turning point at 0.5
  c.fs = b;
  const SignalModel m = c.build_model();
  const double k_c = *factors(m, c.ctau_f).k_c;
  c.k_min = k_c - 600.0;
  c.k_max = k_c + 1200.0;
  c.n_k = 1024;
  c.methods = {"quadrature", "airy"};
  return c;
}

}  // namespace

std::vector<std::string> figure_names() { return {"fig1", "fig2", "fig3", "fig4"}; }

std::vector<ScenarioConfig> figure_scenarios(const std::string& figure) {
  if (figure == "fig1") {
    return {inertial_line_config(), accel_config(1.0, false),
            jolt_config(1.0, false)};
  }
  if (figure == "fig2") {
    // windows chosen so the acceleration band stays nearly flat while the
    // jolt amplitude decays well clear of it
    return {accel_config(0.75, true), jolt_config(1.5, true)};
  }
  if (figure == "fig3") return {fs_monotone_config()};
  if (figure == "fig4") return {fs_turning_config()};
  throw std::invalid_argument("unknown figure '" + figure +
                              "' (expected fig1..fig4)");
}

std::vector<FigurePanel> make_figure(const std::string& figure, int oversample,
                                     unsigned workers) {
  const std::vector<ScenarioConfig> scenarios = figure_scenarios(figure);
  static const char* kFig1Names[] = {"fig1_top", "fig1_mid", "fig1_bot"};
  static const char* kFig2Names[] = {"fig2_accel", "fig2_jolt"};

  std::vector<FigurePanel> out;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    std::string name = figure;
    if (figure == "fig1") name = kFig1Names[i];
    if (figure == "fig2") name = kFig2Names[i];
    FigurePanel panel;
    panel.name = name;
    panel.table = compute_spectrum_table(scenarios[i], oversample, workers);
    panel.table.metadata.emplace_back("figure", name);
    out.push_back(std::move(panel));
  }
  return out;
}

}  // namespace relchirp
