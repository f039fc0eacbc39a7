#pragma once

#include <string>
#include <vector>

#include "relchirp/scenario.hpp"

namespace relchirp {

// One CSV-able panel of a reproduction figure.
struct FigurePanel {
  std::string name;  // file stem, e.g. "fig1_top"
  SpectrumTable table;
};

// Built-in scenarios for the four reproduction figures. The underlying
// parameters are repo conventions chosen to land in the stationary-phase
// regime at desk-scale runtimes; each panel echoes its full scenario in the
// CSV metadata.
//
//   fig1: classical Doppler line, exponential chirp, skewed chirp
//   fig2: acceleration vs jolt amplitude structure over the shifted band
//   fig3: monotone cubic-path spectrum vs its stationary-phase form
//   fig4: non-monotone cubic path: Airy fringes across the critical
//         wavenumber
std::vector<std::string> figure_names();
std::vector<ScenarioConfig> figure_scenarios(const std::string& figure);
std::vector<FigurePanel> make_figure(const std::string& figure, int oversample = 8,
                                     unsigned workers = 0);

}  // namespace relchirp
