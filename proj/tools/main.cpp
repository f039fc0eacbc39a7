#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relchirp/csv.hpp"
#include "relchirp/figures.hpp"
#include "relchirp/scenario.hpp"
#include "relchirp/validation.hpp"

namespace {

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
  } else {
    relchirp::write_file(out_path, content);
  }
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "relchirp: signals received by non-inertial relativistic observers and "
      "their spectra (oscillatory quadrature, stationary phase, Airy)"};
  app.require_subcommand(1);

  std::string config_path, out_path, methods_arg;
  int oversample = 8;
  std::size_t n_samples = 101;

  auto* kin = app.add_subcommand(
      "kinematics", "dump worldline kinematics (z, u, a, jolt, sigma) as CSV");
  kin->add_option("--config", config_path, "scenario JSON")->required();
  kin->add_option("--out", out_path, "output path (default stdout)");
  kin->add_option("--samples", n_samples, "grid size (default 101)");

  auto* spec = app.add_subcommand(
      "spectrum", "evaluate the spectrum methods on a wavenumber grid as CSV");
  spec->add_option("--config", config_path, "scenario JSON")->required();
  spec->add_option("--out", out_path, "output path (default stdout)");
  spec->add_option("--methods", methods_arg,
                   "override methods, comma-separated subset of "
                   "quadrature,spa,airy");
  spec->add_option("--oversample", oversample,
                   "quadrature oversampling factor (default 8)");

  std::string figure_name;
  auto* fig = app.add_subcommand(
      "figure", "emit the CSV bundle for a reproduction figure");
  fig->add_option("name", figure_name, "fig1 | fig2 | fig3 | fig4")->required();
  fig->add_option("--out", out_path, "output directory (default .)");
  fig->add_option("--oversample", oversample,
                  "quadrature oversampling factor (default 8)");

  std::vector<std::string> only;
  std::string perturb, report_path;
  auto* val = app.add_subcommand(
      "validate", "run the acceptance battery; nonzero exit on any failure");
  val->add_option("--only", only,
                  "run only checks whose id starts with the given prefix");
  val->add_option("--perturb", perturb,
                  "negative-control hook: inject a fault (j0-sign)");
  val->add_option("--out", report_path, "write the JSON report here");
  val->add_option("--oversample", oversample,
                  "quadrature oversampling factor (default 8)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (kin->parsed()) {
      const relchirp::ScenarioConfig config = relchirp::load_config(config_path);
      emit(out_path, to_csv(relchirp::compute_kinematics_table(config, n_samples)));
      return 0;
    }

    if (spec->parsed()) {
      relchirp::ScenarioConfig config = relchirp::load_config(config_path);
      if (!methods_arg.empty()) config.methods = split_csv(methods_arg);
      const auto table = relchirp::compute_spectrum_table(
          config, oversample, relchirp::worker_count_from_env());
      emit(out_path, to_csv(table));
      return 0;
    }

    if (fig->parsed()) {
      const auto panels = relchirp::make_figure(
          figure_name, oversample, relchirp::worker_count_from_env());
      const std::filesystem::path dir = out_path.empty() ? "." : out_path;
      std::filesystem::create_directories(dir);
      for (const auto& panel : panels) {
        const auto path = dir / (panel.name + ".csv");
        relchirp::write_file(path.string(), to_csv(panel.table));
        std::cerr << "wrote " << path.string() << "\n";
      }
      return 0;
    }

    if (val->parsed()) {
      relchirp::CheckOptions options;
      options.only = only;
      options.oversample = oversample;
      options.workers = relchirp::worker_count_from_env();
      if (perturb == "j0-sign") {
        options.perturb = relchirp::Perturbation::j0_sign_flip;
      } else if (!perturb.empty()) {
        std::cerr << "unknown perturbation '" << perturb << "'\n";
        return 2;
      }
      const auto results = relchirp::run_acceptance_checks(options);
      int failures = 0;
      for (const auto& r : results) {
        failures += r.pass ? 0 : 1;
        std::printf("[%s] %-24s measured=%.3e tol=%.3e (%.0f ms)%s%s\n",
                    r.pass ? "PASS" : "FAIL", r.id.c_str(), r.measured,
                    r.tolerance, r.runtime_ms, r.detail.empty() ? "" : " -- ",
                    r.detail.c_str());
      }
      if (!report_path.empty()) {
        relchirp::write_file(report_path, relchirp::checks_to_json(results));
      }
      if (results.empty()) {
        std::cerr << "no checks selected\n";
        return 2;
      }
      return failures == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
