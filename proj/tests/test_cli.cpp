#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "relchirp/csv.hpp"
#include "relchirp/figures.hpp"
#include "relchirp/scenario.hpp"

using namespace relchirp;

namespace {

const char* kJoltConfig = R"({
  "model": "jolt",
  "beta": 0.1,
  "a0_geom": 0.05,
  "j0_geom": 0.02,
  "wave": {"f0_hz": 2e13, "khat": [1, 0, 0], "e0": 1.0},
  "window": {"ctau_i": 0.0, "ctau_f": 1.0},
  "spectrum": {"n_k": 33, "methods": ["quadrature", "spa"]}
})";

const char* kFsConfig = R"({
  "model": "fs",
  "fs": {"kappa1": 0.05, "kappa1_p": 0.01, "kappa2": 0.02, "frame": "rest"},
  "wave": {"f0_hz": 2e13, "khat": [1, 0, 0], "e0": 1.0},
  "window": {"ctau_i": 0.0, "ctau_f": 1.0},
  "spectrum": {"n_k": 17}
})";

}  // namespace

TEST_CASE("config parsing and validation") {
  SUBCASE("a valid jolt config parses") {
    const ScenarioConfig c = ScenarioConfig::from_json_text(kJoltConfig);
    CHECK(c.model == "jolt");
    CHECK(c.a0() == doctest::Approx(0.05));
    CHECK(c.j0() == doctest::Approx(0.02));
  }

  SUBCASE("field-level errors are reported together") {
    try {
      ScenarioConfig::from_json_text(R"({
        "model": "warp",
        "beta": 1.5,
        "a0_geom": 1.0, "a0_si": 2.0,
        "window": {"ctau_i": 1.0, "ctau_f": 0.0}
      })");
      FAIL("expected config_error");
    } catch (const config_error& e) {
      const std::string msg = e.what();
      CHECK(msg.find("model") != std::string::npos);
      CHECK(msg.find("beta") != std::string::npos);
      CHECK(msg.find("a0_geom") != std::string::npos);
      CHECK(msg.find("window") != std::string::npos);
    }
  }

  SUBCASE("airy on a worldline model is rejected") {
    std::string text = kJoltConfig;
    const auto pos = text.find("\"spa\"");
    text.replace(pos, 5, "\"airy\"");
    CHECK_THROWS_AS(ScenarioConfig::from_json_text(text), config_error);
  }

  SUBCASE("inertial model must have zero chirp parameters") {
    CHECK_THROWS_AS(ScenarioConfig::from_json_text(R"({
      "model": "inertial", "a0_geom": 0.1,
      "window": {"ctau_i": 0, "ctau_f": 1}
    })"),
                    config_error);
  }

  SUBCASE("explicit tetrad frames are validated for orthonormality") {
    const char* text = R"({
      "model": "fs",
      "fs": {"kappa1": 0.05,
             "frame": {"e0": [1,0,0,0], "e1": [0,2,0,0],
                       "e2": [0,0,1,0], "e3": [0,0,0,1]}},
      "window": {"ctau_i": 0, "ctau_f": 1}
    })";
    const ScenarioConfig c = ScenarioConfig::from_json_text(text);
    CHECK_THROWS_AS(c.build_model(), config_error);
  }
}

TEST_CASE("SI and geometric parameter forms agree") {
  const ScenarioConfig geom = ScenarioConfig::from_json_text(kJoltConfig);
  std::string si_text = kJoltConfig;
  const double c2 = kSpeedOfLight * kSpeedOfLight;
  const double c3 = c2 * kSpeedOfLight;
  si_text.replace(si_text.find("\"a0_geom\": 0.05"), 15,
                  "\"a0_si\": " + std::to_string(0.05 * c2));
  si_text.replace(si_text.find("\"j0_geom\": 0.02"), 15,
                  "\"j0_si\": " + std::to_string(0.02 * c3));
  const ScenarioConfig si = ScenarioConfig::from_json_text(si_text);
  CHECK(std::abs(si.a0() / geom.a0() - 1.0) <= 1e-12);
  CHECK(std::abs(si.j0() / geom.j0() - 1.0) <= 1e-12);

  const auto t_geom = compute_spectrum_table(geom, 8, 1);
  const auto t_si = compute_spectrum_table(si, 8, 1);
  REQUIRE(t_geom.rows.size() == t_si.rows.size());
  for (std::size_t i = 0; i < t_geom.rows.size(); i += 7) {
    CHECK(std::abs(t_si.rows[i].abs_s - t_geom.rows[i].abs_s) <=
          1e-12 * t_geom.rows[i].abs_s);
  }
}

TEST_CASE("config round-trip preserves results bit-for-bit") {
  const ScenarioConfig c = ScenarioConfig::from_json_text(kJoltConfig);
  const ScenarioConfig c2 = ScenarioConfig::from_json_text(c.to_json_text());
  const auto t1 = compute_spectrum_table(c, 8, 1);
  const auto t2 = compute_spectrum_table(c2, 8, 1);
  REQUIRE(t1.rows.size() == t2.rows.size());
  for (std::size_t i = 0; i < t1.rows.size(); ++i) {
    CHECK(t1.rows[i].abs_s == t2.rows[i].abs_s);
    CHECK(t1.rows[i].re_s == t2.rows[i].re_s);
    CHECK(t1.rows[i].im_s == t2.rows[i].im_s);
  }
}

TEST_CASE("identical configs produce identical CSV bytes") {
  const ScenarioConfig c = ScenarioConfig::from_json_text(kFsConfig);
  const std::string csv1 = to_csv(compute_spectrum_table(c, 8, 2));
  const std::string csv2 = to_csv(compute_spectrum_table(c, 8, 1));
  CHECK(csv1 == csv2);  // worker count must not affect output
}

TEST_CASE("spectrum table structure") {
  const ScenarioConfig c = ScenarioConfig::from_json_text(kJoltConfig);
  const SpectrumTable t = compute_spectrum_table(c, 8, 1);
  REQUIRE(t.rows.size() == 33 * 2);
  // sorted by k, then method name within each k
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    CHECK(t.rows[i].k >= t.rows[i - 1].k);
  }
  // normalization: |S| at the reference wavenumber scales to 1
  const SignalModel m = c.build_model();
  const double k_ref = wavenumber_at(m, 0.0);
  for (const SpectrumRow& row : t.rows) {
    if (row.method != "quadrature") continue;
    CHECK(row.abs_s_normalized ==
          doctest::Approx(row.abs_s /
                          std::abs(eval_spectrum_at(
                              build_oscillatory_grid(m, std::vector<double>{k_ref}, 8),
                              k_ref)))
              .epsilon(1e-9));
    break;
  }
}

TEST_CASE("explicit sample counts drive the series-based quadrature") {
  // f0 = 1 GHz keeps the required sample count small
  const char* text = R"({
    "model": "jolt", "beta": 0.1, "a0_geom": 0.05, "j0_geom": 0.02,
    "wave": {"f0_hz": 1e9},
    "window": {"ctau_i": 0.0, "ctau_f": 1.0},
    "spectrum": {"n_k": 9, "methods": ["quadrature"]},
    "sampling": {"n_samples": 4097}
  })";
  const ScenarioConfig with_series = ScenarioConfig::from_json_text(text);
  ScenarioConfig automatic = with_series;
  automatic.n_samples.reset();
  const auto t1 = compute_spectrum_table(with_series, 8, 1);
  const auto t2 = compute_spectrum_table(automatic, 8, 1);
  for (std::size_t i = 0; i < t1.rows.size(); ++i) {
    CHECK(t1.rows[i].abs_s ==
          doctest::Approx(t2.rows[i].abs_s).epsilon(1e-5));
  }

  // an undersampled request propagates the guard with a sufficient count
  ScenarioConfig starved = with_series;
  starved.n_samples = 4;
  try {
    compute_spectrum_table(starved, 8, 1);
    FAIL("expected nyquist_error");
  } catch (const nyquist_error& e) {
    CHECK(e.required_samples > 4);
    starved.n_samples = e.required_samples * 8;  // guard bound, then oversample
    CHECK_NOTHROW(compute_spectrum_table(starved, 8, 1));
  }
}

TEST_CASE("kinematics table surfaces the invariant columns") {
  const ScenarioConfig c = ScenarioConfig::from_json_text(kJoltConfig);
  const KinematicsTable t = compute_kinematics_table(c, 101);
  REQUIRE(t.rows.size() == 101);
  const auto col = [&](const std::string& name) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      if (t.columns[i] == name) return i;
    }
    FAIL("missing column ", name);
    return std::size_t{0};
  };
  const std::size_t ctau_col = col("ctau");
  const std::size_t abs_a = col("abs_a");
  const std::size_t abs_sigma = col("abs_sigma");
  for (const auto& row : t.rows) {
    CHECK(std::abs(row[abs_a] - (0.05 + 0.02 * row[ctau_col])) <= 1e-8);
    CHECK(std::abs(row[abs_sigma] - 0.02) <= 1e-8);
  }

  // an inertial scenario has constant velocity columns
  const ScenarioConfig inertial = ScenarioConfig::from_json_text(R"({
    "model": "inertial", "beta": 0.3, "window": {"ctau_i": 0, "ctau_f": 1}
  })");
  const KinematicsTable ti = compute_kinematics_table(inertial, 11);
  const std::size_t u0 = col("u0"), u1 = col("u1");
  for (const auto& row : ti.rows) {
    CHECK(row[u0] == doctest::Approx(ti.rows[0][u0]).epsilon(1e-14));
    CHECK(row[u1] == doctest::Approx(ti.rows[0][u1]).epsilon(1e-14));
  }
}

TEST_CASE("CSV formatting") {
  const ScenarioConfig c = ScenarioConfig::from_json_text(kFsConfig);
  const std::string csv = to_csv(compute_spectrum_table(c, 8, 1));
  CHECK(csv.rfind("# tool: relchirp spectrum", 0) == 0);
  CHECK(csv.find("k,k_over_k0,abs_S,abs_S_normalized,re_S,im_S,method") !=
        std::string::npos);
  CHECK(csv.find("airy") != std::string::npos);
  // 15 significant digits
  CHECK(format_double(1.0 / 3.0) == "0.333333333333333");
  CHECK(format_double(1.5e17) == "1.5e+17");
}

TEST_CASE("figure scenarios are well-formed") {
  for (const std::string& name : figure_names()) {
    const auto scenarios = figure_scenarios(name);
    CHECK(!scenarios.empty());
    for (const auto& s : scenarios) {
      CHECK_NOTHROW(s.build_model());
      // every scenario must re-parse from its own serialization
      const ScenarioConfig round = ScenarioConfig::from_json_text(s.to_json_text());
      CHECK(round.model == s.model);
    }
  }
  CHECK_THROWS_AS(figure_scenarios("fig9"), std::invalid_argument);
}
