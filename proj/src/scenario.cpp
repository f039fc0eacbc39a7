#include "relchirp/scenario.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace relchirp {

using nlohmann::json;

namespace {

void require(bool ok, std::vector<std::string>& errors, const std::string& msg) {
  if (!ok) errors.push_back(msg);
}

std::array<double, 3> parse_vec3(const json& j, const std::string& field,
                                 std::vector<std::string>& errors) {
  std::array<double, 3> out{0.0, 0.0, 0.0};
  if (!j.is_array() || j.size() != 3) {
    errors.push_back(field + ": expected an array of 3 numbers");
    return out;
  }
  for (int i = 0; i < 3; ++i) out[i] = j[i].get<double>();
  return out;
}

}  // namespace

double ScenarioConfig::a0() const {
  if (a0_geom) return *a0_geom;
  if (a0_si) return *a0_si / (kSpeedOfLight * kSpeedOfLight);
  return 0.0;
}

double ScenarioConfig::j0() const {
  if (j0_geom) return *j0_geom;
  if (j0_si) {
    return *j0_si / (kSpeedOfLight * kSpeedOfLight * kSpeedOfLight);
  }
  return 0.0;
}

PlaneWave ScenarioConfig::build_wave() const { return PlaneWave(f0_hz, khat, e0); }

SignalModel ScenarioConfig::build_model() const {
  const PlaneWave wave = build_wave();
  const Window window(ctau_i, ctau_f);
  if (model == "fs") {
    if (!fs) throw config_error("fs model requires the fs block");
    FSParams params(fs->kappa1, fs->kappa1_p, fs->kappa1_pp, fs->kappa2,
                    fs->kappa2_p, fs->kappa3);
    FSFrame frame;
    if (fs->frame_preset == "explicit") {
      const auto& rows = *fs->frame_rows;
      frame = FSFrame(FourVector(rows[0][0], rows[0][1], rows[0][2], rows[0][3]),
                      FourVector(rows[1][0], rows[1][1], rows[1][2], rows[1][3]),
                      FourVector(rows[2][0], rows[2][1], rows[2][2], rows[2][3]),
                      FourVector(rows[3][0], rows[3][1], rows[3][2], rows[3][3]));
    }
    if (!frame.is_orthonormal(1e-9)) {
      throw config_error("fs.frame: tetrad is not orthonormal");
    }
    return make_fs_model(params, frame, wave, window);
  }
  const JoltWorldlineParams p{beta, a0(), j0(), x1_0};
  if (model == "inertial") {
    if (p.a0 != 0.0 || p.j0 != 0.0) {
      throw config_error("inertial model requires a0 = j0 = 0");
    }
    return make_jolt_model(p, wave, window);
  }
  if (model == "accel") return make_accel_model(p, wave, window);
  if (model == "jolt") return make_jolt_model(p, wave, window);
  throw config_error("unknown model '" + model + "'");
}

std::vector<std::string> ScenarioConfig::effective_methods() const {
  if (!methods.empty()) return methods;
  if (model == "fs") return {"quadrature", "spa", "airy"};
  return {"quadrature", "spa"};
}

std::vector<double> ScenarioConfig::k_grid() const {
  const SignalModel m = build_model();
  const KBand band = wavenumber_range(m);
  const double lo = k_min.value_or(0.97 * band.k_min);
  const double hi = k_max.value_or(1.01 * band.k_max);
  if (!(lo < hi)) throw config_error("spectrum: k_min must be below k_max");
  if (n_k < 2) throw config_error("spectrum: n_k must be >= 2");
  std::vector<double> ks(static_cast<std::size_t>(n_k));
  for (int i = 0; i < n_k; ++i) {
    ks[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_k - 1);
  }
  return ks;
}

ScenarioConfig ScenarioConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config is not valid JSON: ") + e.what());
  }

  ScenarioConfig c;
  std::vector<std::string> errors;

  require(j.contains("model") && j["model"].is_string(), errors,
          "model: required string (inertial|accel|jolt|fs)");
  if (errors.empty()) c.model = j["model"].get<std::string>();
  const bool known = c.model == "inertial" || c.model == "accel" ||
                     c.model == "jolt" || c.model == "fs";
  require(known, errors, "model: must be one of inertial|accel|jolt|fs");

  if (j.contains("beta")) c.beta = j["beta"].get<double>();
  require(std::abs(c.beta) < 1.0, errors, "beta: |beta| must be < 1");

  auto read_pair = [&](const char* geom, const char* si,
                       std::optional<double>& g, std::optional<double>& s) {
    if (j.contains(geom)) g = j[geom].get<double>();
    if (j.contains(si)) s = j[si].get<double>();
    require(!(g && s), errors,
            std::string(geom) + "/" + si + ": give exactly one form");
  };
  read_pair("a0_geom", "a0_si", c.a0_geom, c.a0_si);
  read_pair("j0_geom", "j0_si", c.j0_geom, c.j0_si);
  if (j.contains("x1_0")) c.x1_0 = j["x1_0"].get<double>();

  if (j.contains("fs")) {
    const json& f = j["fs"];
    ScenarioConfig::FsBlock b;
    auto rd = [&](const char* name, double& dst) {
      if (f.contains(name)) dst = f[name].get<double>();
    };
    rd("kappa1", b.kappa1);
    rd("kappa1_p", b.kappa1_p);
    rd("kappa1_pp", b.kappa1_pp);
    rd("kappa2", b.kappa2);
    rd("kappa2_p", b.kappa2_p);
    rd("kappa3", b.kappa3);
    require(b.kappa1 >= 0.0, errors, "fs.kappa1: must be >= 0");
    if (f.contains("frame")) {
      if (f["frame"].is_string()) {
        b.frame_preset = f["frame"].get<std::string>();
        require(b.frame_preset == "rest", errors,
                "fs.frame: unknown preset '" + b.frame_preset + "'");
      } else if (f["frame"].is_object()) {
        b.frame_preset = "explicit";
        std::array<std::array<double, 4>, 4> rows{};
        const char* legs[4] = {"e0", "e1", "e2", "e3"};
        for (int i = 0; i < 4; ++i) {
          if (!f["frame"].contains(legs[i]) || !f["frame"][legs[i]].is_array() ||
              f["frame"][legs[i]].size() != 4) {
            errors.push_back(std::string("fs.frame.") + legs[i] +
                             ": expected an array of 4 numbers");
            continue;
          }
          for (int m = 0; m < 4; ++m) rows[i][m] = f["frame"][legs[i]][m].get<double>();
        }
        b.frame_rows = rows;
      } else {
        errors.push_back("fs.frame: expected preset name or explicit tetrad");
      }
    }
    if (f.contains("khat")) b.khat = parse_vec3(f["khat"], "fs.khat", errors);
    c.fs = b;
  }
  require(!(c.model == "fs" && !c.fs), errors, "fs: block required for model=fs");

  if (j.contains("wave")) {
    const json& w = j["wave"];
    if (w.contains("f0_hz")) c.f0_hz = w["f0_hz"].get<double>();
    if (w.contains("khat")) c.khat = parse_vec3(w["khat"], "wave.khat", errors);
    if (w.contains("e0")) c.e0 = w["e0"].get<double>();
  }
  require(c.f0_hz > 0.0, errors, "wave.f0_hz: must be > 0");
  require(c.e0 > 0.0, errors, "wave.e0: must be > 0");
  {
    const double n = std::sqrt(c.khat[0] * c.khat[0] + c.khat[1] * c.khat[1] +
                               c.khat[2] * c.khat[2]);
    require(std::abs(n - 1.0) <= 1e-12, errors, "wave.khat: must be a unit vector");
  }
  if (c.fs && c.fs->khat) {
    for (int i = 0; i < 3; ++i) {
      require(std::abs((*c.fs->khat)[i] - c.khat[i]) <= 1e-12, errors,
              "fs.khat: must match wave.khat");
    }
  }

  if (j.contains("window")) {
    const json& w = j["window"];
    if (w.contains("ctau_i")) c.ctau_i = w["ctau_i"].get<double>();
    if (w.contains("ctau_f")) c.ctau_f = w["ctau_f"].get<double>();
  }
  require(c.ctau_i < c.ctau_f, errors, "window: ctau_i must be below ctau_f");

  if (j.contains("spectrum")) {
    const json& s = j["spectrum"];
    if (s.contains("k_min")) c.k_min = s["k_min"].get<double>();
    if (s.contains("k_max")) c.k_max = s["k_max"].get<double>();
    if (s.contains("n_k")) c.n_k = s["n_k"].get<int>();
    if (s.contains("methods")) {
      for (const auto& m : s["methods"]) {
        const std::string name = m.get<std::string>();
        require(name == "quadrature" || name == "spa" || name == "airy", errors,
                "spectrum.methods: unknown method '" + name + "'");
        c.methods.push_back(name);
      }
      require(!c.methods.empty(), errors, "spectrum.methods: must be nonempty");
    }
    require(c.n_k >= 2, errors, "spectrum.n_k: must be >= 2");
  }
  const bool airy_requested =
      std::find(c.methods.begin(), c.methods.end(), "airy") != c.methods.end();
  require(!(airy_requested && c.model != "fs"), errors,
          "spectrum.methods: airy applies to the fs model only");

  if (j.contains("sampling")) {
    const json& s = j["sampling"];
    if (s.contains("n_samples")) c.n_samples = s["n_samples"].get<std::size_t>();
  }

  // the jolt/accel parameter preconditions
  if (c.model == "accel") {
    require(c.j0() == 0.0, errors, "accel model requires j0 = 0");
    require(c.a0() > 0.0, errors, "accel model requires a0 > 0");
  }
  if (c.model == "inertial") {
    require(c.a0() == 0.0 && c.j0() == 0.0, errors,
            "inertial model requires a0 = j0 = 0");
  }

  if (!errors.empty()) {
    std::string msg = "invalid config:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw config_error(msg);
  }
  return c;
}

std::string ScenarioConfig::to_json_text() const {
  json j;
  j["model"] = model;
  j["beta"] = beta;
  if (a0_geom) j["a0_geom"] = *a0_geom;
  if (a0_si) j["a0_si"] = *a0_si;
  if (j0_geom) j["j0_geom"] = *j0_geom;
  if (j0_si) j["j0_si"] = *j0_si;
  j["x1_0"] = x1_0;
  if (fs) {
    json f;
    f["kappa1"] = fs->kappa1;
    f["kappa1_p"] = fs->kappa1_p;
    f["kappa1_pp"] = fs->kappa1_pp;
    f["kappa2"] = fs->kappa2;
    f["kappa2_p"] = fs->kappa2_p;
    f["kappa3"] = fs->kappa3;
    if (fs->frame_preset == "explicit" && fs->frame_rows) {
      json frame;
      const char* legs[4] = {"e0", "e1", "e2", "e3"};
      for (int i = 0; i < 4; ++i) frame[legs[i]] = (*fs->frame_rows)[i];
      f["frame"] = frame;
    } else {
      f["frame"] = fs->frame_preset;
    }
    j["fs"] = f;
  }
  j["wave"] = {{"f0_hz", f0_hz}, {"khat", khat}, {"e0", e0}};
  j["window"] = {{"ctau_i", ctau_i}, {"ctau_f", ctau_f}};
  json s;
  if (k_min) s["k_min"] = *k_min;
  if (k_max) s["k_max"] = *k_max;
  s["n_k"] = n_k;
  if (!methods.empty()) s["methods"] = methods;
  j["spectrum"] = s;
  if (n_samples) j["sampling"] = {{"n_samples", *n_samples}};
  return j.dump(2);
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return ScenarioConfig::from_json_text(buf.str());
}

unsigned worker_count_from_env() {
  if (const char* env = std::getenv("RELCHIRP_WORKERS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace {

// Ordered parallel map over the k grid: each slot is written independently,
// so results do not depend on the worker count.
template <class Fn>
void parallel_over(std::size_t n, unsigned workers, Fn&& fn) {
  if (workers == 0) workers = worker_count_from_env();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::future<void>> futs;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    futs.push_back(std::async(std::launch::async, [lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    }));
  }
  for (auto& f : futs) f.get();
}

std::complex<double> spa_value_for(const SignalModel& model, double k) {
  return std::visit(
      [&](const auto& motion) -> std::complex<double> {
        using T = std::decay_t<decltype(motion)>;
        if constexpr (std::is_same_v<T, FSQuadratic>) {
          const auto r = spa_fs_spectrum(motion.alpha, motion.params, model.wave,
                                         model.window, k);
          return r.sample.value;
        } else if constexpr (std::is_same_v<T, AccelExact>) {
          const auto r =
              spa_accel_spectrum(motion.params, model.wave, model.window, k);
          return r.sample.value;
        } else {
          if (motion.params.j0 == 0.0) {
            if (motion.params.a0 == 0.0) return {0.0, 0.0};  // no chirp: SPA n/a
            const auto r =
                spa_accel_spectrum(motion.params, model.wave, model.window, k);
            return r.sample.value;
          }
          const auto r =
              spa_jolt_spectrum(motion.params, model.wave, model.window, k);
          return r.sample.value;
        }
      },
      model.motion);
}

std::complex<double> airy_value_for(const SignalModel& model, double k) {
  const auto* fs = std::get_if<FSQuadratic>(&model.motion);
  if (!fs) throw config_error("airy method applies to the fs model only");
  return airy_fs_spectrum(fs->alpha, fs->params, model.wave, k).value;
}

}  // namespace

SpectrumTable compute_spectrum_table(const ScenarioConfig& config, int oversample,
                                     unsigned workers) {
  const SignalModel model = config.build_model();
  const std::vector<double> ks = config.k_grid();
  const std::vector<std::string> methods = config.effective_methods();
  for (const std::string& m : methods) {
    if (m != "quadrature" && m != "spa" && m != "airy") {
      throw config_error("unknown spectrum method '" + m + "'");
    }
    if (m == "airy" && config.model != "fs") {
      throw config_error("airy method applies to the fs model only");
    }
  }
  const double k0 = model.wave.k0();
  const double k_ref = wavenumber_at(model, model.window.ctau_i);

  SpectrumTable table;
  table.metadata.emplace_back("tool", "relchirp spectrum");
  table.metadata.emplace_back("config", config.to_json_text());
  table.metadata.emplace_back("oversample", std::to_string(oversample));
  table.metadata.emplace_back("k_ref", std::to_string(k_ref));
  if (config.n_samples) {
    table.metadata.emplace_back("n_samples", std::to_string(*config.n_samples));
  }
  table.columns = {"k",    "k_over_k0", "abs_S", "abs_S_normalized",
                   "re_S", "im_S",      "method"};

  const bool wants_quadrature =
      std::find(methods.begin(), methods.end(), "quadrature") != methods.end();

  // With an explicit sample count the quadrature runs over the synthesized
  // series (and inherits its Nyquist refusal); otherwise the oscillatory
  // grid is sized automatically from the band and oversampling factor.
  OscillatoryGrid grid;
  std::vector<SpectrumSample> series_spectrum;
  std::vector<double> series_k;
  if (wants_quadrature) {
    if (config.n_samples) {
      const ReceivedSeries series = synthesize(model, *config.n_samples);
      series_k = ks;
      series_k.push_back(k_ref);
      series_spectrum = quadrature_spectrum(series, series_k);
    } else {
      std::vector<double> all_k = ks;
      all_k.push_back(k_ref);
      grid = build_oscillatory_grid(model, all_k, oversample);
    }
  }
  auto quadrature_value = [&](std::size_t k_index) {
    // k_index == ks.size() addresses the appended reference wavenumber
    if (config.n_samples) return series_spectrum[k_index].value;
    return eval_spectrum_at(grid, k_index == ks.size() ? k_ref : ks[k_index]);
  };

  std::vector<SpectrumRow> rows(ks.size() * methods.size());
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    const std::string& method = methods[mi];
    std::complex<double> ref_value;
    if (method == "quadrature") {
      ref_value = quadrature_value(ks.size());
    } else if (method == "spa") {
      ref_value = spa_value_for(model, k_ref);
    } else {
      ref_value = airy_value_for(model, k_ref);
    }
    const double norm = std::abs(ref_value) > 0.0 ? std::abs(ref_value) : 1.0;

    parallel_over(ks.size(), workers, [&](std::size_t i) {
      std::complex<double> v;
      if (method == "quadrature") {
        v = quadrature_value(i);
      } else if (method == "spa") {
        v = spa_value_for(model, ks[i]);
      } else {
        v = airy_value_for(model, ks[i]);
      }
      SpectrumRow& row = rows[i * methods.size() + mi];
      row.k = ks[i];
      row.k_over_k0 = ks[i] / k0;
      row.abs_s = std::abs(v);
      row.abs_s_normalized = std::abs(v) / norm;
      row.re_s = v.real();
      row.im_s = v.imag();
      row.method = method;
    });
  }
  table.rows = std::move(rows);
  return table;
}

KinematicsTable compute_kinematics_table(const ScenarioConfig& config,
                                         std::size_t samples) {
  if (samples < 2) throw config_error("kinematics: need at least 2 samples");
  if (config.model == "fs") {
    throw config_error(
        "kinematics command applies to worldline models (inertial|accel|jolt)");
  }
  const JoltWorldlineParams p{config.beta, config.a0(), config.j0(), config.x1_0};

  KinematicsTable t;
  t.metadata.emplace_back("tool", "relchirp kinematics");
  t.metadata.emplace_back("config", config.to_json_text());
  t.columns = {"ctau",   "z0",     "z1",     "z2",     "z3",     "u0",
               "u1",     "u2",     "u3",     "a0",     "a1",     "a2",
               "a3",     "jolt0",  "jolt1",  "jolt2",  "jolt3",  "sigma0",
               "sigma1", "sigma2", "sigma3", "abs_a",  "abs_sigma"};
  t.rows.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double ctau =
        config.ctau_i + (config.ctau_f - config.ctau_i) *
                            static_cast<double>(i) /
                            static_cast<double>(samples - 1);
    const KinematicState st = kinematic_state(p, ctau);
    std::vector<double> row;
    row.reserve(t.columns.size());
    row.push_back(ctau);
    for (const FourVector* v : {&st.z, &st.u, &st.a, &st.jolt, &st.sigma}) {
      for (int c = 0; c < 4; ++c) row.push_back((*v)[c]);
    }
    row.push_back(std::sqrt(std::abs(minkowski_dot(st.a, st.a))));
    row.push_back(std::sqrt(std::abs(minkowski_dot(st.sigma, st.sigma))));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace relchirp
