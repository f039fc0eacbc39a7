#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "relchirp/frenet_serret.hpp"
#include "relchirp/kinematics.hpp"

using namespace relchirp;

namespace {

FSFrame rest_frame() { return FSFrame{}; }

}  // namespace

TEST_CASE("fs_frame_evolve") {
  SUBCASE("zero curvatures keep the frame constant") {
    const FSParams p{};
    const TetradTrajectory traj = fs_frame_evolve(p, rest_frame(), 0.0, 1.0);
    const Tetrad& last = traj.frames.back();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        CHECK(last[i][j] == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-15));
      }
  }

  SUBCASE("pure curvature reproduces the hyperbolic tangent") {
    const double a0 = 0.8;
    const FSParams p{a0, 0, 0, 0, 0, 0};
    const TetradTrajectory traj = fs_frame_evolve(p, rest_frame(), 0.0, 1.0, 1e-3);
    for (std::size_t i = 0; i < traj.size(); i += 100) {
      const double t = traj.ctau[i];
      CHECK(traj.frames[i][0][0] == doctest::Approx(std::cosh(a0 * t)).epsilon(1e-10));
      CHECK(traj.frames[i][0][1] == doctest::Approx(std::sinh(a0 * t)).epsilon(1e-10));
      CHECK(std::abs(traj.frames[i][0][2]) <= 1e-12);
    }
  }

  SUBCASE("gram matrix drift stays below 1e-9 for random curvatures") {
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> kd(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
      const FSParams p{std::abs(kd(rng)), 0, 0, kd(rng), 0, kd(rng)};
      const TetradTrajectory traj = fs_frame_evolve(p, rest_frame(), 0.0, 1.0, 1e-3);
      CHECK(traj.frames.back().gram_deviation() <= 1e-9);
    }
  }

  SUBCASE("rejects non-orthonormal initial frame") {
    Tetrad bad;
    bad[2][2] = 0.99;
    CHECK_THROWS_AS(fs_frame_evolve(FSParams{}, bad, 0.0, 1.0),
                    std::invalid_argument);
  }
}

TEST_CASE("fs_path_expansion") {
  SUBCASE("zero curvatures give a straight worldline") {
    const FourVector z0(0.5, 1.0, 0.0, 0.0);
    const FourVector z = fs_path_expansion(FSParams{}, rest_frame(), z0, 2.0, 3);
    CHECK(z[0] == doctest::Approx(2.5));
    CHECK(z[1] == doctest::Approx(1.0));
  }

  SUBCASE("matches the hyperbolic worldline through third order") {
    const double a0 = 0.05;
    const FSParams p{a0, 0, 0, 0, 0, 0};
    const JoltWorldlineParams wp{0.0, a0, 0.0, 0.0};
    const double t = 1e-2;
    const FourVector approx =
        fs_path_expansion(p, rest_frame(), FourVector{}, t, 3);
    const FourVector exact = worldline_position(wp, t);
    // remainders of the truncated series: a0^4 t^5/120 and a0^3 t^4/24
    const double bound0 = 1.5 * std::pow(a0, 4) * std::pow(t, 5) / 120.0;
    const double bound1 = 1.5 * std::pow(a0, 3) * std::pow(t, 4) / 24.0;
    CHECK(std::abs(approx[0] - exact[0]) <= bound0 + 1e-16);
    CHECK(std::abs(approx[1] - exact[1]) <= bound1 + 1e-16);
  }

  SUBCASE("order-4 minus order-3 equals the explicit quartic terms") {
    const FSParams p{0.3, 0.1, 0.05, 0.2, 0.07, 0.4};
    const double t = 0.1;
    const FourVector d3 = fs_path_expansion(p, rest_frame(), FourVector{}, t, 3);
    const FourVector d4 = fs_path_expansion(p, rest_frame(), FourVector{}, t, 4);
    const double t4 = t * t * t * t;
    const double q0 = 3.0 * p.kappa1 * p.kappa1_p * t4 / 24.0;
    const double q1 = (std::pow(p.kappa1, 3) + p.kappa1_pp -
                       p.kappa1 * p.kappa2 * p.kappa2) *
                      t4 / 24.0;
    const double q2 =
        (2.0 * p.kappa1_p * p.kappa2 + p.kappa1 * p.kappa2_p) * t4 / 24.0;
    const double q3 = p.kappa1 * p.kappa2 * p.kappa3 * t4 / 24.0;
    CHECK(d4[0] - d3[0] == doctest::Approx(q0).epsilon(1e-14));
    CHECK(d4[1] - d3[1] == doctest::Approx(q1).epsilon(1e-14));
    CHECK(d4[2] - d3[2] == doctest::Approx(q2).epsilon(1e-14));
    CHECK(d4[3] - d3[3] == doctest::Approx(q3).epsilon(1e-14));
  }

  SUBCASE("planar curvatures keep the path in the e0-e1 plane exactly") {
    const FSParams p{0.4, 0.1, 0.0, 0.0, 0.0, 0.0};
    const FourVector z = fs_path_expansion(p, rest_frame(), FourVector{}, 0.8, 4);
    CHECK(z[2] == 0.0);
    CHECK(z[3] == 0.0);
  }

  SUBCASE("rejects unsupported orders") {
    CHECK_THROWS_AS(
        fs_path_expansion(FSParams{}, rest_frame(), FourVector{}, 0.1, 5),
        std::invalid_argument);
  }
}

TEST_CASE("expansion tangent matches the evolved frame through O(ctau^2)") {
  // constant-curvature comparison, so kappa1' = 0 on both sides
  const FSParams p{0.6, 0.0, 0.0, 0.3, 0.0, 0.2};
  const double t = 1e-2;
  const TetradTrajectory traj = fs_frame_evolve(p, rest_frame(), 0.0, t, 1e-4);
  const FourVector e0_evolved = traj.frames.back()[0];
  const double h = 1e-3;
  FourVector tangent;
  {
    const FourVector m2 = fs_path_expansion(p, rest_frame(), FourVector{}, t - 2 * h, 3);
    const FourVector m1 = fs_path_expansion(p, rest_frame(), FourVector{}, t - h, 3);
    const FourVector p1 = fs_path_expansion(p, rest_frame(), FourVector{}, t + h, 3);
    const FourVector p2 = fs_path_expansion(p, rest_frame(), FourVector{}, t + 2 * h, 3);
    for (int j = 0; j < 4; ++j) {
      tangent[j] = (m2[j] - 8.0 * m1[j] + 8.0 * p1[j] - p2[j]) / (12.0 * h);
    }
  }
  for (int j = 0; j < 4; ++j) {
    CHECK(std::abs(tangent[j] - e0_evolved[j]) <= 1e-7);
  }
}

TEST_CASE("three_velocity") {
  SUBCASE("rest worldline") {
    const JoltWorldlineParams p{0.0, 0.0, 0.0, 0.0};
    auto path = [&](double t) { return worldline_position(p, t); };
    const auto v = three_velocity(path, 0.5);
    CHECK(std::abs(v[0]) <= 1e-8);
    CHECK(std::abs(v[1]) <= 1e-8);
    CHECK(std::abs(v[2]) <= 1e-8);
  }

  SUBCASE("boost worldline at beta = 0.6") {
    const JoltWorldlineParams p{0.6, 0.0, 0.0, 0.0};
    auto path = [&](double t) { return worldline_position(p, t); };
    const auto v = three_velocity(path, 1.2);
    CHECK(v[0] == doctest::Approx(0.6 * kSpeedOfLight).epsilon(1e-8));
    CHECK(std::abs(v[1]) <= 1e-8);
  }

  SUBCASE("cubic expansion path matches its analytic derivative") {
    const FSParams p{0.05, 0.0, 0.0, 0.0, 0.0, 0.0};
    auto path = [&](double t) {
      return fs_path_expansion(p, rest_frame(), FourVector{}, t, 3);
    };
    const double t = 0.5;
    const auto v = three_velocity(path, t);
    const double dct = 1.0 + p.kappa1 * p.kappa1 * t * t / 2.0;
    const double dx = p.kappa1 * t;
    CHECK(v[0] == doctest::Approx(kSpeedOfLight * dx / dct).epsilon(1e-6));
  }

  SUBCASE("rejects non-future-directed paths") {
    auto path = [](double t) { return FourVector(-t, 0.0, 0.0, 0.0); };
    CHECK_THROWS_AS(three_velocity(path, 0.0), std::domain_error);
  }
}

TEST_CASE("alpha_w") {
  SUBCASE("rest frame, wave along +x") {
    const PlaneWave w(1e9, {1, 0, 0}, 1.0);
    const FSParams p{0.05, 0.01, 0.0, 0.02, 0.0, 0.0};
    const AlphaW aw = alpha_w(w, rest_frame(), p);
    CHECK(aw.alpha[0] == doctest::Approx(1.0));
    CHECK(aw.alpha[1] == doctest::Approx(-1.0));
    CHECK(aw.alpha[2] == doctest::Approx(0.0));
    CHECK(aw.alpha[3] == doctest::Approx(0.0));
    CHECK(aw.w[0] == doctest::Approx(0.05 * 0.05));
    CHECK(aw.w[1] == doctest::Approx(0.01));
    CHECK(aw.w[2] == doctest::Approx(0.05 * 0.02));
    CHECK(aw.w[3] == 0.0);
    CHECK(aw.alpha_dot_w ==
          doctest::Approx(0.0025 - 0.01).epsilon(1e-14));
  }

  SUBCASE("wave orthogonal to the motion plane") {
    const PlaneWave w(1e9, {0, 0, 1}, 1.0);
    const AlphaW aw = alpha_w(w, rest_frame(), FSParams{0.1, 0, 0, 0.2, 0, 0});
    CHECK(aw.alpha[1] == doctest::Approx(0.0));
    CHECK(aw.alpha[2] == doctest::Approx(0.0));
    CHECK(aw.alpha[3] == doctest::Approx(-1.0));
  }

  SUBCASE("w collapses to its first component for planar constant curvature") {
    const PlaneWave w(1e9, {1, 0, 0}, 1.0);
    const FSParams p{0.3, 0.0, 0.0, 0.0, 0.0, 0.0};
    const AlphaW aw = alpha_w(w, rest_frame(), p);
    CHECK(aw.alpha_dot_w == doctest::Approx(aw.alpha[0] * 0.09).epsilon(1e-14));
  }
}

TEST_CASE("fs_curvatures_from_worldline") {
  SUBCASE("hyperbolic worldline") {
    const JoltWorldlineParams p{0.0, 0.05, 0.0, 0.0};
    auto path = [&](double t) { return worldline_position(p, t); };
    const FSCurvatureEstimate est = fs_curvatures_from_worldline(path, 0.3);
    CHECK(std::abs(est.kappa1 - 0.05) <= 1e-5);
    CHECK(std::abs(est.kappa2) <= 1e-5);
    CHECK(std::abs(est.kappa3) <= 1e-5);
  }

  SUBCASE("straight worldline has vanishing curvature and undefined torsion") {
    const JoltWorldlineParams p{0.4, 0.0, 0.0, 0.0};
    auto path = [&](double t) { return worldline_position(p, t); };
    const FSCurvatureEstimate est = fs_curvatures_from_worldline(path, 0.0);
    CHECK(std::abs(est.kappa1) <= 1e-6);
    CHECK_FALSE(est.torsion_defined);
  }

  SUBCASE("constant-jolt worldline has kappa1 = a0 + j0 ctau") {
    const JoltWorldlineParams p{0.1, 0.05, 0.02, 0.0};
    auto path = [&](double t) { return worldline_position(p, t); };
    for (double t : {0.0, 0.5, 1.0}) {
      const FSCurvatureEstimate est = fs_curvatures_from_worldline(path, t);
      CHECK(std::abs(est.kappa1 - (0.05 + 0.02 * t)) <= 1e-5);
    }
  }

  SUBCASE("quartic expansion paths are recovered exactly") {
    const FSParams p{0.21, 0.04, 0.0, 0.13, 0.0, 0.4};
    auto path = [&](double t) {
      return fs_path_expansion(p, rest_frame(), FourVector{}, t, 4);
    };
    const FSCurvatureEstimate est = fs_curvatures_from_worldline(path, 0.0);
    CHECK(est.kappa1 == doctest::Approx(p.kappa1).epsilon(1e-6));
    CHECK(est.kappa2 == doctest::Approx(p.kappa2).epsilon(1e-6));
    CHECK(est.hyper_torsion_defined);
    CHECK(est.kappa3 == doctest::Approx(p.kappa3).epsilon(1e-5));
    CHECK(est.err1 <= 1e-6);
  }
}
