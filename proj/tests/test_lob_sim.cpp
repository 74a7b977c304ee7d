#include <doctest.h>

#include <cmath>
#include <numbers>

#include "urllc/lob_sim.hpp"

using namespace urllc;

namespace {
constexpr double kDeg = std::numbers::pi / 180.0;

LobConfig los_config(int n) {
  LobConfig cfg;
  cfg.n_antennas = n;
  cfg.k_factor_bob = INFINITY;
  cfg.k_factor_eve = INFINITY;
  cfg.trials = 10;
  cfg.seed = RngSeed{77, 1};
  return cfg;
}
}  // namespace

TEST_CASE("beamformer is unit norm and the AN basis is orthonormal and orthogonal to it") {
  for (int n : {2, 3, 4, 8, 16}) {
    for (double theta : {-0.9, 0.0, 0.2, 1.3}) {
      const LobBeam beam = make_beam(theta, n);
      CHECK(beam.w.norm() == doctest::Approx(1.0).epsilon(1e-14));
      REQUIRE(beam.null_basis.rows() == n);
      REQUIRE(beam.null_basis.cols() == n - 1);
      const Eigen::MatrixXcd gram = beam.null_basis.adjoint() * beam.null_basis;
      CHECK((gram - Eigen::MatrixXcd::Identity(n - 1, n - 1)).norm() < 1e-12);
      CHECK((beam.null_basis.adjoint() * beam.w).norm() < 1e-12);
    }
  }
  CHECK_THROWS_AS(an_basis(0.0, 1), std::invalid_argument);
}

TEST_CASE("pure LOS with perfect location gives array gain N") {
  for (int n : {2, 4, 8}) {
    for (double theta : {0.0, 0.3, -0.7}) {
      LobConfig cfg = los_config(n);
      cfg.theta_bob = theta;
      cfg.an_fraction = 0.3;
      const LobResult r = run_lob(cfg);
      for (const auto& rec : r.records) {
        CHECK(rec.theta_hat == theta);
        CHECK(std::abs(rec.beam_gain_bob - n) < 1e-12 * n);
        CHECK(rec.sinr.bob.artificial_noise < 1e-10 * cfg.an_power());
        CHECK(rec.sinr.bob.sinr == doctest::Approx(0.7 * n / cfg.noise_power_bob).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("SINR composition") {
  LobConfig cfg = los_config(4);
  cfg.an_fraction = 0.5;
  const LobBeam beam = make_beam(0.0, 4);
  const ChannelVector h_eve = steering_vector(20 * kDeg, 4);
  const SinrPair s = sinr_pair(steering_vector(0.0, 4), h_eve, beam, cfg);
  const double sig = 0.5 * std::norm(h_eve.dot(beam.w));
  // AN power spreads over the null space; the part of |h|^2 outside the beam lands there.
  const double an = 0.5 / 3.0 * (h_eve.squaredNorm() - std::norm(h_eve.dot(beam.w)));
  CHECK(s.eve.signal == doctest::Approx(sig).epsilon(1e-12));
  CHECK(s.eve.artificial_noise == doctest::Approx(an).epsilon(1e-12));
  CHECK(s.eve.sinr == doctest::Approx(sig / (an + 0.1)).epsilon(1e-12));
}

TEST_CASE("Eve SINR falls as the AN share grows") {
  LobConfig cfg;
  cfg.theta_eve = 20 * kDeg;
  cfg.trials = 5000;
  cfg.seed = RngSeed{3, 3};
  double prev = INFINITY;
  for (double phi : {0.0, 0.2, 0.4, 0.6, 0.8}) {
    cfg.an_fraction = phi;
    const double eve = run_lob(cfg).summary.mean_sinr_eve;
    CHECK(eve < prev);
    prev = eve;
  }
}

TEST_CASE("all power on AN leaves nothing to decode") {
  LobConfig cfg;
  cfg.an_fraction = 1.0;
  cfg.trials = 100;
  const LobResult r = run_lob(cfg);
  CHECK(r.summary.feasibility_prob == 0.0);
  for (const auto& rec : r.records) CHECK(rec.sinr.bob.sinr == 0.0);
}

TEST_CASE("feasibility does not improve with location error") {
  LobConfig cfg;
  cfg.n_antennas = 8;
  cfg.theta_eve = 30 * kDeg;
  cfg.trials = 5000;
  cfg.seed = RngSeed{9, 1};
  double prev = INFINITY;
  for (double err_deg : {0.0, 2.0, 5.0, 10.0, 20.0}) {
    cfg.location_error_std = err_deg * kDeg;
    const double f = run_lob(cfg).summary.feasibility_prob;
    CHECK(f <= prev);
    prev = f;
  }
}

TEST_CASE("co-located Eve gains nothing from AN") {
  // Same LOS channel for both: AN lands in the null space of both links and only the
  // information power shrinks.
  for (double noise_e : {0.1, 1.0}) {
    LobConfig cfg = los_config(4);
    cfg.theta_eve = cfg.theta_bob;
    cfg.noise_power_eve = noise_e;
    cfg.trials = 200;
    const AnOptimum opt = optimize_an_fraction(cfg, {0.0, 0.2, 0.4, 0.6, 0.8, 0.95});
    CHECK(opt.best == 0.0);
    for (std::size_t i = 1; i < opt.objective.size(); ++i) CHECK(opt.objective[i] <= opt.objective[i - 1]);
  }
  LobConfig cfg;
  CHECK_THROWS_AS(optimize_an_fraction(cfg, {0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(optimize_an_fraction(cfg, {}), std::invalid_argument);
}

TEST_CASE("config validation") {
  LobConfig cfg;
  cfg.n_antennas = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = LobConfig{};
  cfg.theta_eve = 2.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = LobConfig{};
  cfg.an_fraction = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = LobConfig{};
  cfg.location_error_std = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("runs are reproducible and thread-count independent") {
  LobConfig cfg;
  cfg.trials = 2000;
  cfg.location_error_std = 0.05;
  cfg.an_fraction = 0.2;
  cfg.threads = 1;
  const LobResult a = run_lob(cfg);
  cfg.threads = 5;
  const LobResult b = run_lob(cfg);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].theta_hat == b.records[i].theta_hat);
    CHECK(a.records[i].sinr.bob.sinr == b.records[i].sinr.bob.sinr);
    CHECK(a.records[i].sinr.eve.sinr == b.records[i].sinr.eve.sinr);
  }
}
