#include "urllc/lob_sim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "detail/parallel.hpp"

namespace urllc {

namespace {

enum Component : std::uint64_t { kLocation = 0, kBobChannel = 1, kEveChannel = 2 };

ReceiverPower receive(const ChannelVector& h, const LobBeam& beam, const LobConfig& cfg, double noise) {
  ReceiverPower r;
  r.signal = cfg.info_power() * std::norm(h.dot(beam.w));
  if (cfg.an_fraction > 0.0) {
    const double per_direction = cfg.an_power() / static_cast<double>(cfg.n_antennas - 1);
    r.artificial_noise = per_direction * (beam.null_basis.adjoint() * h).squaredNorm();
  }
  r.sinr = r.signal / (r.artificial_noise + noise);
  return r;
}

LobRecord run_trial(const LobConfig& cfg, std::int64_t trial_id) {
  const RngSeed trial_seed = cfg.seed.substream(static_cast<std::uint64_t>(trial_id));
  CounterRng location_rng(trial_seed.substream(kLocation));
  CounterRng bob_rng(trial_seed.substream(kBobChannel));
  CounterRng eve_rng(trial_seed.substream(kEveChannel));

  LobRecord rec;
  rec.trial_id = trial_id;
  rec.theta_hat = cfg.theta_bob + cfg.location_error_std * location_rng.standard_normal();
  const ChannelVector h_bob = sample_rician({cfg.k_factor_bob, cfg.theta_bob, cfg.n_antennas}, bob_rng);
  const ChannelVector h_eve = sample_rician({cfg.k_factor_eve, cfg.theta_eve, cfg.n_antennas}, eve_rng);

  const LobBeam beam = make_beam(rec.theta_hat, cfg.n_antennas);
  rec.info_power = cfg.info_power();
  rec.an_power = cfg.an_power();
  rec.beam_gain_bob = std::norm(h_bob.dot(beam.w));
  rec.sinr = sinr_pair(h_bob, h_eve, beam, cfg);
  rec.assessment = rate_interval(Blocklength(cfg.blocklength), SnrValue(rec.sinr.bob.sinr), SnrValue(rec.sinr.eve.sinr),
                                 cfg.constraints, cfg.approximation);
  return rec;
}

}  // namespace

void LobConfig::validate() const {
  if (n_antennas < 2) throw std::invalid_argument("location-based beamforming needs at least 2 antennas");
  for (double theta : {theta_bob, theta_eve}) {
    if (!(std::abs(theta) < std::numbers::pi / 2)) throw std::invalid_argument("angles must lie in (-pi/2, pi/2)");
  }
  if (!(location_error_std >= 0.0) || !std::isfinite(location_error_std)) {
    throw std::invalid_argument("location error std must be finite and >= 0");
  }
  if (!(k_factor_bob >= 0.0) || !(k_factor_eve >= 0.0)) throw std::invalid_argument("K-factors must be >= 0");
  if (!(total_power > 0.0) || !std::isfinite(total_power)) throw std::invalid_argument("total power must be positive");
  if (!(an_fraction >= 0.0 && an_fraction <= 1.0)) throw std::invalid_argument("AN fraction must lie in [0, 1]");
  if (!(noise_power_bob > 0.0) || !(noise_power_eve > 0.0)) throw std::invalid_argument("noise powers must be positive");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  static_cast<void>(Blocklength{blocklength});
  constraints.validate();
}

ChannelVector lob_beamformer(double theta_hat, int n_antennas) {
  if (!std::isfinite(theta_hat)) throw std::invalid_argument("lob_beamformer: non-finite angle");
  return ula_response(theta_hat, n_antennas) / std::sqrt(static_cast<double>(n_antennas));
}

Eigen::MatrixXcd an_basis(double theta_hat, int n_antennas) {
  if (n_antennas < 2) throw std::invalid_argument("an_basis: a single antenna has no null space");
  const ChannelVector a = ula_response(theta_hat, n_antennas);
  // The first Householder column spans a; the remaining ones complete an orthonormal basis.
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr{Eigen::MatrixXcd(a)};
  const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n_antennas, n_antennas);
  return q.rightCols(n_antennas - 1);
}

LobBeam make_beam(double theta_hat, int n_antennas) {
  LobBeam beam;
  beam.theta_hat = theta_hat;
  beam.w = lob_beamformer(theta_hat, n_antennas);
  if (n_antennas >= 2) beam.null_basis = an_basis(theta_hat, n_antennas);
  return beam;
}

SinrPair sinr_pair(const ChannelVector& h_bob, const ChannelVector& h_eve, const LobBeam& beam, const LobConfig& cfg) {
  return SinrPair{receive(h_bob, beam, cfg, cfg.noise_power_bob), receive(h_eve, beam, cfg, cfg.noise_power_eve)};
}

LobSummary summarize(const std::vector<LobRecord>& records) {
  LobSummary s;
  s.trials = static_cast<std::int64_t>(records.size());
  if (records.empty()) return s;
  std::int64_t feasible = 0;
  for (const auto& r : records) {
    s.mean_sinr_bob += r.sinr.bob.sinr;
    s.mean_sinr_eve += r.sinr.eve.sinr;
    s.mean_delta_r += r.assessment.delta_r;
    feasible += r.assessment.feasible ? 1 : 0;
  }
  const double m = static_cast<double>(records.size());
  s.mean_sinr_bob /= m;
  s.mean_sinr_eve /= m;
  s.mean_delta_r /= m;
  s.feasibility_prob = static_cast<double>(feasible) / m;
  return s;
}

LobResult run_lob(const LobConfig& cfg) {
  cfg.validate();
  LobResult result;
  result.records.resize(static_cast<std::size_t>(cfg.trials));
  detail::parallel_for(result.records.size(), cfg.threads, [&](std::size_t i) {
    result.records[i] = run_trial(cfg, static_cast<std::int64_t>(i));
  });
  result.summary = summarize(result.records);
  return result;
}

AnOptimum optimize_an_fraction(const LobConfig& cfg, const std::vector<double>& phi_grid,
                               const LobObjective& objective) {
  if (phi_grid.empty()) throw std::invalid_argument("optimize_an_fraction: empty grid");
  for (double phi : phi_grid) {
    if (!(phi >= 0.0 && phi < 1.0)) throw std::invalid_argument("optimize_an_fraction: grid must lie in [0, 1)");
  }
  AnOptimum out;
  out.grid = phi_grid;
  bool have_best = false;
  double best_value = 0.0;
  for (const double phi : phi_grid) {
    LobConfig c = cfg;
    c.an_fraction = phi;
    out.summaries.push_back(run_lob(c).summary);
    const double value = objective(out.summaries.back());
    out.objective.push_back(value);
    if (!have_best || value > best_value || (value == best_value && phi < out.best)) {
      out.best = phi;
      best_value = value;
      have_best = true;
    }
  }
  return out;
}

}  // namespace urllc
