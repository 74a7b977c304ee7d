#include "urllc/cipc_sim.hpp"

#include <cmath>

#include "detail/parallel.hpp"

namespace urllc {

namespace {

// Independent substreams per random component keep draws aligned across configs.
enum Component : std::uint64_t { kDownlink = 0, kReciprocity = 1, kEavesdropper = 2 };

CipcRecord run_trial(const CipcConfig& cfg, std::int64_t trial_id) {
  const RngSeed trial_seed = cfg.seed.substream(static_cast<std::uint64_t>(trial_id));
  CounterRng downlink_rng(trial_seed.substream(kDownlink));
  CounterRng reciprocity_rng(trial_seed.substream(kReciprocity));
  CounterRng eve_rng(trial_seed.substream(kEavesdropper));

  CipcRecord rec;
  rec.trial_id = trial_id;
  const ChannelVector h_d = sample_rayleigh(cfg.n_antennas_tx, downlink_rng);
  const ChannelVector h_u = apply_reciprocity_error(h_d, cfg.reciprocity, reciprocity_rng);
  const ChannelVector g = sample_rayleigh(cfg.n_antennas_tx, eve_rng);

  try {
    const ChannelVector w = cipc_beamformer(h_d);
    rec.p_t = cipc_power(h_d, cfg);
    if (!rec.p_t) return rec;
    const double p_t = *rec.p_t;
    const double known_gain = h_d.squaredNorm();
    // |h_u^T w|^2 / |h_d|^2, which is 1 when reciprocity holds (Cauchy-Schwarz equality).
    const double alignment = h_u == h_d ? 1.0 : std::norm(h_u.cwiseProduct(w).sum()) / known_gain;
    // Only the clamp policy gets here with Q/|h_d|^2 above p_max.
    const bool clamped = cfg.q_target / known_gain > cfg.p_max;
    rec.rx_power_bob = clamped ? p_t * known_gain * alignment : cfg.q_target * alignment;
    rec.gamma_b = SnrValue(rec.rx_power_bob / cfg.noise_power_bob);
    rec.gamma_e = SnrValue(p_t * std::norm(g.cwiseProduct(w).sum()) / cfg.noise_power_eve);
    rec.assessment =
        rate_interval(Blocklength(cfg.blocklength), rec.gamma_b, rec.gamma_e, cfg.constraints, cfg.approximation);
  } catch (const DegenerateChannelError&) {
    rec.degenerate = true;
    rec.p_t.reset();
  }
  return rec;
}

}  // namespace

void CipcConfig::validate() const {
  if (!(q_target > 0.0) || !std::isfinite(q_target)) throw std::invalid_argument("Q must be positive and finite");
  if (!(p_max > 0.0)) throw std::invalid_argument("p_max must be positive");
  if (n_antennas_tx < 1) throw std::invalid_argument("transmit antenna count must be >= 1");
  if (!(noise_power_bob > 0.0) || !(noise_power_eve > 0.0)) throw std::invalid_argument("noise powers must be positive");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!(reciprocity.sigma_delta >= 0.0)) throw std::invalid_argument("sigma_delta must be >= 0");
  static_cast<void>(Blocklength{blocklength});
  constraints.validate();
}

ChannelVector cipc_beamformer(const ChannelVector& h_d) {
  const double norm = h_d.norm();
  if (!(norm > 0.0)) throw DegenerateChannelError("cipc_beamformer: zero channel");
  return h_d.conjugate() / norm;
}

std::optional<double> cipc_power(const ChannelVector& h_known, const CipcConfig& cfg) {
  const double gain = h_known.squaredNorm();
  if (!(gain > 0.0)) throw DegenerateChannelError("cipc_power: zero channel");
  const double p_t = cfg.q_target / gain;
  if (p_t > cfg.p_max) {
    if (cfg.truncation == TruncationPolicy::kSuspend) return std::nullopt;
    return cfg.p_max;
  }
  return p_t;
}

CipcSummary summarize(const std::vector<CipcRecord>& records) {
  CipcSummary s;
  s.trials = static_cast<std::int64_t>(records.size());
  std::int64_t sent = 0;
  std::int64_t feasible = 0;
  double sum_delta = 0.0;
  double sum_gamma_e = 0.0;
  double sum_rx = 0.0;
  for (const auto& r : records) {
    if (r.degenerate) {
      ++s.degenerate;
      continue;
    }
    if (!r.p_t) {
      ++s.suspended;
      continue;
    }
    ++sent;
    feasible += r.assessment.feasible ? 1 : 0;
    sum_delta += r.assessment.delta_r;
    sum_gamma_e += r.gamma_e.linear();
    sum_rx += r.rx_power_bob;
  }
  if (s.trials > 0) s.suspension_prob = static_cast<double>(s.suspended) / static_cast<double>(s.trials);
  if (sent > 0) {
    const double m = static_cast<double>(sent);
    s.feasibility_prob = static_cast<double>(feasible) / m;
    s.mean_delta_r = sum_delta / m;
    s.mean_gamma_e = sum_gamma_e / m;
    s.mean_rx_power_bob = sum_rx / m;
    double ss = 0.0;
    for (const auto& r : records) {
      if (r.transmitted()) ss += (r.rx_power_bob - s.mean_rx_power_bob) * (r.rx_power_bob - s.mean_rx_power_bob);
    }
    s.var_rx_power_bob = ss / m;
  }
  return s;
}

CipcResult run_cipc(const CipcConfig& cfg) {
  cfg.validate();
  CipcResult result;
  result.records.resize(static_cast<std::size_t>(cfg.trials));
  detail::parallel_for(result.records.size(), cfg.threads, [&](std::size_t i) {
    result.records[i] = run_trial(cfg, static_cast<std::int64_t>(i));
  });
  result.summary = summarize(result.records);
  return result;
}

double default_cipc_objective(const CipcSummary& s) { return s.feasibility_prob * (1.0 - s.suspension_prob); }

QOptimum optimize_q(const CipcConfig& cfg, const std::vector<double>& q_grid, const CipcObjective& objective) {
  if (q_grid.empty()) throw std::invalid_argument("optimize_q: empty Q grid");
  QOptimum out;
  out.grid = q_grid;
  out.objective.reserve(q_grid.size());
  bool have_best = false;
  double best_value = 0.0;
  for (const double q : q_grid) {
    CipcConfig c = cfg;
    c.q_target = q;
    out.summaries.push_back(run_cipc(c).summary);
    const double value = objective(out.summaries.back());
    out.objective.push_back(value);
    if (!have_best || value > best_value || (value == best_value && q < out.best)) {
      out.best = q;
      best_value = value;
      have_best = true;
    }
  }
  return out;
}

}  // namespace urllc
