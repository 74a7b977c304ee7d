#include "urllc/secrecy_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace urllc {

namespace {

enum class Direction { kSmallestSatisfying, kLargestSatisfying };

// Bisection in log-SNR. `satisfied` must be monotone over the bracket: false then true
// for kSmallestSatisfying, true then false for kLargestSatisfying. Runs until the bracket
// cannot shrink further in double precision.
double bisect_log_snr(const std::function<bool(double)>& satisfied, Direction direction) {
  double lo = std::log(db_to_linear(kSnrBracketLowDb));
  double hi = std::log(db_to_linear(kSnrBracketHighDb));
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const bool ok = satisfied(std::exp(mid));
    if ((direction == Direction::kSmallestSatisfying) == ok) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return std::exp(direction == Direction::kSmallestSatisfying ? hi : lo);
}

std::optional<double> exact_half_threshold(Blocklength n, CodingRate rate, Probability target,
                                           ApproximationConfig cfg) {
  // eps = 0.5 exactly where the Q argument vanishes: C = R - delta.
  if (target.value() != 0.5) return std::nullopt;
  const double r = rate.value() - log_term(n, cfg);
  if (r <= 0.0) return std::nullopt;
  return std::exp2(r) - 1.0;
}

bool in_bracket(double snr) {
  return snr >= db_to_linear(kSnrBracketLowDb) && snr <= db_to_linear(kSnrBracketHighDb);
}

}  // namespace

void ConstraintPair::validate() const {
  for (const auto& [name, beta] : {std::pair{"beta_b", beta_b}, std::pair{"beta_e", beta_e}}) {
    if (!(beta.value() > 0.0 && beta.value() < 1.0)) {
      throw std::invalid_argument(std::string(name) + " must lie strictly inside (0, 1)");
    }
  }
}

std::vector<std::string> ConstraintPair::warnings() const {
  std::vector<std::string> out;
  if (beta_b >= beta_e) out.emplace_back("beta_b >= beta_e: reliability target is not tighter than the security target");
  if (beta_e.value() > 0.5) out.emplace_back("beta_e > 0.5: Eve is required to do worse than a coin flip");
  return out;
}

const char* to_string(ConstraintSide side) {
  return side == ConstraintSide::kReliability ? "reliability (Bob)" : "security (Eve)";
}

RateBound r_sup(Blocklength n, Probability beta_b, SnrValue gamma_b, ApproximationConfig cfg) {
  return max_rate(n, beta_b, gamma_b, cfg);
}

RateBound r_inf(Blocklength n, Probability beta_e, SnrValue gamma_e, ApproximationConfig cfg) {
  // Eve's error probability rises with the rate, so eps_E >= beta_e holds exactly at and
  // above the rate where it equals beta_e.
  return max_rate(n, beta_e, gamma_e, cfg);
}

SecrecyAssessment rate_interval(Blocklength n, SnrValue gamma_b, SnrValue gamma_e, const ConstraintPair& constraints,
                                ApproximationConfig cfg) {
  constraints.validate();
  const RateBound sup = r_sup(n, constraints.beta_b, gamma_b, cfg);
  const RateBound inf = r_inf(n, constraints.beta_e, gamma_e, cfg);
  SecrecyAssessment a;
  a.r_sup = sup.rate;
  a.r_inf = inf.rate;
  a.delta_r = sup.rate.value() - inf.rate.value();
  a.feasible = a.delta_r >= 0.0 && !sup.clamped;
  return a;
}

double asymptotic_secrecy_capacity(SnrValue gamma_b, SnrValue gamma_e) {
  return std::max(0.0, capacity(gamma_b).value() - capacity(gamma_e).value());
}

SnrValue reliability_threshold(Blocklength n, CodingRate rate, Probability target, ApproximationConfig cfg) {
  auto ok = [&](double snr) { return error_probability(n, rate, SnrValue(snr), cfg) <= target; };
  if (auto exact = exact_half_threshold(n, rate, target, cfg); exact && in_bracket(*exact)) return SnrValue(*exact);
  if (!ok(db_to_linear(kSnrBracketHighDb)) || ok(db_to_linear(kSnrBracketLowDb))) {
    throw UnsatisfiableError(ConstraintSide::kReliability,
                             "no SNR in [-60, 60] dB puts Bob's error probability at the reliability target");
  }
  return SnrValue(bisect_log_snr(ok, Direction::kSmallestSatisfying));
}

SnrValue security_threshold(Blocklength n, CodingRate rate, Probability target, ApproximationConfig cfg) {
  auto ok = [&](double snr) { return error_probability(n, rate, SnrValue(snr), cfg) >= target; };
  if (auto exact = exact_half_threshold(n, rate, target, cfg); exact && in_bracket(*exact)) return SnrValue(*exact);
  if (!ok(db_to_linear(kSnrBracketLowDb)) || ok(db_to_linear(kSnrBracketHighDb))) {
    throw UnsatisfiableError(ConstraintSide::kSecurity,
                             "no SNR in [-60, 60] dB puts Eve's error probability at the security target");
  }
  return SnrValue(bisect_log_snr(ok, Direction::kLargestSatisfying));
}

SecurityGap security_gap(Blocklength n, CodingRate rate, const ConstraintPair& constraints, ApproximationConfig cfg) {
  constraints.validate();
  if (!(rate.value() > 0.0)) throw std::invalid_argument("security_gap: rate must be positive");
  SecurityGap g;
  g.snr_b_min = reliability_threshold(n, rate, constraints.beta_b, cfg);
  g.snr_e_max = security_threshold(n, rate, constraints.beta_e, cfg);
  g.gap_linear = g.snr_b_min.linear() / g.snr_e_max.linear();
  g.gap_db = linear_to_db(g.gap_linear);
  return g;
}

std::optional<std::int64_t> min_blocklength(SnrValue gamma_b, SnrValue gamma_e, const ConstraintPair& constraints,
                                            ApproximationConfig cfg, std::int64_t n_max) {
  if (n_max < 1) throw std::invalid_argument("min_blocklength: n_max must be >= 1");
  constraints.validate();
  auto feasible = [&](std::int64_t n) {
    return rate_interval(Blocklength(n), gamma_b, gamma_e, constraints, cfg).feasible;
  };
  if (feasible(1)) return 1;

  // Exponential bracket: `bad` is infeasible, `good` is the first probe found feasible.
  std::int64_t bad = 1;
  std::int64_t good = 0;
  for (std::int64_t probe = 2;; probe *= 2) {
    const std::int64_t n = std::min(probe, n_max);
    if (feasible(n)) {
      good = n;
      break;
    }
    bad = n;
    if (n == n_max) return std::nullopt;
  }
  while (good - bad > 1) {
    const std::int64_t mid = bad + (good - bad) / 2;
    if (feasible(mid)) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  return good;
}

}  // namespace urllc
