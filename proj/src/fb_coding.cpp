#include "urllc/fb_coding.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace urllc {

namespace {
constexpr double kLog2e = std::numbers::log2e;
}

SnrValue::SnrValue(double linear) : linear_(linear) {
  if (!(linear >= 0.0) || !std::isfinite(linear)) {
    throw std::invalid_argument("SNR must be finite and non-negative, got " + std::to_string(linear));
  }
}

SnrValue SnrValue::from_db(double db) {
  if (!std::isfinite(db)) throw std::invalid_argument("SNR in dB must be finite");
  return SnrValue(db_to_linear(db));
}

double SnrValue::db() const { return linear_to_db(linear_); }

Blocklength::Blocklength(std::int64_t n) : n_(n) {
  if (n < 1) throw std::invalid_argument("blocklength must be >= 1, got " + std::to_string(n));
}

CodingRate::CodingRate(double bits_per_use) : r_(bits_per_use) {
  if (!(bits_per_use >= 0.0) || !std::isfinite(bits_per_use)) {
    throw std::invalid_argument("coding rate must be finite and non-negative");
  }
}

CodingRate capacity(SnrValue gamma) { return CodingRate(std::log2(1.0 + gamma.linear())); }

double dispersion(SnrValue gamma) {
  const double inv = 1.0 / (1.0 + gamma.linear());
  // 1 - (1+g)^-2 written as g(g+2)/(1+g)^2 to keep precision for small g.
  const double g = gamma.linear();
  return g * (g + 2.0) * inv * inv * kLog2e * kLog2e;
}

double log_term(Blocklength n, ApproximationConfig cfg) {
  if (!cfg.include_log_term) return 0.0;
  return std::log2(n.as_double()) / (2.0 * n.as_double());
}

Probability error_probability(Blocklength n, CodingRate rate, SnrValue gamma, ApproximationConfig cfg) {
  const double margin = capacity(gamma).value() - rate.value() + log_term(n, cfg);
  const double v = dispersion(gamma);
  if (v == 0.0) {
    // Zero SNR: the Gaussian collapses to a step at the capacity.
    if (margin > 0.0) return Probability(0.0);
    if (margin < 0.0) return Probability(1.0);
    return Probability(0.5);
  }
  return q_func(std::sqrt(n.as_double() / v) * margin);
}

RateBound max_rate(Blocklength n, Probability epsilon_target, SnrValue gamma, ApproximationConfig cfg) {
  const double backoff = std::sqrt(dispersion(gamma) / n.as_double()) * q_func_inv(epsilon_target);
  const double r = capacity(gamma).value() - backoff + log_term(n, cfg);
  if (r <= 0.0) return RateBound{CodingRate(0.0), true, r};
  return RateBound{CodingRate(r), false, r};
}

FbPoint fb_point(Blocklength n, CodingRate rate, SnrValue gamma, ApproximationConfig cfg) {
  return FbPoint{n, rate, error_probability(n, rate, gamma, cfg)};
}

}  // namespace urllc
