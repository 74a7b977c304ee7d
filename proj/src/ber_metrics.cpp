#include "urllc/ber_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "urllc/secrecy_metrics.hpp"

namespace urllc {

void CodeSpec::validate() const {
  if (n_bits < 1) throw std::invalid_argument("code block size must be >= 1");
  if (t < 0 || t > n_bits) throw std::invalid_argument("error-correction capability must lie in [0, n_bits]");
}

void BerThresholds::validate() const {
  if (!(p_ber_max_b.value() > 0.0 && p_ber_max_b < p_ber_min_e && p_ber_min_e.value() <= 0.5)) {
    throw std::invalid_argument("BER thresholds must satisfy 0 < p_ber_max_b < p_ber_min_e <= 0.5");
  }
}

Probability bsc_crossover(SnrValue gamma) { return q_func(std::sqrt(2.0 * gamma.linear())); }

Probability be_cdf(const CodeSpec& code, Probability p, std::int64_t k) {
  code.validate();
  return binomial_cdf(k, code.n_bits, p);
}

Probability block_error_prob(const CodeSpec& code, Probability p) {
  return Probability(std::clamp(1.0 - be_cdf(code, p, code.t).value(), 0.0, 1.0));
}

Probability post_decoding_ber(const CodeSpec& code, Probability p) {
  code.validate();
  if (code.t == 0) return p;
  const std::int64_t n = code.n_bits;
  double wrong_bits = 0.0;
  for (std::int64_t j = code.t + 1; j <= n; ++j) {
    wrong_bits += static_cast<double>(std::min(n, j + code.t)) * binomial_pmf(j, n, p);
  }
  return Probability(std::clamp(wrong_bits / static_cast<double>(n), 0.0, 1.0));
}

BerSecurityGap ber_security_gap(const CodeSpec& code, const BerThresholds& thresholds) {
  code.validate();
  thresholds.validate();
  auto ber_at = [&](double snr) { return post_decoding_ber(code, bsc_crossover(SnrValue(snr))); };
  const double lo_edge = std::log(db_to_linear(kSnrBracketLowDb));
  const double hi_edge = std::log(db_to_linear(kSnrBracketHighDb));

  BerSecurityGap out;

  // Bob: smallest SNR with BER <= p_ber_max_b. BER falls with SNR.
  if (ber_at(std::exp(hi_edge)) > thresholds.p_ber_max_b) {
    throw UnsatisfiableError(ConstraintSide::kReliability, "Bob's BER stays above p_ber_max_b up to 60 dB");
  }
  {
    double lo = lo_edge;
    double hi = hi_edge;
    while (true) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (ber_at(std::exp(mid)) <= thresholds.p_ber_max_b ? hi : lo) = mid;
    }
    out.snr_b_min = SnrValue(std::exp(hi));
  }

  // Eve: largest SNR with BER >= p_ber_min_e.
  if (post_decoding_ber(code, Probability(0.5)) < thresholds.p_ber_min_e) {
    throw UnsatisfiableError(ConstraintSide::kSecurity, "Eve's BER stays below p_ber_min_e even at zero SNR");
  }
  if (ber_at(std::exp(lo_edge)) < thresholds.p_ber_min_e) {
    out.snr_e_max = SnrValue(std::exp(lo_edge));
    out.snr_e_at_bracket_edge = true;
  } else {
    double lo = lo_edge;
    double hi = hi_edge;
    while (true) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (ber_at(std::exp(mid)) >= thresholds.p_ber_min_e ? lo : hi) = mid;
    }
    out.snr_e_max = SnrValue(std::exp(lo));
  }
  out.gap_db = out.snr_b_min.db() - out.snr_e_max.db();
  return out;
}

}  // namespace urllc
