#pragma once

// Bit-error based secrecy metrics for a hard-decision code known only through its
// error-correction capability t. SNR maps to bit flips via BPSK over AWGN,
// p = Q(sqrt(2 * snr)); decoding follows the bounded-distance model.

#include <cstdint>

#include "urllc/fb_coding.hpp"
#include "urllc/numerics.hpp"

namespace urllc {

struct CodeSpec {
  std::int64_t n_bits = 1;
  std::int64_t t = 0;

  void validate() const;
};

struct BerThresholds {
  Probability p_ber_max_b{1e-5};
  Probability p_ber_min_e{0.49};

  void validate() const;
};

Probability bsc_crossover(SnrValue gamma);

/// P(at most k bit errors in a block).
Probability be_cdf(const CodeSpec& code, Probability p, std::int64_t k);

/// P(more than t bit errors), i.e. decoder failure.
Probability block_error_prob(const CodeSpec& code, Probability p);

/// Post-decoding bit error rate. A block with j > t errors leaves min(n, j + t)
/// wrong bits; j <= t errors are corrected.
Probability post_decoding_ber(const CodeSpec& code, Probability p);

struct BerSecurityGap {
  SnrValue snr_b_min;
  SnrValue snr_e_max;
  double gap_db = 0.0;
  /// Eve's threshold sits at the bottom of the search bracket (it only reaches the
  /// target BER in the zero-SNR limit).
  bool snr_e_at_bracket_edge = false;
};

BerSecurityGap ber_security_gap(const CodeSpec& code, const BerThresholds& thresholds);

}  // namespace urllc
