#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "urllc/ber_metrics.hpp"
#include "urllc/secrecy_metrics.hpp"

using namespace urllc;

TEST_CASE("crossover probability of hard-decision BPSK") {
  CHECK(bsc_crossover(SnrValue(0.0)).value() == 0.5);
  CHECK(bsc_crossover(SnrValue(1.0)).value() == doctest::Approx(0.07864960352514257).epsilon(1e-13));
  CHECK(bsc_crossover(SnrValue(1.0)).value() == doctest::Approx(oracle::q_by_quadrature(std::sqrt(2.0))).epsilon(1e-9));
}

TEST_CASE("code spec validation") {
  CHECK_THROWS_AS((CodeSpec{0, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((CodeSpec{7, 8}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((CodeSpec{7, -1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((BerThresholds{Probability(0.1), Probability(0.1)}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((BerThresholds{Probability(0.1), Probability(0.6)}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((BerThresholds{Probability(0.0), Probability(0.4)}.validate()), std::invalid_argument);
}

TEST_CASE("(7, 1) code at p = 0.5") {
  const CodeSpec code{7, 1};
  CHECK(be_cdf(code, Probability(0.5), 1).value() == doctest::Approx(0.0625).epsilon(1e-14));
  CHECK(block_error_prob(code, Probability(0.5)).value() == doctest::Approx(0.9375).epsilon(1e-14));
  CHECK(block_error_prob(code, Probability(0.5)).value() ==
        doctest::Approx(1.0 - oracle::enumerated_cdf(1, 7, 0.5)).epsilon(1e-14));
}

TEST_CASE("post-decoding BER anchors") {
  CHECK(post_decoding_ber(CodeSpec{7, 1}, Probability(0.1)).value() == doctest::Approx(0.0682408).epsilon(1e-12));
  for (double p = 0.0; p <= 0.5; p += 0.01) {
    for (std::int64_t n : {1, 7, 63, 1023}) CHECK(post_decoding_ber(CodeSpec{n, 0}, Probability(p)).value() == p);
  }
  CHECK(post_decoding_ber(CodeSpec{15, 2}, Probability(0.0)).value() == 0.0);
}

TEST_CASE("post-decoding BER matches pattern enumeration") {
  for (int n = 1; n <= 14; ++n) {
    for (int t = 0; t <= n; ++t) {
      for (double p : {0.01, 0.1, 0.25, 0.5}) {
        const double got = post_decoding_ber(CodeSpec{n, t}, Probability(p)).value();
        CHECK(got == doctest::Approx(oracle::enumerated_post_decoding_ber(n, t, p)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("post-decoding BER is monotone in p and in t") {
  const CodeSpec code{31, 3};
  double prev = -1.0;
  for (double p = 0.0; p <= 0.5; p += 0.005) {
    const double b = post_decoding_ber(code, Probability(p)).value();
    CHECK(b >= prev);
    prev = b;
  }
  // Fewer correctable errors never helps at small p.
  for (double p : {1e-4, 1e-3, 1e-2}) {
    double last = 1.0;
    for (std::int64_t t = 0; t <= 5; ++t) {
      const double b = post_decoding_ber(CodeSpec{31, t}, Probability(p)).value();
      CHECK(b <= last);
      last = b;
    }
  }
}

TEST_CASE("BER security gap") {
  const CodeSpec code{127, 10};
  const BerThresholds thr{};
  const BerSecurityGap g = ber_security_gap(code, thr);
  CHECK_FALSE(g.snr_e_at_bracket_edge);
  CHECK(g.gap_db > 0.0);
  CHECK(g.gap_db == doctest::Approx(g.snr_b_min.db() - g.snr_e_max.db()));
  const double ber_b = post_decoding_ber(code, bsc_crossover(g.snr_b_min)).value();
  const double ber_e = post_decoding_ber(code, bsc_crossover(g.snr_e_max)).value();
  CHECK(ber_b <= 1e-5);
  CHECK(ber_b == doctest::Approx(1e-5).epsilon(1e-8));
  CHECK(ber_e >= 0.49);
  CHECK(ber_e == doctest::Approx(0.49).epsilon(1e-8));
}

TEST_CASE("BER security gap edge cases") {
  // Without coding, BER 0.5 is only reached at zero SNR.
  const BerSecurityGap g = ber_security_gap(CodeSpec{1, 0}, BerThresholds{Probability(1e-5), Probability(0.5)});
  CHECK(g.snr_e_at_bracket_edge);
  CHECK(g.snr_e_max.db() == doctest::Approx(kSnrBracketLowDb));
  // A code that fixes every pattern up to n never reaches a high BER.
  CHECK_THROWS_AS(ber_security_gap(CodeSpec{7, 7}, BerThresholds{}), UnsatisfiableError);
}
