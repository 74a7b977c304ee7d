#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "urllc/secrecy_metrics.hpp"

using namespace urllc;

namespace {
const ConstraintPair kDefault{};
}

TEST_CASE("constraint validation") {
  CHECK_NOTHROW(kDefault.validate());
  CHECK(kDefault.warnings().empty());
  CHECK_THROWS_AS((ConstraintPair{Probability(0.0), Probability(0.5)}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ConstraintPair{Probability(1e-6), Probability(1.0)}.validate()), std::invalid_argument);
  CHECK((ConstraintPair{Probability(0.6), Probability(0.5)}.warnings().size()) == 1);
  CHECK((ConstraintPair{Probability(0.7), Probability(0.6)}.warnings().size()) == 2);
}

TEST_CASE("r_sup anchor") {
  const RateBound b = r_sup(Blocklength(500), Probability(1e-6), SnrValue::from_db(10.0));
  CHECK(b.rate.value() == doctest::Approx(3.154014020493869).epsilon(1e-12));
  CHECK(b.rate.value() == doctest::Approx(oracle::rate_bound(500, 1e-6, 10.0)).epsilon(1e-9));
}

TEST_CASE("r_inf equals Eve's capacity at beta_e = 0.5") {
  for (std::int64_t n = 1; n <= 10000; n = n * 3 + 1) {
    for (double db : {-20.0, 0.0, 7.0}) {
      const SnrValue g = SnrValue::from_db(db);
      CHECK(r_inf(Blocklength(n), Probability(0.5), g).rate.value() == capacity(g).value());
    }
  }
}

TEST_CASE("r_inf sits below C_e for beta_e < 0.5 and above it for beta_e > 0.5") {
  const SnrValue g = SnrValue::from_db(3.0);
  const double c = capacity(g).value();
  for (std::int64_t n : {50, 500, 5000}) {
    CHECK(r_inf(Blocklength(n), Probability(0.1), g).rate.value() < c);
    CHECK(r_inf(Blocklength(n), Probability(0.9), g).rate.value() > c);
  }
}

TEST_CASE("rate interval at equal SNRs is infeasible") {
  const SnrValue g = SnrValue::from_db(5.0);
  const SecrecyAssessment a = rate_interval(Blocklength(300), g, g, kDefault);
  CHECK_FALSE(a.feasible);
  CHECK(a.delta_r < 0.0);
  CHECK(a.delta_r == doctest::Approx(a.r_sup.value() - a.r_inf.value()));
}

TEST_CASE("rate interval needs a positive reliable rate") {
  // Both rates clamp to zero: delta_r = 0 but nothing can be sent reliably.
  const SecrecyAssessment a = rate_interval(Blocklength(2), SnrValue::from_db(-30.0), SnrValue(0.0), kDefault);
  CHECK(a.r_sup.value() == 0.0);
  CHECK(a.delta_r == 0.0);
  CHECK_FALSE(a.feasible);
}

TEST_CASE("rate interval converges to the secrecy capacity") {
  const SnrValue gb = SnrValue::from_db(10.0);
  const SnrValue ge = SnrValue::from_db(0.0);
  const double cs = asymptotic_secrecy_capacity(gb, ge);
  CHECK(cs == doctest::Approx(std::log2(11.0) - 1.0));
  double prev = INFINITY;
  for (std::int64_t n = 100; n <= 1'000'000; n *= 4) {
    const double dev = std::abs(rate_interval(Blocklength(n), gb, ge, kDefault).delta_r - cs);
    CHECK(dev < prev);
    if (prev < INFINITY) CHECK(prev / dev == doctest::Approx(2.0).epsilon(1e-9));
    prev = dev;
  }
  CHECK(asymptotic_secrecy_capacity(ge, gb) == 0.0);
}

TEST_CASE("security gap anchor") {
  const SecurityGap g = security_gap(Blocklength(500), CodingRate(1.0), kDefault);
  CHECK(g.snr_b_min.linear() == doctest::Approx(1.427473464903313).epsilon(1e-10));
  CHECK(g.snr_e_max.linear() == 1.0);
  CHECK(g.gap_db == doctest::Approx(1.545680439559405).epsilon(1e-9));
  CHECK(g.gap_linear == doctest::Approx(std::pow(10.0, g.gap_db / 10.0)).epsilon(1e-12));
}

TEST_CASE("security gap thresholds hit their targets") {
  for (std::int64_t n : {50, 200, 1000, 5000}) {
    for (double r : {0.25, 1.0, 3.0}) {
      for (double bb : {1e-3, 1e-6, 1e-9}) {
        for (double be : {0.2, 0.5, 0.9}) {
          const ConstraintPair c{Probability(bb), Probability(be)};
          const SecurityGap g = security_gap(Blocklength(n), CodingRate(r), c);
          const double eb = error_probability(Blocklength(n), CodingRate(r), g.snr_b_min).value();
          const double ee = error_probability(Blocklength(n), CodingRate(r), g.snr_e_max).value();
          CHECK(std::abs(eb - bb) / bb < 1e-9);
          CHECK(std::abs(ee - be) / be < 1e-9);
          CHECK(eb <= bb * (1.0 + 1e-12));
          CHECK(ee >= be * (1.0 - 1e-12));
        }
      }
    }
  }
}

TEST_CASE("security gap narrows as the blocklength grows") {
  for (double r : {0.5, 1.0, 2.0}) {
    double prev = INFINITY;
    for (std::int64_t n = 10; n <= 100000; n = n * 2) {
      const double gap = security_gap(Blocklength(n), CodingRate(r), kDefault).gap_db;
      CHECK(gap > 0.0);
      CHECK(gap <= prev);
      prev = gap;
    }
  }
}

TEST_CASE("thresholds outside the bracket are reported") {
  CHECK_THROWS_AS(reliability_threshold(Blocklength(10), CodingRate(30.0), Probability(1e-6)), UnsatisfiableError);
  try {
    reliability_threshold(Blocklength(10), CodingRate(30.0), Probability(1e-6));
  } catch (const UnsatisfiableError& e) {
    CHECK(e.side() == ConstraintSide::kReliability);
  }
  try {
    security_threshold(Blocklength(10), CodingRate(1e-9), Probability(0.9));
    FAIL("expected UnsatisfiableError");
  } catch (const UnsatisfiableError& e) {
    CHECK(e.side() == ConstraintSide::kSecurity);
  }
  CHECK_THROWS_AS(security_gap(Blocklength(10), CodingRate(0.0), kDefault), std::invalid_argument);
}

TEST_CASE("min_blocklength anchor and linear scan") {
  const SnrValue gb = SnrValue::from_db(10.0);
  const SnrValue ge = SnrValue::from_db(0.0);
  const auto n = min_blocklength(gb, ge, kDefault, {}, 10000);
  REQUIRE(n.has_value());
  CHECK(*n == 8);
  std::int64_t scan = 0;
  for (std::int64_t k = 1; k <= 10000 && scan == 0; ++k) {
    if (rate_interval(Blocklength(k), gb, ge, kDefault).feasible) scan = k;
  }
  CHECK(scan == *n);
  CHECK_FALSE(min_blocklength(ge, gb, kDefault, {}, 10000).has_value());
  CHECK_FALSE(min_blocklength(gb, ge, kDefault, {}, 7).has_value());
  CHECK(min_blocklength(gb, ge, kDefault, {}, 8) == 8);
  CHECK_THROWS_AS(min_blocklength(gb, ge, kDefault, {}, 0), std::invalid_argument);
}

TEST_CASE("min_blocklength agrees with a scan over an SNR grid") {
  for (double db_b : {2.0, 6.0, 15.0}) {
    for (double db_e : {-5.0, 0.0, 1.5}) {
      const SnrValue gb = SnrValue::from_db(db_b);
      const SnrValue ge = SnrValue::from_db(db_e);
      const auto n = min_blocklength(gb, ge, kDefault, {}, 3000);
      std::optional<std::int64_t> scan;
      for (std::int64_t k = 1; k <= 3000; ++k) {
        if (rate_interval(Blocklength(k), gb, ge, kDefault).feasible) {
          scan = k;
          break;
        }
      }
      CHECK(n == scan);
    }
  }
}
