#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

namespace urllc {

/// A probability in [0, 1]. Construction rejects NaN and out-of-range values.
class Probability {
 public:
  constexpr Probability() = default;
  explicit Probability(double value);

  constexpr double value() const { return value_; }
  constexpr double complement() const { return 1.0 - value_; }

  friend constexpr bool operator==(Probability, Probability) = default;
  friend constexpr auto operator<=>(Probability a, Probability b) { return a.value_ <=> b.value_; }

 private:
  double value_ = 0.0;
};

/// Identifies one reproducible random substream.
struct RngSeed {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  /// Substream `index` of this stream, e.g. one per Monte Carlo trial.
  constexpr RngSeed substream(std::uint64_t index) const {
    return RngSeed{master_seed, stream_id * 0x9E3779B97F4A7C15ULL + index + 1};
  }
};

/// Counter-based generator: output i is a keyed hash of (master_seed, stream_id, i).
/// Satisfies UniformRandomBitGenerator, so it plugs into <random> distributions.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(RngSeed seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double standard_normal();

  std::uint64_t position() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Standard normal upper tail, Q(x) = P(Z > x).
Probability q_func(double x);

/// Inverse of q_func on (0, 1). Throws std::domain_error at 0 and 1.
double q_func_inv(Probability p);

/// P(X = k) for X ~ Binomial(n, p), evaluated in log space.
double binomial_pmf(std::int64_t k, std::int64_t n, Probability p);

/// P(X <= k) for X ~ Binomial(n, p). Throws std::domain_error unless 0 <= k <= n.
Probability binomial_cdf(std::int64_t k, std::int64_t n, Probability p);

std::vector<double> sample_standard_normal(RngSeed seed, std::size_t count);
std::vector<double> sample_uniform(RngSeed seed, std::size_t count);

double db_to_linear(double db);
double linear_to_db(double linear);

}  // namespace urllc
