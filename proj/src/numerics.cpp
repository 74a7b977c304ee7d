#include "urllc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace urllc {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double log_choose(std::int64_t n, std::int64_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

// Q^{-1} for p <= 0.5, i.e. a nonnegative result.
double upper_tail_inverse(double p) {
  if (p == 0.5) return 0.0;
  // Q(38.5) underflows below the smallest subnormal, so every representable p lies inside.
  double lo = 0.0;
  double hi = 38.5;
  // Initial guess from the leading term of the tail asymptotic.
  double x = std::sqrt(-2.0 * std::log(p));
  x = std::clamp(x - (std::log(x * std::sqrt(2.0 * std::numbers::pi))) / x, lo, hi);

  const double log_p = std::log(p);
  for (int iter = 0; iter < 200; ++iter) {
    const double q = q_func(x).value();
    if (q > p) {
      lo = x;
    } else if (q < p) {
      hi = x;
    } else {
      return x;
    }
    // Newton on log Q(x) - log p, which stays well scaled deep in the tail.
    const double f = std::log(q) - log_p;
    const double df = -normal_pdf(x) / q;
    double next = x - f / df;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-16 * std::max(1.0, std::abs(x))) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

}  // namespace

Probability::Probability(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::domain_error("probability out of [0, 1]: " + std::to_string(value));
  }
}

CounterRng::CounterRng(RngSeed seed) : key_(mix64(seed.master_seed ^ mix64(seed.stream_id + kGolden))) {}

CounterRng::result_type CounterRng::operator()() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double CounterRng::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double CounterRng::standard_normal() { return normal_(*this); }

Probability q_func(double x) {
  if (!std::isfinite(x)) throw std::domain_error("q_func: non-finite argument");
  return Probability(0.5 * std::erfc(x / std::numbers::sqrt2));
}

double q_func_inv(Probability p) {
  const double v = p.value();
  if (v <= 0.0 || v >= 1.0) throw std::domain_error("q_func_inv: argument must lie strictly inside (0, 1)");
  if (v <= 0.5) return upper_tail_inverse(v);
  // 1 - v is exact for v in [0.5, 1].
  return -upper_tail_inverse(1.0 - v);
}

double binomial_pmf(std::int64_t k, std::int64_t n, Probability p) {
  if (n < 0 || k < 0 || k > n) return 0.0;
  const double pv = p.value();
  if (pv == 0.0) return k == 0 ? 1.0 : 0.0;
  if (pv == 1.0) return k == n ? 1.0 : 0.0;
  const double kd = static_cast<double>(k);
  const double nd = static_cast<double>(n);
  return std::exp(log_choose(n, k) + kd * std::log(pv) + (nd - kd) * std::log1p(-pv));
}

Probability binomial_cdf(std::int64_t k, std::int64_t n, Probability p) {
  if (n < 1) throw std::domain_error("binomial_cdf: n must be >= 1");
  if (k < 0 || k > n) throw std::domain_error("binomial_cdf: k outside [0, n]");
  if (k == n) return Probability(1.0);

  // Sum whichever tail is on the far side of the mean, where terms are smallest.
  const double mean = static_cast<double>(n) * p.value();
  double total = 0.0;
  if (static_cast<double>(k) <= mean) {
    for (std::int64_t j = k; j >= 0; --j) {
      const double term = binomial_pmf(j, n, p);
      total += term;
      if (term < total * 1e-18 && static_cast<double>(j) < mean) break;
    }
    return Probability(std::clamp(total, 0.0, 1.0));
  }
  for (std::int64_t j = k + 1; j <= n; ++j) {
    const double term = binomial_pmf(j, n, p);
    total += term;
    if (term < total * 1e-18 && static_cast<double>(j) > mean) break;
  }
  return Probability(std::clamp(1.0 - total, 0.0, 1.0));
}

std::vector<double> sample_standard_normal(RngSeed seed, std::size_t count) {
  CounterRng rng(seed);
  std::vector<double> out(count);
  for (auto& v : out) v = rng.standard_normal();
  return out;
}

std::vector<double> sample_uniform(RngSeed seed, std::size_t count) {
  CounterRng rng(seed);
  std::vector<double> out(count);
  for (auto& v : out) v = rng.uniform();
  return out;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace urllc
