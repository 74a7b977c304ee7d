#pragma once

// Finite-blocklength AWGN coding quantities under the normal approximation
//   eps = Q( sqrt(n / V) * (C - R + delta) ),  delta = log2(n) / (2n) or 0.

#include <cstdint>
#include <string_view>

#include "urllc/numerics.hpp"

namespace urllc {

/// Linear-scale SNR. Zero is allowed (a receiver that gets no signal power).
class SnrValue {
 public:
  constexpr SnrValue() = default;
  explicit SnrValue(double linear);
  static SnrValue from_db(double db);

  constexpr double linear() const { return linear_; }
  double db() const;

  friend constexpr auto operator<=>(SnrValue, SnrValue) = default;

 private:
  double linear_ = 0.0;
};

class Blocklength {
 public:
  explicit Blocklength(std::int64_t n);
  constexpr std::int64_t value() const { return n_; }
  constexpr double as_double() const { return static_cast<double>(n_); }

  friend constexpr auto operator<=>(Blocklength, Blocklength) = default;

 private:
  std::int64_t n_ = 1;
};

/// Coding rate in bits per channel use.
class CodingRate {
 public:
  constexpr CodingRate() = default;
  explicit CodingRate(double bits_per_use);
  constexpr double value() const { return r_; }

  friend constexpr auto operator<=>(CodingRate, CodingRate) = default;

 private:
  double r_ = 0.0;
};

struct ApproximationConfig {
  bool include_log_term = false;
};

inline constexpr std::string_view kDispersionModel = "complex-awgn";

struct FbPoint {
  Blocklength n;
  CodingRate rate;
  Probability epsilon;
};

/// Result of inverting the error-probability expression for a rate.
struct RateBound {
  CodingRate rate;
  /// True when the formula went negative and the rate was clamped to zero.
  bool clamped = false;
  /// The formula value before clamping.
  double unclamped = 0.0;
};

CodingRate capacity(SnrValue gamma);

/// Channel dispersion in bits^2 per channel use.
double dispersion(SnrValue gamma);

/// The (log2 n)/(2n) correction, or 0 when disabled.
double log_term(Blocklength n, ApproximationConfig cfg);

Probability error_probability(Blocklength n, CodingRate rate, SnrValue gamma, ApproximationConfig cfg = {});

/// Rate at which error_probability equals `epsilon_target`. Requires 0 < epsilon_target < 1.
RateBound max_rate(Blocklength n, Probability epsilon_target, SnrValue gamma, ApproximationConfig cfg = {});

FbPoint fb_point(Blocklength n, CodingRate rate, SnrValue gamma, ApproximationConfig cfg = {});

}  // namespace urllc
