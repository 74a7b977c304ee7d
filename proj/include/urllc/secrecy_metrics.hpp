#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "urllc/fb_coding.hpp"

namespace urllc {

/// Decoding-error constraints: Bob must see at most beta_b, Eve at least beta_e.
struct ConstraintPair {
  Probability beta_b{1e-6};
  Probability beta_e{0.5};

  /// Throws std::invalid_argument unless both lie strictly inside (0, 1).
  void validate() const;
  /// Non-fatal oddities (beta_b >= beta_e, beta_e above 0.5).
  std::vector<std::string> warnings() const;
};

struct SecrecyAssessment {
  CodingRate r_sup;
  CodingRate r_inf;
  double delta_r = 0.0;
  /// delta_r >= 0 and a strictly positive reliable rate exists.
  bool feasible = false;
};

enum class ConstraintSide { kReliability, kSecurity };

const char* to_string(ConstraintSide side);

/// A threshold that no SNR inside the search bracket can meet.
class UnsatisfiableError : public std::runtime_error {
 public:
  UnsatisfiableError(ConstraintSide side, const std::string& what) : std::runtime_error(what), side_(side) {}
  ConstraintSide side() const { return side_; }

 private:
  ConstraintSide side_;
};

/// SNR search bracket shared by the threshold root finders, in dB.
inline constexpr double kSnrBracketLowDb = -60.0;
inline constexpr double kSnrBracketHighDb = 60.0;

RateBound r_sup(Blocklength n, Probability beta_b, SnrValue gamma_b, ApproximationConfig cfg = {});
RateBound r_inf(Blocklength n, Probability beta_e, SnrValue gamma_e, ApproximationConfig cfg = {});

SecrecyAssessment rate_interval(Blocklength n, SnrValue gamma_b, SnrValue gamma_e, const ConstraintPair& constraints,
                                ApproximationConfig cfg = {});

/// max(0, C_b - C_e), the infinite-blocklength reference.
double asymptotic_secrecy_capacity(SnrValue gamma_b, SnrValue gamma_e);

struct SecurityGap {
  SnrValue snr_b_min;
  SnrValue snr_e_max;
  double gap_linear = 0.0;
  double gap_db = 0.0;
};

/// Smallest SNR with error_probability <= target (error probability falls with SNR).
SnrValue reliability_threshold(Blocklength n, CodingRate rate, Probability target, ApproximationConfig cfg = {});
/// Largest SNR with error_probability >= target.
SnrValue security_threshold(Blocklength n, CodingRate rate, Probability target, ApproximationConfig cfg = {});

SecurityGap security_gap(Blocklength n, CodingRate rate, const ConstraintPair& constraints,
                         ApproximationConfig cfg = {});

/// Smallest n <= n_max at which rate_interval is feasible, or nullopt.
std::optional<std::int64_t> min_blocklength(SnrValue gamma_b, SnrValue gamma_e, const ConstraintPair& constraints,
                                            ApproximationConfig cfg, std::int64_t n_max);

}  // namespace urllc
