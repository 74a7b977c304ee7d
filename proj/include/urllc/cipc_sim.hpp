#pragma once

// Channel-inversion power control over a reciprocal TDD link. The user estimates the
// downlink h_d, beamforms with w = conj(h_d)/|h_d| and transmits with P_t = Q/|h_d|^2,
// so the base station receives the constant power Q whenever the uplink equals h_d.
// Received samples follow y = h^T x.

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "urllc/channels.hpp"
#include "urllc/grid_optimum.hpp"
#include "urllc/secrecy_metrics.hpp"

namespace urllc {

class DegenerateChannelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TruncationPolicy {
  kSuspend,  ///< P_t > p_max: skip the transmission (counted as suspended).
  kClamp,    ///< P_t > p_max: transmit at p_max; received power drops below Q.
};

struct CipcConfig {
  double q_target = 1.0;
  double p_max = 10.0;
  int n_antennas_tx = 1;
  double noise_power_bob = 0.1;
  double noise_power_eve = 0.1;
  std::int64_t blocklength = 200;
  ConstraintPair constraints{};
  ReciprocityError reciprocity{};
  std::int64_t trials = 10000;
  RngSeed seed{};
  ApproximationConfig approximation{};
  TruncationPolicy truncation = TruncationPolicy::kSuspend;
  /// Worker threads for the trial loop; 0 picks hardware concurrency.
  unsigned threads = 0;

  void validate() const;
};

struct CipcRecord {
  std::int64_t trial_id = 0;
  /// Transmit power; empty when the trial was suspended.
  std::optional<double> p_t;
  bool degenerate = false;
  double rx_power_bob = 0.0;
  SnrValue gamma_b;
  SnrValue gamma_e;
  SecrecyAssessment assessment;

  bool transmitted() const { return p_t.has_value() && !degenerate; }
};

struct CipcSummary {
  std::int64_t trials = 0;
  std::int64_t suspended = 0;
  std::int64_t degenerate = 0;
  double suspension_prob = 0.0;
  /// The following are conditional on the trial being transmitted.
  double feasibility_prob = 0.0;
  double mean_delta_r = 0.0;
  double mean_gamma_e = 0.0;
  double mean_rx_power_bob = 0.0;
  double var_rx_power_bob = 0.0;
};

struct CipcResult {
  std::vector<CipcRecord> records;
  CipcSummary summary;
};

/// conj(h_d) / |h_d|. Throws DegenerateChannelError for an all-zero channel.
ChannelVector cipc_beamformer(const ChannelVector& h_d);

/// Q / |h|^2 for the channel the transmitter knows, or empty when it exceeds p_max
/// under the suspend policy (clamped to p_max under the clamp policy).
std::optional<double> cipc_power(const ChannelVector& h_known, const CipcConfig& cfg);

CipcSummary summarize(const std::vector<CipcRecord>& records);

CipcResult run_cipc(const CipcConfig& cfg);

using CipcObjective = std::function<double(const CipcSummary&)>;

/// feasibility_prob * (1 - suspension_prob).
double default_cipc_objective(const CipcSummary& s);

struct QOptimum : GridOptimum {
  std::vector<CipcSummary> summaries;
};

/// Evaluates run_cipc for each Q with the same seed (common random numbers) and
/// returns the maximiser; ties go to the smaller Q.
QOptimum optimize_q(const CipcConfig& cfg, const std::vector<double>& q_grid,
                       const CipcObjective& objective = default_cipc_objective);

}  // namespace urllc
