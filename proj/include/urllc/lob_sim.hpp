#pragma once

// Location-based beamforming with optional artificial noise. The transmitter steers a
// ULA towards its estimate of Bob's direction and spreads a share of its power as
// isotropic noise over the null space of that beam. Received samples follow y = h^H x.

#include <functional>
#include <vector>

#include "urllc/channels.hpp"
#include "urllc/grid_optimum.hpp"
#include "urllc/secrecy_metrics.hpp"

namespace urllc {

struct LobConfig {
  int n_antennas = 4;
  double theta_bob = 0.0;
  double theta_eve = 0.35;
  /// Std of the Gaussian error on the estimated angle to Bob, radians.
  double location_error_std = 0.0;
  double k_factor_bob = 10.0;
  double k_factor_eve = 10.0;
  double total_power = 1.0;
  /// Share of total_power spent on artificial noise.
  double an_fraction = 0.0;
  double noise_power_bob = 0.1;
  double noise_power_eve = 0.1;
  std::int64_t blocklength = 200;
  ConstraintPair constraints{};
  std::int64_t trials = 10000;
  RngSeed seed{};
  ApproximationConfig approximation{};
  unsigned threads = 0;

  void validate() const;
  double info_power() const { return (1.0 - an_fraction) * total_power; }
  double an_power() const { return an_fraction * total_power; }
};

/// Beamformer and AN subspace built from one angle estimate.
struct LobBeam {
  double theta_hat = 0.0;
  ChannelVector w;
  /// N x (N-1), orthonormal columns orthogonal to a(theta_hat).
  Eigen::MatrixXcd null_basis;
};

/// a(theta_hat) / sqrt(N).
ChannelVector lob_beamformer(double theta_hat, int n_antennas);

/// Orthonormal basis of the complement of a(theta_hat). Throws std::invalid_argument for N < 2.
Eigen::MatrixXcd an_basis(double theta_hat, int n_antennas);

LobBeam make_beam(double theta_hat, int n_antennas);

struct ReceiverPower {
  double signal = 0.0;
  double artificial_noise = 0.0;
  double sinr = 0.0;
};

struct SinrPair {
  ReceiverPower bob;
  ReceiverPower eve;
};

SinrPair sinr_pair(const ChannelVector& h_bob, const ChannelVector& h_eve, const LobBeam& beam, const LobConfig& cfg);

struct LobRecord {
  std::int64_t trial_id = 0;
  double theta_hat = 0.0;
  double info_power = 0.0;
  double an_power = 0.0;
  /// |h_bob^H w|^2
  double beam_gain_bob = 0.0;
  SinrPair sinr;
  SecrecyAssessment assessment;
};

struct LobSummary {
  std::int64_t trials = 0;
  double mean_sinr_bob = 0.0;
  double mean_sinr_eve = 0.0;
  double feasibility_prob = 0.0;
  double mean_delta_r = 0.0;
};

struct LobResult {
  std::vector<LobRecord> records;
  LobSummary summary;
};

LobSummary summarize(const std::vector<LobRecord>& records);

LobResult run_lob(const LobConfig& cfg);

using LobObjective = std::function<double(const LobSummary&)>;

inline double default_lob_objective(const LobSummary& s) { return s.feasibility_prob; }

struct AnOptimum : GridOptimum {
  std::vector<LobSummary> summaries;
};

/// Grid search over an_fraction in [0, 1) with common random numbers; ties go to the
/// smaller fraction.
AnOptimum optimize_an_fraction(const LobConfig& cfg, const std::vector<double>& phi_grid,
                               const LobObjective& objective = default_lob_objective);

}  // namespace urllc
