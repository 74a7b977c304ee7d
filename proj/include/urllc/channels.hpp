#pragma once

#include <Eigen/Dense>
#include <complex>

#include "urllc/numerics.hpp"

namespace urllc {

/// Per-antenna complex channel coefficients for one fading realization.
using ChannelVector = Eigen::VectorXcd;

struct RicianSpec {
  /// LOS-to-scatter power ratio; +infinity means pure LOS.
  double k_factor = 0.0;
  double aoa_radians = 0.0;
  int n_antennas = 1;

  void validate() const;
};

struct ReciprocityError {
  double sigma_delta = 0.0;
};

/// i.i.d. CN(0, 1) entries.
ChannelVector sample_rayleigh(int n_antennas, CounterRng& rng);
ChannelVector sample_rayleigh(int n_antennas, RngSeed seed);

/// Half-wavelength ULA response a_k = exp(i pi k sin(theta)). Requires |theta| < pi/2.
ChannelVector steering_vector(double aoa_radians, int n_antennas);
/// Same response without the angle-range check (for perturbed angle estimates).
ChannelVector ula_response(double aoa_radians, int n_antennas);

/// sqrt(K/(K+1)) a(theta) + sqrt(1/(K+1)) w. Always consumes the scatter draws,
/// so draw positions do not depend on K.
ChannelVector sample_rician(const RicianSpec& spec, CounterRng& rng);
ChannelVector sample_rician(const RicianSpec& spec, RngSeed seed);

/// h_d + delta with delta ~ CN(0, sigma^2) per entry. sigma = 0 returns h_d untouched
/// and draws nothing.
ChannelVector apply_reciprocity_error(const ChannelVector& h_d, ReciprocityError err, CounterRng& rng);
ChannelVector apply_reciprocity_error(const ChannelVector& h_d, ReciprocityError err, RngSeed seed);

}  // namespace urllc
