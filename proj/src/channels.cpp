#include "urllc/channels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace urllc {

namespace {

std::complex<double> complex_normal(CounterRng& rng, double std_per_entry) {
  const double s = std_per_entry / std::numbers::sqrt2;
  const double re = rng.standard_normal();
  const double im = rng.standard_normal();
  return {s * re, s * im};
}

void require_antennas(int n) {
  if (n < 1) throw std::invalid_argument("antenna count must be >= 1");
}

}  // namespace

void RicianSpec::validate() const {
  require_antennas(n_antennas);
  if (!(k_factor >= 0.0)) throw std::invalid_argument("Rician K-factor must be >= 0");
  if (!(std::abs(aoa_radians) < std::numbers::pi / 2)) {
    throw std::invalid_argument("angle of arrival must lie in (-pi/2, pi/2)");
  }
}

ChannelVector sample_rayleigh(int n_antennas, CounterRng& rng) {
  require_antennas(n_antennas);
  ChannelVector h(n_antennas);
  for (int k = 0; k < n_antennas; ++k) h[k] = complex_normal(rng, 1.0);
  return h;
}

ChannelVector sample_rayleigh(int n_antennas, RngSeed seed) {
  CounterRng rng(seed);
  return sample_rayleigh(n_antennas, rng);
}

ChannelVector ula_response(double aoa_radians, int n_antennas) {
  require_antennas(n_antennas);
  ChannelVector a(n_antennas);
  const double phase_step = std::numbers::pi * std::sin(aoa_radians);
  for (int k = 0; k < n_antennas; ++k) a[k] = std::polar(1.0, phase_step * k);
  return a;
}

ChannelVector steering_vector(double aoa_radians, int n_antennas) {
  if (!(std::abs(aoa_radians) < std::numbers::pi / 2)) {
    throw std::invalid_argument("steering_vector: angle must lie in (-pi/2, pi/2)");
  }
  return ula_response(aoa_radians, n_antennas);
}

ChannelVector sample_rician(const RicianSpec& spec, CounterRng& rng) {
  spec.validate();
  const ChannelVector scatter = sample_rayleigh(spec.n_antennas, rng);
  const ChannelVector los = steering_vector(spec.aoa_radians, spec.n_antennas);
  if (std::isinf(spec.k_factor)) return los;
  const double los_weight = std::sqrt(spec.k_factor / (spec.k_factor + 1.0));
  const double scatter_weight = std::sqrt(1.0 / (spec.k_factor + 1.0));
  return los_weight * los + scatter_weight * scatter;
}

ChannelVector sample_rician(const RicianSpec& spec, RngSeed seed) {
  CounterRng rng(seed);
  return sample_rician(spec, rng);
}

ChannelVector apply_reciprocity_error(const ChannelVector& h_d, ReciprocityError err, CounterRng& rng) {
  if (!(err.sigma_delta >= 0.0)) throw std::invalid_argument("reciprocity error std must be >= 0");
  if (err.sigma_delta == 0.0) return h_d;
  ChannelVector h_u = h_d;
  for (Eigen::Index k = 0; k < h_u.size(); ++k) h_u[k] += complex_normal(rng, err.sigma_delta);
  return h_u;
}

ChannelVector apply_reciprocity_error(const ChannelVector& h_d, ReciprocityError err, RngSeed seed) {
  CounterRng rng(seed);
  return apply_reciprocity_error(h_d, err, rng);
}

}  // namespace urllc
