#pragma once

#include <complex>
#include <utility>

#include "cra/errors.hpp"

namespace cra {

using complexd = std::complex<double>;

/// Which resonator chain a quantity refers to. The photon is always
/// injected along chain B; chain A is the crossed array holding the
/// atom-dressed bound states.
enum class Chain { A, B };

/// All model constants, expressed in units of omega_a. The unit is stored
/// explicitly so parameter sets with omega_a != 1 stay consistent.
///
/// The three atomic levels are |g> (energy 0), |f> (eps_f) and |e> (eps_e).
/// Mode a couples |g>-|e> with strength j_a, mode b couples |f>-|e> with j_b.
struct SystemParams {
  double omega_a = 1.0;
  double omega_b = 0.9;
  double xi_a = 0.15;
  double xi_b = 0.25;
  double j_a = 0.15;
  double j_b = 0.2;
  double eps_e = 0.95;
  double eps_f = 0.15;

  /// Throws InvalidParams unless xi_a, xi_b > 0, j_a, j_b >= 0 and all
  /// fields are finite.
  void validate() const;

  /// Parameter set of the reference transmission spectrum (all values in
  /// units of omega_a). This is also the CLI default.
  static SystemParams reference();

  /// Same as reference() but with omega_b shifted so that
  /// omega_a = omega_b + eps_f (two-photon resonance). Used as the
  /// canonical working point for the dark-state analysis.
  static SystemParams resonant_reference();
};

/// Cosine band of one chain: energies [center - 2 xi, center + 2 xi].
/// Chain A is centered at omega_a; chain B at omega_b + eps_f because the
/// atom is left in |f> when the photon travels in B.
struct Band {
  double center = 0.0;
  double half_width = 0.0; // 2 xi

  double lower_edge() const { return center - half_width; }
  double upper_edge() const { return center + half_width; }
  /// Closed-interval containment so that k = 0, pi are representable.
  bool contains(double energy) const {
    return energy >= lower_edge() && energy <= upper_edge();
  }
  bool strictly_contains(double energy) const {
    return energy > lower_edge() && energy < upper_edge();
  }
};

/// Dimensionless lattice wave number of one chain.
///
/// Convention: in-band energies map to real k in [0, pi]; out-of-band
/// energies map to complex k with Im(k) < 0 and |exp(-i k)| < 1, matching
/// the evanescent profile u(m) = A exp(-i k |m|). Below the band
/// Re(k) = 0, above it Re(k) = pi.
struct WaveVector {
  complexd value{};
  Chain chain = Chain::A;

  bool is_real() const { return value.imag() == 0.0; }
  /// Site-to-site factor exp(-i k) of the evanescent profile.
  complexd evanescent_factor() const {
    return std::exp(complexd(0.0, -1.0) * value);
  }
};

/// E(k) = center - 2 xi cos k for the chain the wave vector belongs to.
complexd dispersion_energy(const SystemParams& params, const WaveVector& k);

/// Inverts the dispersion relation. In-band: real root in [0, pi]
/// (band edges map to 0 and pi exactly). Out-of-band: the decaying root,
/// see WaveVector.
WaveVector wavevector_from_energy(const SystemParams& params, double energy,
                                  Chain chain);

/// Both bands, (chain A, chain B).
std::pair<Band, Band> bands(const SystemParams& params);
Band band(const SystemParams& params, Chain chain);

/// Site-to-site ratio z of the physical scattered wave in the given chain:
/// u(m) ~ z^{|m|} away from the intersection. For out-of-band energies z is
/// the decaying root (|z| < 1) of z + 1/z = (center - E)/xi; for in-band
/// energies it is the outgoing root (|z| = 1, Im z > 0, positive group
/// velocity away from the intersection). Equals exp(+i k) in band and
/// exp(-i k) out of band with k from wavevector_from_energy.
complexd outgoing_factor(const SystemParams& params, double energy,
                         Chain chain);

/// Group velocity 2 xi sin(Re k) of an in-band energy; zero out of band.
double group_velocity(const SystemParams& params, double energy, Chain chain);

} // namespace cra
