#include "cra/model.hpp"

#include <cmath>

namespace cra {

namespace {

bool finite(double x) { return std::isfinite(x); }

double chain_center(const SystemParams& p, Chain chain) {
  return chain == Chain::A ? p.omega_a : p.omega_b + p.eps_f;
}

double chain_hopping(const SystemParams& p, Chain chain) {
  return chain == Chain::A ? p.xi_a : p.xi_b;
}

} // namespace

void SystemParams::validate() const {
  for (double v : {omega_a, omega_b, xi_a, xi_b, j_a, j_b, eps_e, eps_f}) {
    if (!finite(v)) throw InvalidParams("SystemParams: non-finite field");
  }
  if (!(xi_a > 0.0) || !(xi_b > 0.0)) {
    throw InvalidParams("SystemParams: hopping energies must be positive");
  }
  if (j_a < 0.0 || j_b < 0.0) {
    throw InvalidParams("SystemParams: couplings must be non-negative");
  }
}

SystemParams SystemParams::reference() { return SystemParams{}; }

SystemParams SystemParams::resonant_reference() {
  SystemParams p;
  p.omega_b = p.omega_a - p.eps_f;
  return p;
}

complexd dispersion_energy(const SystemParams& params, const WaveVector& k) {
  const double center = chain_center(params, k.chain);
  const double xi = chain_hopping(params, k.chain);
  return center - 2.0 * xi * std::cos(k.value);
}

WaveVector wavevector_from_energy(const SystemParams& params, double energy,
                                  Chain chain) {
  const double center = chain_center(params, chain);
  const double xi = chain_hopping(params, chain);
  const double c = (center - energy) / (2.0 * xi);
  WaveVector k;
  k.chain = chain;
  if (c >= 1.0) {
    // below the band: k = -i q, q >= 0
    k.value = complexd(0.0, -std::acosh(c));
  } else if (c <= -1.0) {
    // above the band: k = pi - i q
    k.value = complexd(M_PI, -std::acosh(-c));
  } else {
    k.value = complexd(std::acos(c), 0.0);
  }
  return k;
}

Band band(const SystemParams& params, Chain chain) {
  return Band{chain_center(params, chain), 2.0 * chain_hopping(params, chain)};
}

std::pair<Band, Band> bands(const SystemParams& params) {
  return {band(params, Chain::A), band(params, Chain::B)};
}

complexd outgoing_factor(const SystemParams& params, double energy,
                         Chain chain) {
  const WaveVector k = wavevector_from_energy(params, energy, chain);
  if (k.is_real()) {
    // in band: outgoing root exp(+i k), carries current away from site 0
    return std::exp(complexd(0.0, 1.0) * k.value);
  }
  return k.evanescent_factor();
}

double group_velocity(const SystemParams& params, double energy, Chain chain) {
  const WaveVector k = wavevector_from_energy(params, energy, chain);
  if (!k.is_real()) return 0.0;
  return 2.0 * chain_hopping(params, chain) * std::sin(k.value.real());
}

} // namespace cra
