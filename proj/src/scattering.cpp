#include "cra/scattering.hpp"

#include <cmath>

namespace cra {

namespace {

constexpr double kEdgeSnapRel = 1e-12;
constexpr complexd kI{0.0, 1.0};

// Discriminant 4 xi^2 - (E - center)^2 with an exact snap to zero when the
// energy sits within rounding distance of a band edge.
double band_discriminant(double energy, double center, double xi) {
  const double w = 2.0 * xi;
  const double d = (w - (energy - center)) * (w + (energy - center));
  if (std::abs(d) <= kEdgeSnapRel * w * w) return 0.0;
  return d;
}

} // namespace

EffectivePotentials effective_potentials(const SystemParams& params,
                                         double energy) {
  const double w = energy - params.eps_e;
  if (w == 0.0) {
    throw PoleAtBareAtom("effective potentials diverge at E = eps_e");
  }
  return EffectivePotentials{params.j_a * params.j_a / w,
                             params.j_b * params.j_b / w,
                             params.j_a * params.j_b / w};
}

complexd kappa(const SystemParams& params, double energy) {
  const double d =
      band_discriminant(energy, params.omega_b + params.eps_f, params.xi_b);
  if (d >= 0.0) return complexd(std::sqrt(d), 0.0);
  return complexd(0.0, std::sqrt(-d)); // principal branch outside the band
}

complexd zeta(const SystemParams& params, double energy) {
  const double d = band_discriminant(energy, params.omega_a, params.xi_a);
  if (d > 0.0) return complexd(0.0, -std::sqrt(d));
  if (d == 0.0) return complexd(0.0, 0.0);
  return energy < params.omega_a ? complexd(std::sqrt(-d), 0.0)
                                 : complexd(-std::sqrt(-d), 0.0);
}

namespace {

struct Amplitudes {
  complexd s, r, a, u_e;
  bool edge = false;
};

Amplitudes solve_amplitudes(const SystemParams& params, double energy) {
  const Band b = band(params, Chain::B);
  if (!b.contains(energy)) {
    throw OutOfBand("incident energy outside the chain-B band");
  }
  const complexd kap = kappa(params, energy);
  const complexd z = zeta(params, energy);
  const double w = energy - params.eps_e;
  const double ja2 = params.j_a * params.j_a;
  const double jb2 = params.j_b * params.j_b;

  Amplitudes out;
  if (kap.real() == 0.0) {
    // band edge: numerator i*kappa*(...) vanishes, denominator stays finite
    if (z == complexd(0.0, 0.0) && ja2 + w * z == complexd(0.0, 0.0)) {
      throw PoleAtBareAtom("band edge coincides with a chain-A band edge");
    }
    out.edge = true;
    out.s = 0.0;
    out.r = -1.0;
    out.a = 0.0;
    out.u_e = 0.0;
    return out;
  }

  const complexd d = ja2 + w * z;
  const complexd denom = kI * kap * d - jb2 * z;
  if (denom == complexd(0.0, 0.0)) {
    throw PoleAtBareAtom("scattering denominator vanished");
  }
  out.s = kI * kap * d / denom;
  out.r = out.s - 1.0;
  if (params.j_b == 0.0) {
    out.u_e = 0.0;
    out.a = 0.0;
  } else {
    // atom-row and chain-B-row relations, exact at the reflection poles
    out.u_e = kI * kap * out.r / params.j_b;
    out.a = params.j_a == 0.0
                ? complexd(0.0, 0.0)
                : (w * out.u_e - params.j_b * out.s) / params.j_a;
  }
  return out;
}

} // namespace

complexd transmission_amplitude(const SystemParams& params, double energy) {
  return solve_amplitudes(params, energy).s;
}

ScatteringSolution full_solution(const SystemParams& params, double energy) {
  const Amplitudes amp = solve_amplitudes(params, energy);
  ScatteringSolution sol;
  sol.energy = energy;
  sol.k = wavevector_from_energy(params, energy, Chain::A);
  sol.k_prime = wavevector_from_energy(params, energy, Chain::B);
  sol.s = amp.s;
  sol.r = amp.r;
  sol.a_amp = amp.a;
  sol.u_e = amp.u_e;
  sol.at_band_edge = amp.edge;
  sol.t_rate = std::norm(amp.s);
  sol.r_rate = std::norm(amp.r);
  const double v_a = group_velocity(params, energy, Chain::A);
  const double v_b = group_velocity(params, energy, Chain::B);
  sol.leak_rate =
      (v_a > 0.0 && v_b > 0.0) ? 2.0 * std::norm(amp.a) * v_a / v_b : 0.0;
  return sol;
}

std::vector<SpectrumEntry> spectrum(const SystemParams& params,
                                    const std::vector<double>& energies) {
  if (energies.empty()) throw EmptyGrid("empty energy grid");
  std::vector<SpectrumEntry> out;
  out.reserve(energies.size());
  const Band b = band(params, Chain::B);
  for (double e : energies) {
    SpectrumEntry entry;
    entry.energy = e;
    if (!b.contains(e)) {
      entry.status = PointStatus::OutOfBand;
    } else {
      entry.sol = full_solution(params, e);
      entry.status = entry.sol.at_band_edge ? PointStatus::EdgeLimit
                                            : PointStatus::Ok;
    }
    out.push_back(entry);
  }
  return out;
}

std::vector<double> uniform_grid(double e_min, double e_max, int n) {
  if (n < 2) throw EmptyGrid("grid needs at least 2 points");
  if (!(e_min < e_max)) throw EmptyGrid("grid bounds must satisfy min < max");
  std::vector<double> g(n);
  const double step = (e_max - e_min) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = e_min + i * step;
  g.back() = e_max;
  return g;
}

} // namespace cra
