#pragma once

#include <vector>

#include "cra/model.hpp"

namespace cra {

/// Effective delta-potential strengths induced at the intersection after
/// eliminating the excited-state amplitude: V_a = j_a^2/(E - eps_e),
/// V_b = j_b^2/(E - eps_e), V = j_a j_b/(E - eps_e). They diverge only as
/// E -> eps_e; the scattering formulas below are evaluated in a reduced
/// form that never touches that pole.
struct EffectivePotentials {
  double v_a = 0.0;
  double v_b = 0.0;
  double v_cross = 0.0;
};

EffectivePotentials effective_potentials(const SystemParams& params,
                                         double energy);

/// kappa(E) = sqrt(4 xi_b^2 - (E - omega_b - eps_f)^2): the chain-B group
/// velocity 2 xi_b sin k' inside the band, pure imaginary (principal
/// branch) outside. Energies within ~1e-12 (relative) of a band edge snap
/// to kappa = 0 so the analytic edge limits are exact.
complexd kappa(const SystemParams& params, double energy);

/// Chain-A self-energy kernel zeta(E) = xi_a (1/z - z) with z the
/// outgoing/decaying chain-A factor (see model::outgoing_factor):
///   -i sqrt(f)     inside the A band   (f = 4 xi_a^2 - (E-omega_a)^2 > 0)
///   +sqrt(-f)      below the A band
///   -sqrt(-f)      above the A band
/// The in-band branch is fixed by the outgoing-wave condition and ratified
/// against the lattice oracle; it makes T + R < 1 inside the A band, with
/// the missing flux carried away along chain A. Band-edge energies snap to
/// zeta = 0 exactly.
complexd zeta(const SystemParams& params, double energy);

/// One scattering solution at fixed incident energy, incident amplitude 1.
/// Continuity pins u_f(0) = s and 1 + r = s; the chain-A profile is
/// u_g(m) = a_amp * z^{|m|} and the chain-B profile follows the plane-wave
/// ansatz, so the full lattice state is reconstructable from these numbers.
struct ScatteringSolution {
  double energy = 0.0;
  WaveVector k;        // chain A
  WaveVector k_prime;  // chain B
  complexd s{};        // transmission amplitude
  complexd r{};        // reflection amplitude, r = s - 1
  complexd a_amp{};    // chain-A amplitude at the intersection, u_g(0)
  complexd u_e{};      // excited-state amplitude
  double t_rate = 0.0;    // |s|^2
  double r_rate = 0.0;    // |r|^2
  double leak_rate = 0.0; // flux into both chain-A arms
  bool at_band_edge = false; // analytic-limit value at a chain-B band edge
};

/// Closed-form transmission amplitude. The printed form
///   s = i kappa / (i kappa + Ja^2 Jb^2 / (Ja^2 W + W^2 zeta) - Jb^2 / W),
/// W = E - eps_e, is evaluated as the algebraically equivalent
///   s = i kappa (Ja^2 + W zeta) / (i kappa (Ja^2 + W zeta) - Jb^2 zeta),
/// which is free of the spurious 1/W pole and exact at the perfect
/// reflection points where Ja^2 + W zeta = 0.
///
/// Throws OutOfBand for E outside the chain-B band; returns the analytic
/// limit s = 0 exactly at the band edges. Throws PoleAtBareAtom if the
/// reduced denominator vanishes (requires kappa = 0 and zeta-term zero
/// simultaneously; unreachable for valid in-band energies).
complexd transmission_amplitude(const SystemParams& params, double energy);

/// Full amplitude set and flux triple at one energy. Preconditions and
/// errors as transmission_amplitude.
ScatteringSolution full_solution(const SystemParams& params, double energy);

enum class PointStatus { Ok, EdgeLimit, OutOfBand };

struct SpectrumEntry {
  double energy = 0.0;
  PointStatus status = PointStatus::Ok;
  ScatteringSolution sol; // valid for Ok and EdgeLimit
};

/// Element-wise full_solution over an energy grid, order preserving.
/// Out-of-band grid points are reported with status OutOfBand instead of
/// raising. Throws EmptyGrid on an empty grid.
std::vector<SpectrumEntry> spectrum(const SystemParams& params,
                                    const std::vector<double>& energies);

/// Uniform grid with n >= 2 points, both endpoints included.
std::vector<double> uniform_grid(double e_min, double e_max, int n);

} // namespace cra
