#pragma once

#include <Eigen/Dense>

#include "cra/model.hpp"
#include "cra/scattering.hpp"

namespace cra {

/// Detunings of the two transition arms:
/// delta_1 = eps_e - omega_a, delta_2 = eps_e - eps_f - omega_b.
/// Two-photon resonance (delta_1 = delta_2, equivalently
/// omega_a = omega_b + eps_f) is flagged with a 1e-9 tolerance.
struct Detunings {
  double delta_1 = 0.0;
  double delta_2 = 0.0;
  bool two_photon_resonant = false;
};

Detunings detunings_of(const SystemParams& params);

/// Eigensystem of the intersection-resonator Hamiltonian at two-photon
/// resonance, over the ordered basis (|phi,e>, |0,g>, |0,f>):
///
///   e_plus  = -(Delta + J')/2   with  b_plus  = [(J'+Delta), -2 j_a, -2 j_b] / eta
///   e_minus = -(Delta - J')/2   with  b_minus = [(J'-Delta), +2 j_a, +2 j_b] / chi
///   e_zero  = 0                 with  dark    = [0, -j_b, +j_a] / J
///
/// J = sqrt(j_a^2 + j_b^2), J' = sqrt(4 J^2 + Delta^2),
/// chi = sqrt((J'-Delta)^2 + 4 J^2), eta = sqrt((J'+Delta)^2 + 4 J^2).
/// The dark state has no excited-state component and is annihilated by the
/// interaction Hamiltonian; the bright states carry the excited-state
/// amplitude. All couplings are real, so the vectors are real.
struct DressedTriple {
  double e_plus = 0.0;
  double e_minus = 0.0;
  double e_zero = 0.0;
  Eigen::Vector3d b_plus;
  Eigen::Vector3d b_minus;
  Eigen::Vector3d dark;
  double j_norm = 0.0;  // J
  double j_prime = 0.0; // J'
  double chi = 0.0;
  double eta = 0.0;
  /// max |lambda_closed - lambda_numeric| against a direct 3x3
  /// diagonalization, filled in by dressed_triple as a self-check.
  double eig_check_residual = 0.0;
};

/// Interaction-picture Hamiltonian restricted to the single-excitation
/// intersection basis (|phi,e>, |0,g>, |0,f>):
/// diagonal (-delta_1, 0, -(delta_1 - delta_2)), couplings j_a and j_b on
/// the excited row. Real symmetric, general detunings accepted.
Eigen::Matrix3d interaction_hamiltonian(const SystemParams& params);

/// Closed-form dressed eigensystem. Throws NotResonant unless
/// |delta_1 - delta_2| < 1e-9.
DressedTriple dressed_triple(const SystemParams& params);

/// Squared overlaps of a scattering state (incident amplitude 1) with the
/// dressed triple. The scattering state enters through its intersection
/// amplitudes u_f(0) = s, u_g(0) = a_amp and u_e:
///   <E|D>  = (j_a u_f*(0) - j_b u_g*(0)) / J
///   <E|B+> = ((J'+Delta) u_e* - 2 j_a u_g*(0) - 2 j_b u_f*(0)) / eta
///   <E|B-> = ((J'-Delta) u_e* + 2 j_a u_g*(0) + 2 j_b u_f*(0)) / chi
struct OverlapTriple {
  double dark = 0.0;
  double bright_plus = 0.0;
  double bright_minus = 0.0;

  double intersection_weight() const {
    return dark + bright_plus + bright_minus;
  }
  /// Fraction of the state's intersection-resonator weight in the dark
  /// channel; equals 1 exactly iff u_e = 0 and the photonic components
  /// are proportional to the dark superposition.
  double dark_fraction() const {
    const double w = intersection_weight();
    return w > 0.0 ? dark / w : 0.0;
  }
};

OverlapTriple overlaps(const SystemParams& params,
                       const ScatteringSolution& sol);

/// Numerical rewrite of the truncated lattice Hamiltonian in the basis
/// {|B+>, |B->, |D>, |m,g> (m != 0), |n,f> (n != 0)} via the unitary from
/// dressed_triple, with the structure of the transformed matrix extracted
/// for comparison against the closed-form coupling pattern.
struct BasisTransformReport {
  double max_spectrum_diff = 0.0;  // unitary invariance of the spectrum
  double dark_diagonal = 0.0;      // <D|H|D>, equals omega_a at resonance
  double bplus_diagonal = 0.0;
  double bminus_diagonal = 0.0;
  double bright_bright_coupling = 0.0; // <B+|H|B->
  // nearest-neighbor couplings of the dark state, expected
  // (+j_b xi_a / J, -j_a xi_b / J) on (chain A, chain B)
  double dark_coupling_a = 0.0;
  double dark_coupling_b = 0.0;
  // largest coupling of any dressed state to sites beyond |1| (should
  // vanish: the rewrite touches only the intersection)
  double max_beyond_neighbor_coupling = 0.0;
};

/// Throws NotResonant off resonance; requires n_half >= 10.
BasisTransformReport basis_transform_check(const SystemParams& params,
                                           int n_half);

} // namespace cra
