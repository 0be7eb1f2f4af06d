#pragma once

#include <string>
#include <vector>

#include "cra/model.hpp"

namespace cra {

enum class Branch { Lower, Upper };

/// Atom-induced photon bound state of the dressed chain A. The energy
/// satisfies E = eps_e -/+ j_a^2 / sqrt((E - omega_a)^2 - 4 xi_a^2)
/// (Lower/Upper branch, below/above the chain-A band). The photon tail is
/// u_g(j) = amp * exp(-i k |j|) with Im(k) < 0, and the excited-state
/// weight follows from the atom row of the eigenproblem.
struct BoundState {
  double energy = 0.0;
  Branch branch = Branch::Lower;
  WaveVector evanescent_k; // complex chain-A wave vector
  double amp = 0.0;        // normalized tail amplitude u_g(0)
  double atom_weight = 0.0; // |u_e|^2 of the normalized state
  double localization_length = 0.0; // sites, 1/|ln|exp(-i k)||
  double residual = 0.0;   // defining-equation residual at the root
  bool at_b_band_edge = false; // energy coincides with a chain-B band edge
};

/// Finds the (up to two) bound states by bracketed bisection, one per
/// branch, refined to a residual below 1e-12. j_a = 0 yields none.
/// A branch that fails to converge within 200 bisection iterations (a
/// parameter pathology, e.g. a root outside the documented search window
/// eps_e + j_a + 4 xi_a past the band edge) is reported through
/// branch_errors when given, otherwise rethrown as NoConvergence; the
/// other branch is still returned.
std::vector<BoundState> solve_bound_states(
    const SystemParams& params,
    std::vector<std::string>* branch_errors = nullptr);

/// Same mathematics restricted to the reduced single-chain model (one
/// resonator array with a two-level atom at its central site); kept as a
/// distinct entry point because it is the minimal regression target.
std::vector<BoundState> appendix_bound_states(double omega_a, double xi_a,
                                              double j_a, double eps);

/// Bound-state energies that fall strictly inside the chain-B band: at
/// these energies an incident chain-B photon is perfectly reflected.
std::vector<double> feshbach_resonances(const SystemParams& params);

} // namespace cra
