#include <doctest.h>

#include <cmath>

#include "cra/bound_states.hpp"
#include "cra/lattice_oracle.hpp"
#include "cra/scattering.hpp"

using namespace cra;

namespace {

const SystemParams kRef = SystemParams::reference();

double eq17_residual(const SystemParams& p, const BoundState& b) {
  const double disc =
      (b.energy - p.omega_a) * (b.energy - p.omega_a) - 4.0 * p.xi_a * p.xi_a;
  const double sign = b.branch == Branch::Lower ? -1.0 : 1.0;
  return std::abs(b.energy - p.eps_e - sign * p.j_a * p.j_a / std::sqrt(disc));
}

} // namespace

TEST_CASE("reference parameters give the two known roots") {
  const auto states = solve_bound_states(kRef);
  REQUIRE(states.size() == 2);
  CHECK(states[0].branch == Branch::Lower);
  CHECK(states[1].branch == Branch::Upper);
  // reported rounded values are 0.68 and 1.3; the solved roots refine them
  CHECK(std::abs(states[0].energy - 0.68) < 0.02);
  CHECK(std::abs(states[1].energy - 1.3) < 0.02);
  CHECK(states[0].energy == doctest::Approx(0.6879544231).epsilon(1e-8));
  CHECK(states[1].energy == doctest::Approx(1.3065646470).epsilon(1e-8));
  for (const auto& b : states) {
    CHECK(eq17_residual(kRef, b) < 1e-12);
    CHECK(b.residual < 1e-12);
    CHECK(std::abs(b.evanescent_k.evanescent_factor()) < 1.0);
    CHECK(b.evanescent_k.value.imag() < 0.0);
  }
  CHECK(states[0].energy < 0.7);
  CHECK(states[1].energy > 1.3);
}

TEST_CASE("vanishing coupling pushes the roots to the band edges") {
  SystemParams p = kRef;
  for (double j : {1e-2, 1e-3, 1e-4}) {
    p.j_a = j;
    const auto states = solve_bound_states(p);
    REQUIRE(states.size() == 2);
    CHECK(std::abs(states[0].energy - 0.7) < 2.0 * std::pow(j, 4.0 / 3.0) + 1e-6);
    CHECK(std::abs(states[1].energy - 1.3) < 2.0 * std::pow(j, 4.0 / 3.0) + 1e-6);
  }
  p.j_a = 0.0;
  CHECK(solve_bound_states(p).empty());
}

TEST_CASE("symmetric detuning gives symmetric roots") {
  SystemParams p = kRef;
  p.eps_e = p.omega_a;
  const auto states = solve_bound_states(p);
  REQUIRE(states.size() == 2);
  CHECK(std::abs((states[1].energy - p.omega_a) -
                 (p.omega_a - states[0].energy)) < 1e-10);
}

TEST_CASE("appendix entry point solves the identical equation") {
  const auto full = solve_bound_states(kRef);
  const auto reduced =
      appendix_bound_states(kRef.omega_a, kRef.xi_a, kRef.j_a, kRef.eps_e);
  REQUIRE(full.size() == reduced.size());
  for (size_t i = 0; i < full.size(); ++i) {
    CHECK(std::abs(full[i].energy - reduced[i].energy) < 1e-12);
  }
}

TEST_CASE("normalization of the closed-form bound state") {
  for (const auto& b : solve_bound_states(kRef)) {
    const double z = std::abs(b.evanescent_k.evanescent_factor());
    const double tail =
        b.amp * b.amp * (1.0 + z * z) / (1.0 - z * z);
    CHECK(std::abs(b.atom_weight + tail - 1.0) < 1e-10);
    CHECK(b.atom_weight > 0.0);
    CHECK(b.localization_length > 0.0);
  }
}

TEST_CASE("exact diagonalization confirms the roots (reduced model)") {
  const auto roots = solve_bound_states(kRef);
  const auto sys =
      build_single_chain(kRef.omega_a, kRef.xi_a, kRef.j_a, kRef.eps_e, 400);
  const auto pairs = diagonalize(sys);
  // out-of-band eigenvalues: first and last of the sorted spectrum
  const double lo = pairs.front().energy;
  const double hi = pairs.back().energy;
  CHECK(std::abs(lo - roots[0].energy) < 1e-6);
  CHECK(std::abs(hi - roots[1].energy) < 1e-6);
  CHECK(pairs.front().localization > 0.05); // localized
  CHECK(pairs.back().localization > 0.05);
}

TEST_CASE("ED error decreases with lattice size down to the residual floor") {
  // a moderately shallow state so the truncation error is visible at small N
  SystemParams p = kRef;
  p.j_a = 0.08;
  const auto roots = solve_bound_states(p);
  REQUIRE(roots.size() == 2);
  double prev = 1.0;
  for (int n : {50, 100, 200, 400}) {
    const auto sys = build_single_chain(p.omega_a, p.xi_a, p.j_a, p.eps_e, n);
    const auto pairs = diagonalize(sys);
    const double err = std::abs(pairs.front().energy - roots[0].energy);
    CHECK(err <= prev + 1e-12);
    prev = err;
  }
  CHECK(prev < 1e-6);
}

TEST_CASE("ED eigenvector tail matches the evanescent factor") {
  const auto roots = solve_bound_states(kRef);
  const auto sys =
      build_single_chain(kRef.omega_a, kRef.xi_a, kRef.j_a, kRef.eps_e, 400);
  const Eigen::MatrixXd dense(sys.hamiltonian);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
  const double expect_slope =
      std::log(std::abs(roots[0].evanescent_k.evanescent_factor()));
  // ground state of the spectrum is the lower bound state
  const auto v = es.eigenvectors().col(0);
  for (int j = 5; j <= 20; ++j) {
    const double slope = std::log(std::abs(v(sys.index_site(j + 1))) /
                                  std::abs(v(sys.index_site(j))));
    CHECK(std::abs(slope - expect_slope) < 0.01 * std::abs(expect_slope));
  }
}

TEST_CASE("feshbach resonances: containment and the reflection link") {
  const auto res = feshbach_resonances(kRef);
  REQUIRE(res.size() == 2);
  for (double e : res) {
    const ScatteringSolution sol = full_solution(kRef, e);
    CHECK(sol.t_rate < 1e-8);
    CHECK(sol.r_rate > 1.0 - 1e-8);
    CHECK(std::abs(transmission_amplitude(kRef, e)) < 1e-8);
  }
}

TEST_CASE("no resonances when the B band misses the roots") {
  SystemParams p = kRef;
  // chain-B band [0.9, 1.2]: both roots fall outside
  p.omega_b = 1.05 - p.eps_f;
  p.xi_b = 0.075;
  CHECK(feshbach_resonances(p).empty());

  p = kRef;
  p.j_a = 0.0;
  CHECK(feshbach_resonances(p).empty());
}
