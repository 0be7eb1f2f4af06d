#include "cra/bound_states.hpp"

#include <cmath>
#include <optional>

namespace cra {

namespace {

constexpr int kMaxBisect = 200;
constexpr double kResidualTol = 1e-12;

double root_residual(double energy, double omega_a, double xi_a, double j_a,
                     double eps, Branch branch) {
  const double disc = (energy - omega_a) * (energy - omega_a) -
                      4.0 * xi_a * xi_a;
  const double sign = branch == Branch::Lower ? -1.0 : 1.0;
  return energy - eps - sign * j_a * j_a / std::sqrt(disc);
}

std::optional<BoundState> solve_branch(double omega_a, double xi_a,
                                       double j_a, double eps,
                                       Branch branch) {
  if (j_a <= 0.0) return std::nullopt;
  const double edge =
      branch == Branch::Lower ? omega_a - 2.0 * xi_a : omega_a + 2.0 * xi_a;
  const double span = std::abs(eps) + j_a + 4.0 * xi_a;
  // g is monotone on each side of the band: bracket between the edge and a
  // generous outer bound, where g has opposite signs.
  double a, b;
  if (branch == Branch::Lower) {
    a = edge - span;
    b = edge - 1e-9 * (1.0 + std::abs(edge));
  } else {
    a = edge + 1e-9 * (1.0 + std::abs(edge));
    b = edge + span;
  }
  auto g = [&](double e) {
    return root_residual(e, omega_a, xi_a, j_a, eps, branch);
  };
  double fa = g(a);
  double fb = g(b);
  if ((fa < 0.0) == (fb < 0.0)) {
    throw NoConvergence("bound-state bracket has no sign change");
  }
  double mid = a;
  for (int it = 0; it < kMaxBisect; ++it) {
    mid = 0.5 * (a + b);
    const double fm = g(mid);
    if (std::abs(fm) < kResidualTol || mid == a || mid == b) break;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  const double residual = std::abs(g(mid));
  if (residual >= kResidualTol) {
    throw NoConvergence("bound-state bisection did not reach tolerance");
  }

  BoundState bs;
  bs.energy = mid;
  bs.branch = branch;
  bs.residual = residual;
  // evanescent wave vector, tail amplitude and atom weight. With
  // z = exp(-i k) (|z| < 1) the normalized state has
  //   u_e = -zeta * A / j_a,  zeta = xi_a (1/z - z),
  //   |u_e|^2 + A^2 (1 + z^2) / (1 - z^2) = 1.
  const double c = (omega_a - mid) / (2.0 * xi_a);
  const double q = std::acosh(std::abs(c));
  bs.evanescent_k = WaveVector{
      c > 0.0 ? complexd(0.0, -q) : complexd(M_PI, -q), Chain::A};
  const double zr = std::exp(-q); // |z|
  const double zeta_mag = 2.0 * xi_a * std::sinh(q);
  const double tail_sum = (1.0 + zr * zr) / (1.0 - zr * zr);
  const double ue_over_a = zeta_mag / j_a;
  const double a2 = 1.0 / (ue_over_a * ue_over_a + tail_sum);
  bs.amp = std::sqrt(a2);
  bs.atom_weight = ue_over_a * ue_over_a * a2;
  bs.localization_length = 1.0 / q;
  return bs;
}

} // namespace

std::vector<BoundState> solve_bound_states(
    const SystemParams& params, std::vector<std::string>* branch_errors) {
  params.validate();
  std::vector<BoundState> out;
  if (params.j_a <= 0.0) return out;
  const Band bb = band(params, Chain::B);
  std::string first_error;
  for (Branch br : {Branch::Lower, Branch::Upper}) {
    std::optional<BoundState> bs;
    try {
      bs = solve_branch(params.omega_a, params.xi_a, params.j_a,
                        params.eps_e, br);
    } catch (const NoConvergence& e) {
      const char* name = br == Branch::Lower ? "lower" : "upper";
      if (branch_errors) {
        branch_errors->push_back(std::string(name) + " branch: " + e.what());
      } else if (first_error.empty()) {
        first_error = std::string(name) + " branch: " + e.what();
      }
      continue;
    }
    if (!bs) continue;
    const double de = std::min(std::abs(bs->energy - bb.lower_edge()),
                               std::abs(bs->energy - bb.upper_edge()));
    bs->at_b_band_edge = de <= 1e-12 * (1.0 + std::abs(bs->energy));
    out.push_back(*bs);
  }
  if (!first_error.empty()) throw NoConvergence(first_error);
  return out;
}

std::vector<BoundState> appendix_bound_states(double omega_a, double xi_a,
                                              double j_a, double eps) {
  std::vector<BoundState> out;
  if (j_a <= 0.0) return out;
  for (Branch br : {Branch::Lower, Branch::Upper}) {
    auto bs = solve_branch(omega_a, xi_a, j_a, eps, br);
    if (bs) out.push_back(*bs);
  }
  return out;
}

std::vector<double> feshbach_resonances(const SystemParams& params) {
  std::vector<double> out;
  const Band bb = band(params, Chain::B);
  for (const BoundState& bs : solve_bound_states(params)) {
    if (bb.strictly_contains(bs.energy) && !bs.at_b_band_edge) {
      out.push_back(bs.energy);
    }
  }
  return out;
}

} // namespace cra
