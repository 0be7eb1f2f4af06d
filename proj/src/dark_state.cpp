#include "cra/dark_state.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "cra/lattice_oracle.hpp"

namespace cra {

namespace {
constexpr double kResonanceTol = 1e-9;
}

Detunings detunings_of(const SystemParams& params) {
  Detunings d;
  d.delta_1 = params.eps_e - params.omega_a;
  d.delta_2 = params.eps_e - params.eps_f - params.omega_b;
  d.two_photon_resonant = std::abs(d.delta_1 - d.delta_2) < kResonanceTol;
  return d;
}

Eigen::Matrix3d interaction_hamiltonian(const SystemParams& params) {
  const Detunings d = detunings_of(params);
  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  h(0, 0) = -d.delta_1;
  h(2, 2) = -(d.delta_1 - d.delta_2);
  h(0, 1) = h(1, 0) = params.j_a;
  h(0, 2) = h(2, 0) = params.j_b;
  return h;
}

DressedTriple dressed_triple(const SystemParams& params) {
  const Detunings det = detunings_of(params);
  if (!det.two_photon_resonant) {
    throw NotResonant("dressed_triple requires delta_1 = delta_2");
  }
  const double delta = det.delta_1;
  DressedTriple t;
  t.j_norm = std::hypot(params.j_a, params.j_b);
  if (t.j_norm == 0.0) {
    throw NotResonant("dressed_triple needs at least one nonzero coupling");
  }
  t.j_prime = std::sqrt(4.0 * t.j_norm * t.j_norm + delta * delta);
  t.chi = std::sqrt((t.j_prime - delta) * (t.j_prime - delta) +
                    4.0 * t.j_norm * t.j_norm);
  t.eta = std::sqrt((t.j_prime + delta) * (t.j_prime + delta) +
                    4.0 * t.j_norm * t.j_norm);
  t.e_plus = -(delta + t.j_prime) / 2.0;
  t.e_minus = -(delta - t.j_prime) / 2.0;
  t.e_zero = 0.0;
  t.b_plus << (t.j_prime + delta), -2.0 * params.j_a, -2.0 * params.j_b;
  t.b_plus /= t.eta;
  t.b_minus << (t.j_prime - delta), 2.0 * params.j_a, 2.0 * params.j_b;
  t.b_minus /= t.chi;
  t.dark << 0.0, -params.j_b, params.j_a;
  t.dark /= t.j_norm;

  // self-check: the closed forms must agree with a direct diagonalization
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(
      interaction_hamiltonian(params));
  std::array<double, 3> closed{t.e_plus, t.e_zero, t.e_minus};
  std::sort(closed.begin(), closed.end());
  double resid = 0.0;
  for (int i = 0; i < 3; ++i) {
    resid = std::max(resid, std::abs(closed[i] - es.eigenvalues()(i)));
  }
  t.eig_check_residual = resid;
  return t;
}

OverlapTriple overlaps(const SystemParams& params,
                       const ScatteringSolution& sol) {
  const DressedTriple t = dressed_triple(params);
  const Detunings det = detunings_of(params);
  const double delta = det.delta_1;
  const complexd ug0 = std::conj(sol.a_amp);
  const complexd uf0 = std::conj(sol.s);
  const complexd ue = std::conj(sol.u_e);

  OverlapTriple out;
  const complexd d = (params.j_a * uf0 - params.j_b * ug0) / t.j_norm;
  const complexd bp = ((t.j_prime + delta) * ue - 2.0 * params.j_a * ug0 -
                       2.0 * params.j_b * uf0) /
                      t.eta;
  const complexd bm = ((t.j_prime - delta) * ue + 2.0 * params.j_a * ug0 +
                       2.0 * params.j_b * uf0) /
                      t.chi;
  out.dark = std::norm(d);
  out.bright_plus = std::norm(bp);
  out.bright_minus = std::norm(bm);
  return out;
}

BasisTransformReport basis_transform_check(const SystemParams& params,
                                           int n_half) {
  if (n_half < 10) throw InvalidSize("basis_transform_check: n_half >= 10");
  const DressedTriple t = dressed_triple(params); // throws NotResonant

  const LatticeSystem sys = build(params, n_half);
  const Eigen::MatrixXd h(sys.hamiltonian);
  const int dim = sys.dimension();
  const int i_e = sys.index_atom();
  const int i_g0 = sys.index_a(0);
  const int i_f0 = sys.index_b(0);

  // unitary: identity outside the intersection triple; the triple's
  // columns hold (B+, B-, D) expressed over (|phi,e>, |0,g>, |0,f>)
  Eigen::MatrixXd u = Eigen::MatrixXd::Identity(dim, dim);
  const std::array<int, 3> idx{i_e, i_g0, i_f0};
  const std::array<const Eigen::Vector3d*, 3> vecs{&t.b_plus, &t.b_minus,
                                                   &t.dark};
  for (int c = 0; c < 3; ++c) {
    for (int r = 0; r < 3; ++r) u(idx[r], idx[c]) = 0.0;
  }
  for (int c = 0; c < 3; ++c) {
    for (int r = 0; r < 3; ++r) u(idx[r], idx[c]) = (*vecs[c])(r);
  }

  const Eigen::MatrixXd ht = u.transpose() * h * u;

  BasisTransformReport rep;
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es0(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es1(ht);
    rep.max_spectrum_diff =
        (es0.eigenvalues() - es1.eigenvalues()).cwiseAbs().maxCoeff();
  }
  // column of the transformed matrix holding |D> sits at the old |0,f>
  // slot, |B+> at |phi,e>, |B-> at |0,g>
  const int c_bp = i_e, c_bm = i_g0, c_d = i_f0;
  rep.dark_diagonal = ht(c_d, c_d);
  rep.bplus_diagonal = ht(c_bp, c_bp);
  rep.bminus_diagonal = ht(c_bm, c_bm);
  rep.bright_bright_coupling = ht(c_bp, c_bm);
  rep.dark_coupling_a = ht(sys.index_a(1), c_d);
  rep.dark_coupling_b = ht(sys.index_b(1), c_d);

  double beyond = 0.0;
  for (int col : {c_bp, c_bm, c_d}) {
    for (int i = 0; i < dim; ++i) {
      if (i == i_e || i == i_g0 || i == i_f0) continue;
      if (i == sys.index_a(1) || i == sys.index_a(-1)) continue;
      if (i == sys.index_b(1) || i == sys.index_b(-1)) continue;
      beyond = std::max(beyond, std::abs(ht(i, col)));
    }
  }
  rep.max_beyond_neighbor_coupling = beyond;
  return rep;
}

} // namespace cra
