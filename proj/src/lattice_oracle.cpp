#include "cra/lattice_oracle.hpp"

#include <Eigen/SparseLU>
#include <cmath>
#include <complex>

namespace cra {

namespace {

using Triplet = Eigen::Triplet<double>;
using SparseC = Eigen::SparseMatrix<complexd>;

// Decaying/outgoing site ratio of one chain, found from the quadratic
// z + 1/z = (center - E)/xi rather than from any scattering formula:
// pick |z| < 1, or the root carrying current away from the origin
// (Im z > 0) when E is inside the band.
complexd closure_ratio(double center, double xi, double energy) {
  const double p = (center - energy) / xi;
  const complexd disc = std::sqrt(complexd(p * p - 4.0, 0.0));
  const complexd z1 = 0.5 * (complexd(p, 0.0) + disc);
  const complexd z2 = 0.5 * (complexd(p, 0.0) - disc);
  if (std::abs(z1) < 1.0 - 1e-12) return z1;
  if (std::abs(z2) < 1.0 - 1e-12) return z2;
  return z1.imag() > 0.0 ? z1 : z2;
}

} // namespace

LatticeSystem build(const SystemParams& params, int n_half) {
  params.validate();
  if (n_half < 5) throw InvalidSize("build: n_half must be >= 5");
  LatticeSystem sys;
  sys.n_half = n_half;
  sys.params = params;
  const int dim = sys.dimension();
  std::vector<Triplet> t;
  t.reserve(6 * dim);
  for (int m = -n_half; m <= n_half; ++m) {
    const int i = sys.index_a(m);
    t.emplace_back(i, i, params.omega_a);
    if (m < n_half) {
      t.emplace_back(i, i + 1, -params.xi_a);
      t.emplace_back(i + 1, i, -params.xi_a);
    }
  }
  for (int n = -n_half; n <= n_half; ++n) {
    const int i = sys.index_b(n);
    t.emplace_back(i, i, params.omega_b + params.eps_f);
    if (n < n_half) {
      t.emplace_back(i, i + 1, -params.xi_b);
      t.emplace_back(i + 1, i, -params.xi_b);
    }
  }
  const int ie = sys.index_atom();
  t.emplace_back(ie, ie, params.eps_e);
  if (params.j_a != 0.0) {
    t.emplace_back(ie, sys.index_a(0), params.j_a);
    t.emplace_back(sys.index_a(0), ie, params.j_a);
  }
  if (params.j_b != 0.0) {
    t.emplace_back(ie, sys.index_b(0), params.j_b);
    t.emplace_back(sys.index_b(0), ie, params.j_b);
  }
  sys.hamiltonian.resize(dim, dim);
  sys.hamiltonian.setFromTriplets(t.begin(), t.end());
  return sys;
}

SingleChainSystem build_single_chain(double omega, double xi, double j,
                                     double eps, int n_half) {
  if (n_half < 5) throw InvalidSize("build_single_chain: n_half must be >= 5");
  if (!(xi > 0.0)) throw InvalidParams("build_single_chain: xi must be > 0");
  SingleChainSystem sys;
  sys.n_half = n_half;
  sys.omega = omega;
  sys.xi = xi;
  sys.j = j;
  sys.eps = eps;
  const int dim = sys.dimension();
  std::vector<Triplet> t;
  t.reserve(4 * dim);
  for (int m = -n_half; m <= n_half; ++m) {
    const int i = sys.index_site(m);
    t.emplace_back(i, i, omega);
    if (m < n_half) {
      t.emplace_back(i, i + 1, -xi);
      t.emplace_back(i + 1, i, -xi);
    }
  }
  const int ie = sys.index_atom();
  t.emplace_back(ie, ie, eps);
  if (j != 0.0) {
    t.emplace_back(ie, sys.index_site(0), j);
    t.emplace_back(sys.index_site(0), ie, j);
  }
  sys.hamiltonian.resize(dim, dim);
  sys.hamiltonian.setFromTriplets(t.begin(), t.end());
  return sys;
}

ScatteringSolution stationary_scatter(const SystemParams& params,
                                      double energy, int n_half,
                                      ClosureMode mode) {
  params.validate();
  if (n_half < 5) throw InvalidSize("stationary_scatter: n_half >= 5");
  const Band bb = band(params, Chain::B);
  if (!bb.strictly_contains(energy)) {
    throw SingularSystem(
        "stationary_scatter: energy at or outside the chain-B band");
  }
  const Band ba = band(params, Chain::A);

  const double cb = params.omega_b + params.eps_f;
  const double kp = std::acos((cb - energy) / (2.0 * params.xi_b));
  const complexd eik = std::exp(complexd(0.0, kp));
  const complexd za = closure_ratio(params.omega_a, params.xi_a, energy);
  if (mode == ClosureMode::HardWall) {
    if (ba.contains(energy)) {
      throw TailNotConverged(
          "hard-wall closure needs an energy outside the chain-A band");
    }
    const double tail = std::pow(std::abs(za), n_half);
    if (tail > 1e-12) {
      throw TailNotConverged(
          "hard-wall closure: evanescent tail above 1e-12 at the boundary");
    }
  }

  // Scattered-field formulation: psi = psi_inc + psi_sc with
  // psi_inc(n) = exp(i k' n) on chain B. psi_inc solves every row of the
  // infinite system except the atom row, so the source is -j_b there.
  // Boundary rows carry the single-mode closure for psi_sc.
  const int N = n_half;
  const int dim = 4 * N + 3;
  const auto ia = [N](int m) { return m + N; };
  const auto ib = [N](int n) { return 2 * N + 1 + n + N; };
  const int ie = 4 * N + 2;

  std::vector<Eigen::Triplet<complexd>> t;
  t.reserve(6 * dim);
  const complexd diag_a(params.omega_a - energy, 0.0);
  const complexd diag_b(cb - energy, 0.0);
  for (int m = -N; m <= N; ++m) {
    const int i = ia(m);
    complexd d = diag_a;
    if (std::abs(m) == N && mode == ClosureMode::Exact) d -= params.xi_a * za;
    t.emplace_back(i, i, d);
    if (m > -N) t.emplace_back(i, ia(m - 1), complexd(-params.xi_a, 0.0));
    if (m < N) t.emplace_back(i, ia(m + 1), complexd(-params.xi_a, 0.0));
  }
  for (int n = -N; n <= N; ++n) {
    const int i = ib(n);
    complexd d = diag_b;
    if (std::abs(n) == N) d -= params.xi_b * eik;
    t.emplace_back(i, i, d);
    if (n > -N) t.emplace_back(i, ib(n - 1), complexd(-params.xi_b, 0.0));
    if (n < N) t.emplace_back(i, ib(n + 1), complexd(-params.xi_b, 0.0));
  }
  t.emplace_back(ie, ie, complexd(params.eps_e - energy, 0.0));
  t.emplace_back(ie, ia(0), complexd(params.j_a, 0.0));
  t.emplace_back(ia(0), ie, complexd(params.j_a, 0.0));
  t.emplace_back(ie, ib(0), complexd(params.j_b, 0.0));
  t.emplace_back(ib(0), ie, complexd(params.j_b, 0.0));

  SparseC M(dim, dim);
  M.setFromTriplets(t.begin(), t.end());
  M.makeCompressed();

  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dim);
  rhs(ie) = complexd(-params.j_b, 0.0);

  Eigen::SparseLU<SparseC> lu;
  lu.compute(M);
  if (lu.info() != Eigen::Success) {
    throw SingularSystem("stationary_scatter: sparse LU failed");
  }
  const Eigen::VectorXcd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success) {
    throw SingularSystem("stationary_scatter: solve failed");
  }

  ScatteringSolution sol;
  sol.energy = energy;
  sol.k = wavevector_from_energy(params, energy, Chain::A);
  sol.k_prime = wavevector_from_energy(params, energy, Chain::B);
  sol.s = complexd(1.0, 0.0) + x(ib(0));
  sol.r = x(ib(-1)) * std::exp(complexd(0.0, -kp));
  sol.a_amp = x(ia(0));
  sol.u_e = x(ie);
  sol.t_rate = std::norm(sol.s);
  sol.r_rate = std::norm(sol.r);
  const double v_a = group_velocity(params, energy, Chain::A);
  const double v_b = group_velocity(params, energy, Chain::B);
  sol.leak_rate =
      (v_a > 0.0 && v_b > 0.0) ? 2.0 * std::norm(sol.a_amp) * v_a / v_b : 0.0;
  return sol;
}

namespace {

std::vector<EigenPair> eigenpairs_of(const Eigen::SparseMatrix<double>& h) {
  const Eigen::MatrixXd dense(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
  std::vector<EigenPair> out;
  out.reserve(dense.rows());
  for (int i = 0; i < dense.rows(); ++i) {
    const auto v = es.eigenvectors().col(i);
    const double ipr = v.array().square().square().sum();
    out.push_back(EigenPair{es.eigenvalues()(i), ipr});
  }
  return out;
}

} // namespace

std::vector<EigenPair> diagonalize(const SystemParams& params, int n_half) {
  if (n_half < 50) throw InvalidSize("diagonalize: n_half must be >= 50");
  return eigenpairs_of(build(params, n_half).hamiltonian);
}

std::vector<EigenPair> diagonalize(const SingleChainSystem& system) {
  return eigenpairs_of(system.hamiltonian);
}

namespace {

// Bessel J_k(x) for k = 0..kmax by Miller downward recurrence, normalized
// with J_0 + 2 sum J_2k = 1.
std::vector<double> bessel_j_table(int kmax, double x) {
  const int start = kmax + 20 + static_cast<int>(std::sqrt(40.0 * kmax + 1));
  std::vector<double> j(start + 2, 0.0);
  j[start + 1] = 0.0;
  j[start] = 1e-300;
  for (int k = start; k >= 1; --k) {
    j[k - 1] = (2.0 * k / x) * j[k] - j[k + 1];
    if (std::abs(j[k - 1]) > 1e250) {
      for (int i = k - 1; i <= start + 1; ++i) j[i] *= 1e-250;
    }
  }
  double norm = j[0];
  for (int k = 2; k <= start; k += 2) norm += 2.0 * j[k];
  j.resize(kmax + 1);
  for (double& v : j) v /= norm;
  return j;
}

// exp(-i H t) psi by Chebyshev expansion; exact to machine precision for
// polynomial order past a t + O((a t)^{1/3}).
void chebyshev_propagate(const Eigen::SparseMatrix<double>& h,
                         Eigen::VectorXcd& psi, double t) {
  if (t == 0.0) return;
  // Gershgorin bounds
  const int dim = h.rows();
  Eigen::VectorXd radius = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
  for (int k = 0; k < h.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(h, k); it; ++it) {
      if (it.row() == it.col()) {
        diag(it.row()) = it.value();
      } else {
        radius(it.row()) += std::abs(it.value());
      }
    }
  }
  const double lo = (diag - radius).minCoeff();
  const double hi = (diag + radius).maxCoeff();
  const double a = 0.5 * (hi - lo) * (1.0 + 1e-8);
  const double b = 0.5 * (hi + lo);

  const double at = a * t;
  int kmax = static_cast<int>(at + 40.0 * std::cbrt(at + 1.0) + 60.0);
  const std::vector<double> jk = bessel_j_table(kmax, at);

  // phi_0 = psi, phi_1 = Htilde psi, phi_{k+1} = 2 Htilde phi_k - phi_{k-1}
  const auto apply = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return (h * v - b * v) / a;
  };
  Eigen::VectorXcd phi_prev = psi;
  Eigen::VectorXcd phi = apply(psi);
  Eigen::VectorXcd acc = jk[0] * phi_prev;
  const complexd mi(0.0, -1.0);
  complexd coeff_phase = mi; // (-i)^k
  acc += 2.0 * jk[1] * coeff_phase * phi;
  for (int k = 2; k <= kmax; ++k) {
    Eigen::VectorXcd next = 2.0 * apply(phi) - phi_prev;
    phi_prev.swap(phi);
    phi.swap(next);
    coeff_phase *= mi;
    if (std::abs(jk[k]) > 1e-18) acc += 2.0 * jk[k] * coeff_phase * phi;
  }
  psi = std::exp(mi * b * t) * acc;
}

} // namespace

WavepacketResult wavepacket_transport(const SystemParams& params, double e0,
                                      double sigma_k, int n_half,
                                      double t_final) {
  params.validate();
  if (n_half < 50) throw InvalidSize("wavepacket_transport: n_half >= 50");
  if (!(sigma_k > 0.0)) throw InvalidParams("sigma_k must be positive");
  const Band bb = band(params, Chain::B);
  if (!bb.strictly_contains(e0)) {
    throw PacketLeavesBand("carrier energy outside the chain-B band");
  }
  const double cb = params.omega_b + params.eps_f;
  const double k0 = std::acos((cb - e0) / (2.0 * params.xi_b));
  if (k0 - 4.0 * sigma_k <= 0.0 || k0 + 4.0 * sigma_k >= M_PI) {
    throw PacketLeavesBand(
        "packet wave-number support leaves (0, pi); narrow sigma_k or move "
        "the carrier");
  }

  const LatticeSystem sys = build(params, n_half);
  const int N = n_half;
  const int dim = sys.dimension();
  const int n0 = -static_cast<int>(std::lround(0.45 * N));
  const double v0 = 2.0 * params.xi_b * std::sin(k0);
  if (t_final <= 0.0) {
    t_final = (std::abs(n0) + 0.62 * N) / v0;
  }

  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  for (int n = -N; n <= N; ++n) {
    const double envelope = std::exp(-sigma_k * sigma_k * double(n - n0) *
                                     double(n - n0));
    psi(sys.index_b(n)) = envelope * std::exp(complexd(0.0, k0 * n));
  }
  psi.normalize();

  WavepacketResult res;
  res.t_final = t_final;

  // Average the closed-form rates over the packet's exact energy density
  // (plane-wave projection of the initial envelope, which sits far from
  // the ends and from the intersection).
  {
    const int nk = 4096;
    const int hw = std::min(static_cast<int>(6.0 / (2.0 * sigma_k)) + 25,
                            std::min(N + n0, N - n0));
    double wsum = 0.0;
    for (int i = 1; i < nk; ++i) {
      const double k = M_PI * i / nk;
      complexd amp(0.0, 0.0);
      for (int n = std::max(n0 - hw, -N); n <= std::min(n0 + hw, N); ++n) {
        amp += psi(sys.index_b(n)) * std::exp(complexd(0.0, -k * n));
      }
      const double w = std::norm(amp);
      if (w < 1e-14) continue;
      const double ek = cb - 2.0 * params.xi_b * std::cos(k);
      const ScatteringSolution s = full_solution(params, ek);
      wsum += w;
      res.t_predicted += w * s.t_rate;
      res.r_predicted += w * s.r_rate;
      res.l_predicted += w * s.leak_rate;
    }
    if (wsum <= 0.0) throw PacketLeavesBand("packet has no in-band weight");
    res.t_predicted /= wsum;
    res.r_predicted /= wsum;
    res.l_predicted /= wsum;
  }

  const int checkpoints = 6;
  for (int c = 0; c < checkpoints; ++c) {
    chebyshev_propagate(sys.hamiltonian, psi, t_final / checkpoints);
    res.norm_drift = std::max(res.norm_drift, std::abs(psi.norm() - 1.0));
  }

  for (int d = 0; d < 5; ++d) {
    res.boundary_norm += std::norm(psi(sys.index_a(-N + d))) +
                         std::norm(psi(sys.index_a(N - d))) +
                         std::norm(psi(sys.index_b(-N + d))) +
                         std::norm(psi(sys.index_b(N - d)));
  }
  if (res.boundary_norm > 1e-8) {
    throw BoundaryContamination(
        "wavepacket reached the lattice ends; increase n_half or reduce "
        "t_final");
  }

  for (int n = 1; n <= N; ++n) res.t_wp += std::norm(psi(sys.index_b(n)));
  for (int n = -N; n <= -1; ++n) res.r_wp += std::norm(psi(sys.index_b(n)));
  for (int m = -N; m <= N; ++m) res.l_wp += std::norm(psi(sys.index_a(m)));
  res.l_wp +=
      std::norm(psi(sys.index_b(0))) + std::norm(psi(sys.index_atom()));
  return res;
}

} // namespace cra
