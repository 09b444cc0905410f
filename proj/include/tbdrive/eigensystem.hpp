// Instantaneous eigensystem of the gauge-transformed hopping
// G (e^{-i phi} K + e^{i phi} K^dag) on a Dirichlet chain.
//
//   omega_m = m pi / (N + 1),  lambda_m = 2 G cos(omega_m),
//   |lambda_m, t> = d_m sum_n e^{i n phi(t)} sin(n omega_m) |n>
//
// The eigenvalues never depend on the drive; only the phases do.
#ifndef TBDRIVE_EIGENSYSTEM_HPP
#define TBDRIVE_EIGENSYSTEM_HPP

#include "tbdrive/lattice.hpp"

#include <numbers>

namespace tbdrive {

template <typename Scalar = double>
struct TiltedEigensystem {
  int n_sites = 0;
  RealVector<Scalar> omegas;
  RealVector<Scalar> eigenvalues;
  RealVector<Scalar> norm_coeffs;
  /// sine_table(n-1, m-1) = sin(n omega_m)
  RealMatrix<Scalar> sine_table;

  /// Columns are the phase-free eigenvectors d_m sin(n omega_m).
  RealMatrix<Scalar> basis() const { return sine_table * norm_coeffs.asDiagonal(); }
};

template <typename Scalar = double>
TiltedEigensystem<Scalar> tilted_eigensystem(const LatticeSpec& spec) {
  if (spec.boundary != Boundary::Dirichlet) {
    throw std::invalid_argument("tilted eigensystem is defined for Dirichlet chains");
  }
  spec.validate();
  const int n = spec.n_sites;
  const Scalar pi = std::numbers::pi_v<Scalar>;
  TiltedEigensystem<Scalar> eig;
  eig.n_sites = n;
  eig.omegas.resize(n);
  eig.eigenvalues.resize(n);
  eig.norm_coeffs.resize(n);
  eig.sine_table.resize(n, n);
  for (int m = 1; m <= n; ++m) {
    const Scalar w = Scalar(m) * pi / Scalar(n + 1);
    eig.omegas(m - 1) = w;
    eig.eigenvalues(m - 1) = Scalar(2) * Scalar(spec.coupling) * std::cos(w);
    for (int site = 1; site <= n; ++site) eig.sine_table(site - 1, m - 1) = std::sin(Scalar(site) * w);
    eig.norm_coeffs(m - 1) = Scalar(1) / eig.sine_table.col(m - 1).norm();
  }
  return eig;
}

/// A_{ll'} = sum_n n sin(n w_l) sin(n w_l') / sqrt(sum sin^2(n w_l) sum sin^2(n w_l')).
template <typename Scalar>
RealMatrix<Scalar> a_matrix(const TiltedEigensystem<Scalar>& eig) {
  const int n = eig.n_sites;
  RealVector<Scalar> sq(n);
  for (int l = 0; l < n; ++l) sq(l) = eig.sine_table.col(l).squaredNorm();
  RealMatrix<Scalar> a(n, n);
  // upper triangle mirrored, so the symmetry is exact in floating point
  for (int l = 0; l < n; ++l) {
    for (int lp = l; lp < n; ++lp) {
      Scalar acc(0);
      for (int site = 1; site <= n; ++site) {
        acc += Scalar(site) * eig.sine_table(site - 1, l) * eig.sine_table(site - 1, lp);
      }
      a(l, lp) = acc / std::sqrt(sq(l) * sq(lp));
      a(lp, l) = a(l, lp);
    }
  }
  return a;
}

/// sum_l C_l |lambda_l, phi>; the result still carries the e^{i n phi} phases.
template <typename Scalar>
ComplexVector<Scalar> reconstruct_state(const TiltedEigensystem<Scalar>& eig, const ComplexVector<Scalar>& coeffs,
                                        Scalar phi_value) {
  if (coeffs.size() != eig.n_sites) throw std::invalid_argument("reconstruct_state: coefficient size mismatch");
  ComplexVector<Scalar> psi = eig.basis().template cast<std::complex<Scalar>>() * coeffs;
  for (int site = 1; site <= eig.n_sites; ++site) psi(site - 1) *= std::polar(Scalar(1), Scalar(site) * phi_value);
  return psi;
}

/// Multiplies by e^{-i phi N}, returning from the tilted frame to the lab frame.
template <typename Scalar>
ComplexVector<Scalar> apply_gauge(const ComplexVector<Scalar>& psi, Scalar phi_value, int basis_offset = 1) {
  ComplexVector<Scalar> out = psi;
  for (Eigen::Index r = 0; r < out.size(); ++r) {
    out(r) *= std::polar(Scalar(1), -Scalar(basis_offset + r) * phi_value);
  }
  return out;
}

/// e^{i phi N} X e^{-i phi N}
template <typename Scalar>
Operator<Scalar> conjugate_by_gauge(const Operator<Scalar>& x, Scalar phi_value) {
  ComplexVector<Scalar> phase(x.dim());
  for (Eigen::Index r = 0; r < phase.size(); ++r) {
    phase(r) = std::polar(Scalar(1), Scalar(x.basis_offset + r) * phi_value);
  }
  return {phase.asDiagonal() * x.entries * phase.conjugate().asDiagonal(), x.basis_offset};
}

}  // namespace tbdrive

#endif  // TBDRIVE_EIGENSYSTEM_HPP
