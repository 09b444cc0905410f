// Wannier-basis operators for the single-band tight-binding chain.
//
// H(t) = G (K + K^dag) + F(t) N on three kinds of basis:
//   Dirichlet       sites 1..N, open chain
//   Periodic        sites 1..N, |N+1> == |1>
//   InfiniteWindow  sites -M..M, open edges (finite truncation of the
//                   infinite chain)
//
// Units: hbar = 1 everywhere.
#ifndef TBDRIVE_LATTICE_HPP
#define TBDRIVE_LATTICE_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tbdrive {

enum class Boundary { Dirichlet, Periodic, InfiniteWindow };

inline std::string_view to_string(Boundary b) {
  switch (b) {
    case Boundary::Dirichlet: return "dirichlet";
    case Boundary::Periodic: return "periodic";
    case Boundary::InfiniteWindow: return "infinite";
  }
  return "unknown";
}

inline Boundary parse_boundary(std::string_view text) {
  if (text == "dirichlet") return Boundary::Dirichlet;
  if (text == "periodic") return Boundary::Periodic;
  if (text == "infinite" || text == "infinite_window") return Boundary::InfiniteWindow;
  throw std::invalid_argument("unknown boundary '" + std::string(text) + "'");
}

template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using RealMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Chain size, boundary condition and hopping amplitude G.
///
/// For InfiniteWindow the basis is -window_halfwidth..window_halfwidth and
/// n_sites is ignored.
struct LatticeSpec {
  int n_sites = 2;
  Boundary boundary = Boundary::Dirichlet;
  int window_halfwidth = 0;
  double coupling = 1.0;

  static LatticeSpec dirichlet(int n, double g) { return {n, Boundary::Dirichlet, 0, g}; }
  static LatticeSpec periodic(int n, double g) { return {n, Boundary::Periodic, 0, g}; }
  static LatticeSpec infinite_window(int m, double g) {
    return {2 * m + 1, Boundary::InfiniteWindow, m, g};
  }

  int dim() const { return boundary == Boundary::InfiniteWindow ? 2 * window_halfwidth + 1 : n_sites; }
  /// Site label of the first basis vector.
  int basis_offset() const { return boundary == Boundary::InfiniteWindow ? -window_halfwidth : 1; }
  int site_of(Eigen::Index row) const { return basis_offset() + static_cast<int>(row); }
  Eigen::Index row_of(int site) const { return site - basis_offset(); }
  bool contains(int site) const { return site >= basis_offset() && site < basis_offset() + dim(); }

  void validate() const {
    if (boundary == Boundary::InfiniteWindow) {
      if (window_halfwidth < 1) throw std::invalid_argument("window_halfwidth must be >= 1");
    } else if (n_sites < 2) {
      throw std::invalid_argument("n_sites must be >= 2, got " + std::to_string(n_sites));
    }
    if (!std::isfinite(coupling)) throw std::invalid_argument("coupling must be finite");
  }
};

/// Dense operator on the Wannier basis of one LatticeSpec.
template <typename Scalar = double>
struct Operator {
  ComplexMatrix<Scalar> entries;
  int basis_offset = 1;

  Eigen::Index dim() const { return entries.rows(); }

  /// Matrix element <i|A|j> by site label.
  std::complex<Scalar> at(int row_site, int col_site) const {
    return entries(row_site - basis_offset, col_site - basis_offset);
  }

  bool is_hermitian(Scalar tol = Scalar(1e-12)) const {
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff() <= tol;
  }
};

template <typename Scalar>
Operator<Scalar> operator*(const Operator<Scalar>& a, const Operator<Scalar>& b) {
  return {a.entries * b.entries, a.basis_offset};
}
template <typename Scalar>
Operator<Scalar> operator+(const Operator<Scalar>& a, const Operator<Scalar>& b) {
  return {a.entries + b.entries, a.basis_offset};
}
template <typename Scalar>
Operator<Scalar> operator-(const Operator<Scalar>& a, const Operator<Scalar>& b) {
  return {a.entries - b.entries, a.basis_offset};
}
template <typename Scalar>
Operator<Scalar> operator*(std::complex<Scalar> s, const Operator<Scalar>& a) {
  return {s * a.entries, a.basis_offset};
}
template <typename Scalar>
Operator<Scalar> operator*(Scalar s, const Operator<Scalar>& a) {
  return {s * a.entries, a.basis_offset};
}

/// Largest entry modulus; the residual measure for every algebra check.
template <typename Derived>
auto max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? typename Derived::RealScalar(0) : m.cwiseAbs().maxCoeff();
}

template <typename Scalar>
Scalar max_abs(const Operator<Scalar>& a) {
  return max_abs(a.entries);
}

template <typename Scalar = double>
Operator<Scalar> zero_operator(const LatticeSpec& spec) {
  return {ComplexMatrix<Scalar>::Zero(spec.dim(), spec.dim()), spec.basis_offset()};
}

template <typename Scalar = double>
Operator<Scalar> identity_operator(const LatticeSpec& spec) {
  return {ComplexMatrix<Scalar>::Identity(spec.dim(), spec.dim()), spec.basis_offset()};
}

/// K = sum_j |j><j+1|.
template <typename Scalar = double>
Operator<Scalar> build_ladder_down(const LatticeSpec& spec) {
  spec.validate();
  auto k = zero_operator<Scalar>(spec);
  const Eigen::Index n = spec.dim();
  for (Eigen::Index r = 0; r + 1 < n; ++r) k.entries(r, r + 1) = Scalar(1);
  if (spec.boundary == Boundary::Periodic) k.entries(n - 1, 0) += Scalar(1);
  return k;
}

/// K^dag = sum_j |j+1><j|, built on its own rather than by adjoint.
template <typename Scalar = double>
Operator<Scalar> build_ladder_up(const LatticeSpec& spec) {
  spec.validate();
  auto k = zero_operator<Scalar>(spec);
  const Eigen::Index n = spec.dim();
  for (Eigen::Index c = 0; c + 1 < n; ++c) k.entries(c + 1, c) = Scalar(1);
  if (spec.boundary == Boundary::Periodic) k.entries(0, n - 1) += Scalar(1);
  return k;
}

/// Site labels of the basis, e.g. (1..N) or (-M..M).
template <typename Scalar = double>
RealVector<Scalar> site_labels(const LatticeSpec& spec) {
  RealVector<Scalar> v(spec.dim());
  for (Eigen::Index r = 0; r < v.size(); ++r) v(r) = Scalar(spec.site_of(r));
  return v;
}

/// N = sum_j j |j><j|.
template <typename Scalar = double>
Operator<Scalar> build_number(const LatticeSpec& spec) {
  spec.validate();
  return {site_labels<Scalar>(spec).template cast<std::complex<Scalar>>().asDiagonal(), spec.basis_offset()};
}

/// G (K + K^dag), the drive-independent part of H.
template <typename Scalar = double>
Operator<Scalar> build_hopping(const LatticeSpec& spec) {
  return Scalar(spec.coupling) * (build_ladder_down<Scalar>(spec) + build_ladder_up<Scalar>(spec));
}

/// H = G (K + K^dag) + F N at one instant.
template <typename Scalar = double>
Operator<Scalar> build_hamiltonian(const LatticeSpec& spec, Scalar force_value) {
  auto h = build_hopping<Scalar>(spec);
  h.entries.diagonal() += (force_value * site_labels<Scalar>(spec)).template cast<std::complex<Scalar>>();
  return h;
}

template <typename Scalar>
Operator<Scalar> commutator(const Operator<Scalar>& a, const Operator<Scalar>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("commutator: dimension mismatch");
  return {a.entries * b.entries - b.entries * a.entries, a.basis_offset};
}

template <typename Scalar>
Operator<Scalar> anticommutator(const Operator<Scalar>& a, const Operator<Scalar>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("anticommutator: dimension mismatch");
  return {a.entries * b.entries + b.entries * a.entries, a.basis_offset};
}

/// |site><site|
template <typename Scalar = double>
Operator<Scalar> projector(const LatticeSpec& spec, int site) {
  auto p = zero_operator<Scalar>(spec);
  p.entries(spec.row_of(site), spec.row_of(site)) = Scalar(1);
  return p;
}

template <typename Scalar>
Operator<Scalar> power(const Operator<Scalar>& a, int exponent) {
  Operator<Scalar> out{ComplexMatrix<Scalar>::Identity(a.dim(), a.dim()), a.basis_offset};
  for (int i = 0; i < exponent; ++i) out.entries = out.entries * a.entries;
  return out;
}

using StateVector = ComplexVector<double>;

/// Wannier state |site>.
inline StateVector site_state(const LatticeSpec& spec, int site) {
  if (!spec.contains(site)) {
    throw std::invalid_argument("site " + std::to_string(site) + " outside the lattice basis");
  }
  StateVector psi = StateVector::Zero(spec.dim());
  psi(spec.row_of(site)) = 1.0;
  return psi;
}

inline void require_normalized(const StateVector& psi, double tol = 1e-10) {
  if (std::abs(psi.norm() - 1.0) > tol) {
    throw std::invalid_argument("initial state is not normalized (norm = " + std::to_string(psi.norm()) + ")");
  }
}

/// Total probability on the two outermost sites; a leakage indicator for
/// InfiniteWindow runs.
inline double edge_weight(const StateVector& psi) {
  if (psi.size() == 0) return 0.0;
  const double first = std::norm(psi(0));
  return psi.size() == 1 ? first : first + std::norm(psi(psi.size() - 1));
}

}  // namespace tbdrive

#endif  // TBDRIVE_LATTICE_HPP
