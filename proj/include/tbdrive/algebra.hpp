// Polynomial deformation algebra of the Dirichlet and periodic chains.
//
// All polynomials act on the number operator and are stored in product
// form, value(n) = constant + scale * (lin0 + lin1 n) * prod_r (n - r),
// which is exact on the integer diagonal. Coefficient lists are expanded
// from the same product for degree bookkeeping.
#ifndef TBDRIVE_ALGEBRA_HPP
#define TBDRIVE_ALGEBRA_HPP

#include "tbdrive/lattice.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace tbdrive {

enum class PolyKind { F, G, H, Phi };

std::string_view to_string(PolyKind kind);

namespace detail {

template <typename Scalar>
Scalar factorial(int n) {
  if (n < 0 || n > 170) throw std::invalid_argument("factorial argument out of range");
  Scalar out(1);
  for (int i = 2; i <= n; ++i) out *= Scalar(i);
  return out;
}

inline void require_chain_size(int n_sites) {
  if (n_sites < 2) throw std::invalid_argument("deformation polynomials need N >= 2, got " + std::to_string(n_sites));
  if (n_sites > 170) throw std::invalid_argument("deformation polynomials limited to N <= 170 (factorial overflow)");
}

}  // namespace detail

template <typename Scalar = double>
class NumberPolynomial {
 public:
  NumberPolynomial(PolyKind kind, int n_sites, Scalar constant, Scalar scale, Scalar lin0, Scalar lin1,
                   std::vector<int> roots)
      : kind_(kind), n_sites_(n_sites), constant_(constant), scale_(scale), lin0_(lin0), lin1_(lin1),
        roots_(std::move(roots)) {}

  PolyKind kind() const { return kind_; }
  int n_sites() const { return n_sites_; }

  Scalar operator()(Scalar n) const {
    Scalar prod = scale_ * (lin0_ + lin1_ * n);
    for (int r : roots_) prod *= (n - Scalar(r));
    return constant_ + prod;
  }

  /// Ascending power coefficients c_0..c_d.
  RealVector<Scalar> coefficients() const {
    RealVector<Scalar> c(roots_.size() + 2);
    c.setZero();
    c(0) = lin0_;
    c(1) = lin1_;
    for (int r : roots_) {
      // multiply by (n - r)
      for (Eigen::Index k = c.size() - 1; k > 0; --k) c(k) = c(k - 1) - Scalar(r) * c(k);
      c(0) = -Scalar(r) * c(0);
    }
    c *= scale_;
    c(0) += constant_;
    return c.head(degree() + 1);
  }

  int degree() const {
    const int base = static_cast<int>(roots_.size());
    if (scale_ == Scalar(0)) return 0;
    return lin1_ != Scalar(0) ? base + 1 : base;
  }

  /// Diagonal operator p(N + shift) on the given basis.
  Operator<Scalar> on(const LatticeSpec& spec, int shift = 0) const {
    auto labels = site_labels<Scalar>(spec);
    RealVector<Scalar> d(labels.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = (*this)(labels(i) + Scalar(shift));
    return {d.template cast<std::complex<Scalar>>().asDiagonal(), spec.basis_offset()};
  }

  /// 1 - p, the structure function built from g.
  NumberPolynomial one_minus(PolyKind kind) const {
    return {kind, n_sites_, Scalar(1) - constant_, -scale_, lin0_, lin1_, roots_};
  }

 private:
  PolyKind kind_;
  int n_sites_;
  Scalar constant_;
  Scalar scale_;
  Scalar lin0_;
  Scalar lin1_;
  std::vector<int> roots_;
};

namespace detail {
inline std::vector<int> root_range(int first, int last) {
  std::vector<int> r;
  for (int j = first; j <= last; ++j) r.push_back(j);
  return r;
}
}  // namespace detail

/// f(N) = |N><N| - |1><1| as the lowest-degree polynomial in N.
template <typename Scalar = double>
NumberPolynomial<Scalar> f_polynomial(int n_sites) {
  detail::require_chain_size(n_sites);
  const int n = n_sites;
  if (n == 2) return {PolyKind::F, n, Scalar(0), Scalar(1), Scalar(-3), Scalar(2), {}};
  if (n % 2 == 1) {
    return {PolyKind::F, n, Scalar(0), Scalar(1) / detail::factorial<Scalar>(n - 2), Scalar(1), Scalar(0),
            detail::root_range(2, n - 1)};
  }
  return {PolyKind::F, n, Scalar(0), Scalar(1) / detail::factorial<Scalar>(n - 1), Scalar(-(n + 1)), Scalar(2),
          detail::root_range(2, n - 1)};
}

/// g with f(n) = g(n+1) - g(n); the additive constant fixes g(1) = 1.
template <typename Scalar = double>
NumberPolynomial<Scalar> g_polynomial(int n_sites) {
  detail::require_chain_size(n_sites);
  const int n = n_sites;
  if (n % 2 == 1) {
    return {PolyKind::G, n, Scalar(0), Scalar(1) / detail::factorial<Scalar>(n - 1), Scalar(1), Scalar(0),
            detail::root_range(2, n)};
  }
  return {PolyKind::G, n, Scalar(0), Scalar(1) / detail::factorial<Scalar>(n), Scalar(-(n + 2)), Scalar(2),
          detail::root_range(2, n)};
}

/// Periodic-chain deformation h(N) = N |1><1|.
template <typename Scalar = double>
NumberPolynomial<Scalar> h_polynomial(int n_sites) {
  detail::require_chain_size(n_sites);
  const int n = n_sites;
  const Scalar sign = (n - 1) % 2 == 0 ? Scalar(1) : Scalar(-1);
  return {PolyKind::H, n, Scalar(0), Scalar(n) * sign / detail::factorial<Scalar>(n - 1), Scalar(1), Scalar(0),
          detail::root_range(2, n)};
}

/// phi(N) = 1 - g(N) = K^dag K.
template <typename Scalar = double>
NumberPolynomial<Scalar> phi_polynomial(int n_sites) {
  return g_polynomial<Scalar>(n_sites).one_minus(PolyKind::Phi);
}

template <typename Scalar = double>
struct ParafermionSet {
  Operator<Scalar> b_down;
  Operator<Scalar> b_up;
  Operator<Scalar> m_number;
  int order_p = 1;
};

/// sqrt(N (N_sites - N)), the deformation factor.
template <typename Scalar = double>
Operator<Scalar> deformation_factor(const LatticeSpec& spec) {
  auto labels = site_labels<Scalar>(spec);
  const Scalar n_sites(spec.n_sites);
  RealVector<Scalar> d = (labels.array() * (n_sites - labels.array())).max(Scalar(0)).sqrt();
  return {d.template cast<std::complex<Scalar>>().asDiagonal(), spec.basis_offset()};
}

/// B = sqrt(N(N_s - N)) K, B^dag = K^dag sqrt(N(N_s - N)), M = N - 1, p = N_s - 1.
template <typename Scalar = double>
ParafermionSet<Scalar> parafermion_map(const LatticeSpec& spec) {
  if (spec.boundary != Boundary::Dirichlet) throw std::invalid_argument("parafermion_map requires a Dirichlet chain");
  spec.validate();
  const auto factor = deformation_factor<Scalar>(spec);
  ParafermionSet<Scalar> set;
  set.b_down = factor * build_ladder_down<Scalar>(spec);
  set.b_up = build_ladder_up<Scalar>(spec) * factor;
  set.m_number = build_number<Scalar>(spec) - identity_operator<Scalar>(spec);
  set.order_p = spec.n_sites - 1;
  return set;
}

/// D_eps = sqrt(N (N_s + eps - N)); invertible for every eps > 0.
template <typename Scalar = double>
Operator<Scalar> regularized_deformation(int n_sites, Scalar epsilon) {
  if (!(epsilon > Scalar(0))) throw std::invalid_argument("epsilon must be positive");
  const auto spec = LatticeSpec::dirichlet(n_sites, 1.0);
  spec.validate();
  auto labels = site_labels<Scalar>(spec);
  RealVector<Scalar> d = (labels.array() * (Scalar(n_sites) + epsilon - labels.array())).sqrt();
  return {d.template cast<std::complex<Scalar>>().asDiagonal(), spec.basis_offset()};
}

/// G (D^-1 B + B^dag D^-1) + F (M + 1), which tends to H as eps -> 0.
template <typename Scalar = double>
Operator<Scalar> regularized_hamiltonian(const LatticeSpec& spec, Scalar force_value, Scalar epsilon) {
  const auto pf = parafermion_map<Scalar>(spec);
  const auto d = regularized_deformation<Scalar>(spec.n_sites, epsilon);
  const ComplexVector<Scalar> inv = d.entries.diagonal().cwiseInverse();
  Operator<Scalar> h{Scalar(spec.coupling) * (inv.asDiagonal() * pf.b_down.entries + pf.b_up.entries * inv.asDiagonal()),
                     spec.basis_offset()};
  h.entries += force_value * (pf.m_number.entries + ComplexMatrix<Scalar>::Identity(h.dim(), h.dim()));
  return h;
}

/// su(2) generators realised by the N = 2 and N = 3 Dirichlet chains.
///
/// H = coupling_scale * G (J+ + J-) + F (J0 + number_shift).
template <typename Scalar = double>
struct Su2Generators {
  Operator<Scalar> j_plus;
  Operator<Scalar> j_minus;
  Operator<Scalar> j_zero;
  Scalar coupling_scale;  // 1 for N=2, 1/sqrt(2) for N=3
  Scalar number_shift;    // N = J0 + number_shift
};

template <typename Scalar = double>
Su2Generators<Scalar> su2_generators(int n_sites) {
  if (n_sites != 2 && n_sites != 3) {
    throw std::invalid_argument("su(2) realisation exists only for N = 2 or 3, got " + std::to_string(n_sites));
  }
  const auto spec = LatticeSpec::dirichlet(n_sites, 1.0);
  const auto k = build_ladder_down<Scalar>(spec);
  const auto kd = build_ladder_up<Scalar>(spec);
  const auto num = build_number<Scalar>(spec);
  const auto id = identity_operator<Scalar>(spec);
  if (n_sites == 2) {
    // [K^dag, K] = 2N - 3 forces J0 = N - 3/2.
    return {kd, k, num - Scalar(1.5) * id, Scalar(1), Scalar(1.5)};
  }
  const Scalar r2 = std::sqrt(Scalar(2));
  return {r2 * kd, r2 * k, num - Scalar(2) * id, Scalar(1) / r2, Scalar(2)};
}

struct IdentityCheck {
  std::string identity;
  int n_sites = 0;
  Boundary boundary = Boundary::Dirichlet;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  /// Informational rows are reported but do not affect all_passed().
  bool informational = false;
  std::string note;
};

struct CertificationReport {
  std::vector<IdentityCheck> checks;

  bool all_passed() const;
  double max_residual() const;
  void append(const CertificationReport& other);
};

std::string to_table(const CertificationReport& report);
std::string to_csv(const CertificationReport& report);

inline constexpr double kExactTolerance = 0.0;
inline constexpr double kPolynomialTolerance = 1e-9;

namespace detail {

template <typename Scalar>
void record(CertificationReport& report, const LatticeSpec& spec, std::string name, Scalar residual,
            double tolerance, bool informational = false, std::string note = {}) {
  IdentityCheck c;
  c.identity = std::move(name);
  c.n_sites = spec.dim();
  c.boundary = spec.boundary;
  c.residual = static_cast<double>(residual);
  c.tolerance = tolerance;
  c.passed = std::isfinite(c.residual) && c.residual <= tolerance;
  c.informational = informational;
  c.note = std::move(note);
  report.checks.push_back(std::move(c));
}

template <typename Scalar>
void certify_dirichlet(const LatticeSpec& spec, CertificationReport& rep) {
  const int n = spec.n_sites;
  const auto k = build_ladder_down<Scalar>(spec);
  const auto kd = build_ladder_up<Scalar>(spec);
  const auto num = build_number<Scalar>(spec);
  const auto id = identity_operator<Scalar>(spec);
  const auto boundary_diff = projector<Scalar>(spec, n) - projector<Scalar>(spec, 1);

  record(rep, spec, "[N,K] = -K", max_abs(commutator(num, k) + k), kExactTolerance);
  record(rep, spec, "[N,K+] = K+", max_abs(commutator(num, kd) - kd), kExactTolerance);
  record(rep, spec, "[K+,K] = |N><N| - |1><1|", max_abs(commutator(kd, k) - boundary_diff), kExactTolerance);
  record(rep, spec, "K^N = 0", max_abs(power(k, n)), kExactTolerance);
  record(rep, spec, "K+^N = 0", max_abs(power(kd, n)), kExactTolerance);
  // nilpotency order is exactly N
  record(rep, spec, "K^(N-1) != 0", Scalar(1) - max_abs(power(k, n - 1)), kExactTolerance);

  if (n <= 170) {
    const auto f = f_polynomial<Scalar>(n);
    const auto g = g_polynomial<Scalar>(n);
    const auto phi = phi_polynomial<Scalar>(n);
    record(rep, spec, "f(N) = |N><N| - |1><1|", max_abs(f.on(spec) - boundary_diff), kPolynomialTolerance);
    record(rep, spec, "[K+,K] = f(N)", max_abs(commutator(kd, k) - f.on(spec)), kPolynomialTolerance);

    Scalar diff_res(0);
    for (int m = 1; m <= n; ++m) diff_res = std::max(diff_res, std::abs(f(Scalar(m)) - (g(Scalar(m + 1)) - g(Scalar(m)))));
    record(rep, spec, "f(n) = g(n+1) - g(n), n=1..N", diff_res, kPolynomialTolerance);

    // independent route: solve the difference equation from g(1) = 1
    Scalar solve_res(0);
    Scalar g_solved(1);
    for (int m = 1; m <= n + 1; ++m) {
      solve_res = std::max(solve_res, std::abs(g(Scalar(m)) - g_solved));
      g_solved += f(Scalar(m));
    }
    record(rep, spec, "g matches difference-equation solve", solve_res, kPolynomialTolerance, false,
           n % 2 == 0 ? "even-N closed form" : "odd-N closed form");

    const auto kdk = kd * k;
    const auto kkd = k * kd;
    record(rep, spec, "K+K = phi(N) = 1 - g(N)", max_abs(kdk - phi.on(spec)), kPolynomialTolerance);
    record(rep, spec, "KK+ = phi(N+1) = 1 - g(N+1)", max_abs(kkd - phi.on(spec, 1)), kPolynomialTolerance);
    record(rep, spec, "[K+K, KK+] = 0", max_abs(commutator(kdk, kkd)), kExactTolerance);
    record(rep, spec, "phi(1) = phi(N+1) = 0",
           std::max(std::abs(phi(Scalar(1))), std::abs(phi(Scalar(n + 1)))), kPolynomialTolerance);
    const int expected_degree = n % 2 == 1 ? n - 2 : n - 1;
    record(rep, spec, "deg f = " + std::to_string(expected_degree), Scalar(std::abs(f.degree() - expected_degree)),
           kExactTolerance);
  }

  // parafermionic closure with p = N - 1
  const auto pf = parafermion_map<Scalar>(spec);
  const Scalar p(pf.order_p);
  const auto& b = pf.b_down;
  const auto& bd = pf.b_up;
  const auto& m = pf.m_number;
  record(rep, spec, "B+ = adjoint(B)", max_abs(bd.entries - b.entries.adjoint()), 1e-12);
  record(rep, spec, "[M,B] = -B", max_abs(commutator(m, b) + b), kPolynomialTolerance);
  record(rep, spec, "[M,B+] = B+", max_abs(commutator(m, bd) - bd), kPolynomialTolerance);
  record(rep, spec, "B^(p+1) = 0", max_abs(power(b, pf.order_p + 1)), kPolynomialTolerance);
  record(rep, spec, "B+^(p+1) = 0", max_abs(power(bd, pf.order_p + 1)), kPolynomialTolerance);
  record(rep, spec, "B+B = M(p+1-M)", max_abs(bd * b - m * ((p + Scalar(1)) * id - m)), kPolynomialTolerance);
  record(rep, spec, "BB+ = (M+1)(p-M)", max_abs(b * bd - (m + id) * (p * id - m)), kPolynomialTolerance);
  record(rep, spec, "M = ([B+,B] + p)/2", max_abs(m - Scalar(0.5) * (commutator(bd, b) + p * id)),
         kPolynomialTolerance);

  if (n == 2) {
    record(rep, spec, "{K,K+} = I", max_abs(anticommutator(k, kd) - id), kExactTolerance);
    record(rep, spec, "[K+,K] = 2N - 3", max_abs(commutator(kd, k) - (Scalar(2) * num - Scalar(3) * id)),
           kExactTolerance);
    record(rep, spec, "N = 1 + K+K", max_abs(num - id - kd * k), kExactTolerance);
  }
  if (n == 3) {
    record(rep, spec, "[K+,K] = N - 2", max_abs(commutator(kd, k) - (num - Scalar(2) * id)), kExactTolerance);
    record(rep, spec, "N = 1 + K+K + K+^2 K^2", max_abs(num - id - kd * k - power(kd, 2) * power(k, 2)),
           kExactTolerance);
  }
  if (n == 2 || n == 3) {
    const auto su = su2_generators<Scalar>(n);
    record(rep, spec, "su2 [J0,J+] = J+", max_abs(commutator(su.j_zero, su.j_plus) - su.j_plus), 1e-12);
    record(rep, spec, "su2 [J0,J-] = -J-", max_abs(commutator(su.j_zero, su.j_minus) + su.j_minus), 1e-12);
    record(rep, spec, "su2 [J+,J-] = 2J0", max_abs(commutator(su.j_plus, su.j_minus) - Scalar(2) * su.j_zero), 1e-12);
    const Scalar j = Scalar(n - 1) / Scalar(2);
    const auto casimir = su.j_zero * su.j_zero +
                         Scalar(0.5) * (su.j_plus * su.j_minus + su.j_minus * su.j_plus);
    record(rep, spec, "su2 Casimir = j(j+1) I", max_abs(casimir - (j * (j + Scalar(1))) * id), 1e-12);
    const auto h = build_hamiltonian<Scalar>(spec, Scalar(0.7));
    const auto h_su2 = Scalar(spec.coupling) * su.coupling_scale * (su.j_plus + su.j_minus) +
                       Scalar(0.7) * (su.j_zero + su.number_shift * id);
    record(rep, spec, "H = cG(J+ + J-) + F(J0 + s)", max_abs(h - h_su2), 1e-12);
    record(rep, spec, "[H, Casimir] = 0", max_abs(commutator(h, casimir)), 1e-12);
    if (n == 2) {
      const auto alt = num + Scalar(1.5) * id;
      record(rep, spec, "alt sign: J0 = N + 3/2 closes [J+,J-] = 2J0",
             max_abs(commutator(su.j_plus, su.j_minus) - Scalar(2) * alt), 1e-12, true,
             "fails: [K+,K] = 2N - 3 forces J0 = N - 3/2");
    } else {
      const auto alt_h = Scalar(spec.coupling) * su.coupling_scale * (su.j_plus + su.j_minus) +
                         Scalar(0.7) * (su.j_zero - Scalar(2) * id);
      record(rep, spec, "alt sign: H = cG(J+ + J-) + F(J0 - 2)", max_abs(h - alt_h), 1e-12, true,
             "fails: J0 = N - 2 requires F(J0 + 2)");
    }
  }
}

template <typename Scalar>
void certify_periodic(const LatticeSpec& spec, CertificationReport& rep) {
  const int n = spec.n_sites;
  const auto k = build_ladder_down<Scalar>(spec);
  const auto kd = build_ladder_up<Scalar>(spec);
  const auto num = build_number<Scalar>(spec);
  const auto id = identity_operator<Scalar>(spec);
  const auto h = h_polynomial<Scalar>(n).on(spec);
  const auto one_minus_h = id - h;

  record(rep, spec, "h(N) = N|1><1|", max_abs(h - Scalar(n) * projector<Scalar>(spec, 1)), kPolynomialTolerance);
  record(rep, spec, "[N,K] = -K(1 - h(N))", max_abs(commutator(num, k) + k * one_minus_h), kPolynomialTolerance);
  record(rep, spec, "[N,K+] = (1 - h(N))K+", max_abs(commutator(num, kd) - one_minus_h * kd), kPolynomialTolerance);
  record(rep, spec, "[K,K+] = 0", max_abs(commutator(k, kd)), kExactTolerance);
  record(rep, spec, "[N,K] = -K(1 - N|1><1|)",
         max_abs(commutator(num, k) + k * (id - Scalar(n) * projector<Scalar>(spec, 1))), kExactTolerance);
}

template <typename Scalar>
void certify_window(const LatticeSpec& spec, CertificationReport& rep) {
  const int m = spec.window_halfwidth;
  const auto k = build_ladder_down<Scalar>(spec);
  const auto kd = build_ladder_up<Scalar>(spec);
  const auto num = build_number<Scalar>(spec);
  record(rep, spec, "[N,K] = -K", max_abs(commutator(num, k) + k), kExactTolerance);
  record(rep, spec, "[N,K+] = K+", max_abs(commutator(num, kd) - kd), kExactTolerance);
  const auto c = commutator(kd, k);
  const Eigen::Index dim = spec.dim();
  const Scalar interior = dim > 2 ? max_abs(c.entries.block(1, 0, dim - 2, dim)) : Scalar(0);
  record(rep, spec, "[K+,K] = 0 on interior rows", interior, kExactTolerance);
  record(rep, spec, "[K+,K] = |M><M| - |-M><-M|",
         max_abs(c - (projector<Scalar>(spec, m) - projector<Scalar>(spec, -m))), kExactTolerance, false,
         "window truncation edge term");
}

}  // namespace detail

/// Runs every identity that applies to the boundary condition.
template <typename Scalar = double>
CertificationReport certify_algebra(const LatticeSpec& spec) {
  spec.validate();
  CertificationReport rep;
  switch (spec.boundary) {
    case Boundary::Dirichlet: detail::certify_dirichlet<Scalar>(spec, rep); break;
    case Boundary::Periodic: detail::certify_periodic<Scalar>(spec, rep); break;
    case Boundary::InfiniteWindow: detail::certify_window<Scalar>(spec, rep); break;
  }
  return rep;
}

}  // namespace tbdrive

#endif  // TBDRIVE_ALGEBRA_HPP
