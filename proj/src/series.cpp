#include "tbdrive/propagators.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace tbdrive {

namespace {
constexpr std::complex<double> kI(0.0, 1.0);

Eigen::VectorXcd phases(const Eigen::VectorXd& freqs, double angle) {
  Eigen::VectorXcd out(freqs.size());
  for (Eigen::Index i = 0; i < freqs.size(); ++i) out(i) = std::polar(1.0, angle * freqs(i));
  return out;
}
}  // namespace

void require_series_applicable(const LatticeSpec& spec) {
  if (spec.boundary != Boundary::Dirichlet) {
    throw InapplicableMethod("series propagator requires a Dirichlet chain (got " + std::string(to_string(spec.boundary)) + ")");
  }
  spec.validate();
  if (spec.n_sites % 2 == 1) {
    const int mid = (spec.n_sites + 1) / 2;
    throw InapplicableMethod("λ̂ singular: cos(ω_" + std::to_string(mid) + ") = 0, eigenvalue λ_" + std::to_string(mid) +
                             " vanishes for odd N = " + std::to_string(spec.n_sites) +
                             "; series propagation requires even N");
  }
}

Eigen::VectorXcd CoefficientState::total(long step) const {
  Eigen::VectorXcd c = layers.at(0).col(step);
  Eigen::VectorXd lam_power = Eigen::VectorXd::Ones(lambda.size());
  for (std::size_t k = 1; k < layers.size(); ++k) {
    lam_power = lam_power.cwiseProduct(lambda);
    c += lam_power.cast<std::complex<double>>().cwiseProduct(layers[k].col(step));
  }
  return c;
}

CoefficientState series_coefficients(const LatticeSpec& spec, const DriveProfile& drive, const Eigen::VectorXcd& c_initial,
                                     double t_final, double dt, int order) {
  require_series_applicable(spec);
  if (order < 0) throw std::invalid_argument("series order must be >= 0");
  const auto eig = tilted_eigensystem<double>(spec);
  if (c_initial.size() != eig.n_sites) throw std::invalid_argument("initial coefficients have the wrong dimension");

  CoefficientState state;
  state.order = order;
  state.grid = TimeGrid::make(t_final, dt);
  state.a_matrix = a_matrix(eig);
  state.lambda = eig.eigenvalues;

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(state.a_matrix);
  const Eigen::MatrixXd& v = solver.eigenvectors();
  const Eigen::VectorXd& a_spec = solver.eigenvalues();
  const Eigen::MatrixXcd vc = v.cast<std::complex<double>>();
  const Eigen::MatrixXcd vt = v.transpose().cast<std::complex<double>>();

  const long points = state.grid.steps + 1;
  std::vector<double> phi(static_cast<std::size_t>(points));
  for (long s = 0; s < points; ++s) phi[static_cast<std::size_t>(s)] = drive.phi_at(state.grid.time(s));

  // C0(t) = exp(-i phi(t) A) C(0)
  Eigen::MatrixXcd layer0(eig.n_sites, points);
  const Eigen::VectorXcd projected = vt * c_initial;
  for (long s = 0; s < points; ++s) {
    layer0.col(s) = vc * phases(a_spec, -phi[static_cast<std::size_t>(s)]).cwiseProduct(projected);
  }
  state.layers.push_back(std::move(layer0));

  const bool lambda_vanishes = spec.coupling == 0.0;
  const double h = state.grid.step;
  Eigen::VectorXd lam_power = Eigen::VectorXd::Ones(eig.n_sites);
  for (int n = 1; n <= order; ++n) {
    if (lambda_vanishes) {
      // lambda = 0: every higher term lambda^n C^(n) is identically zero.
      state.layers.push_back(Eigen::MatrixXcd::Zero(eig.n_sites, points));
      continue;
    }
    lam_power = lam_power.cwiseProduct(state.lambda);
    const Eigen::VectorXcd lam_n = lam_power.cast<std::complex<double>>();
    const Eigen::VectorXcd lam_inv_n = lam_power.cwiseInverse().cast<std::complex<double>>();
    const Eigen::MatrixXcd& source = state.layers.back();

    // C^n(t) = -i lambda^-n V e^{-i phi(t) a} int_0^t e^{i phi(t') a} V^T lambda^n C^(n-1)(t') dt'
    Eigen::MatrixXcd layer(eig.n_sites, points);
    Eigen::VectorXcd running = Eigen::VectorXcd::Zero(eig.n_sites);
    Eigen::VectorXcd previous = phases(a_spec, phi[0]).cwiseProduct(vt * lam_n.cwiseProduct(source.col(0)));
    layer.col(0).setZero();
    for (long s = 1; s < points; ++s) {
      const double phi_s = phi[static_cast<std::size_t>(s)];
      Eigen::VectorXcd integrand = phases(a_spec, phi_s).cwiseProduct(vt * lam_n.cwiseProduct(source.col(s)));
      running += (0.5 * h) * (previous + integrand);
      previous = std::move(integrand);
      layer.col(s) = -kI * lam_inv_n.cwiseProduct(vc * phases(a_spec, -phi_s).cwiseProduct(running));
    }
    state.layers.push_back(std::move(layer));
  }
  return state;
}

PropagationResult series_propagate(const LatticeSpec& spec, const DriveProfile& drive, const StateVector& psi0,
                                   double t_final, double dt, int order, int record_stride) {
  require_series_applicable(spec);
  if (psi0.size() != spec.dim()) throw std::invalid_argument("initial state has the wrong dimension");
  if (record_stride < 1) throw std::invalid_argument("record_stride must be >= 1");
  require_normalized(psi0);

  const auto eig = tilted_eigensystem<double>(spec);
  // phi(0) = 0, so the t = 0 tilted eigenvectors are the real sine basis.
  const Eigen::VectorXcd c_initial = eig.basis().transpose().cast<std::complex<double>>() * psi0;
  const auto coeffs = series_coefficients(spec, drive, c_initial, t_final, dt, order);

  PropagationResult result;
  result.method = Method::PerturbativeSeries;
  result.order = order;
  result.basis_offset = spec.basis_offset();
  if (2.0 * std::abs(spec.coupling) >= 1.0) {
    result.warnings.push_back("2|G| >= 1: the lambda-power series is not guaranteed to converge");
  }
  if (spec.coupling == 0.0 && order > 0) {
    result.warnings.push_back("G = 0: lambda vanishes and all layers above order 0 are zero");
  }

  result.layer_magnitudes.assign(static_cast<std::size_t>(order) + 1, 0.0);
  Eigen::VectorXd lam_power = Eigen::VectorXd::Ones(eig.n_sites);
  for (int k = 0; k <= order; ++k) {
    if (k > 0) lam_power = lam_power.cwiseProduct(coeffs.lambda);
    const Eigen::MatrixXcd scaled = lam_power.cast<std::complex<double>>().asDiagonal() * coeffs.layers[static_cast<std::size_t>(k)];
    result.layer_magnitudes[static_cast<std::size_t>(k)] = scaled.colwise().norm().maxCoeff();
  }

  const auto& grid = coeffs.grid;
  for (long s = 0; s <= grid.steps; ++s) {
    if (s != 0 && s % record_stride != 0 && s != grid.steps) continue;
    const double t = grid.time(s);
    const double phi = drive.phi_at(t);
    StateVector psi = apply_gauge<double>(reconstruct_state<double>(eig, coeffs.total(s), phi), phi, 1);
    result.times.push_back(t);
    result.norm_error.push_back(std::abs(psi.norm() - 1.0));
    result.states.push_back(std::move(psi));
  }
  return result;
}

}  // namespace tbdrive
