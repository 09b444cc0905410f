#include "tbdrive/algebra.hpp"
#include "tbdrive/propagators.hpp"

#include <cmath>
#include <functional>

namespace tbdrive {

namespace {

constexpr std::complex<double> kI(0.0, 1.0);

Su2Coefficients axpy(const Su2Coefficients& y, double h, const Su2Coefficients& r) {
  return {y.mu + h * r.mu, y.f + h * r.f, y.g + h * r.g, y.k + h * r.k};
}

double chart_size(const Su2Coefficients& y) {
  return std::max({std::abs(y.g), std::abs(y.k), std::abs(y.f.imag())});
}

bool overflowed(const Su2Coefficients& y, double guard) {
  for (auto v : {y.mu, y.f, y.g, y.k}) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v) > guard) return true;
  }
  return false;
}

struct Su2Run {
  bool failed = false;
  double failure_time = 0.0;
  int restarts = 0;
};

// Integrates the coefficient equations and reports U(t) at every recorded step.
Su2Run run_su2(const LatticeSpec& spec, const DriveProfile& drive, double t_final, double dt, int record_stride,
               const Su2Options& options, const std::function<void(double, const Eigen::MatrixXcd&)>& emit) {
  if (spec.boundary != Boundary::Dirichlet || (spec.n_sites != 2 && spec.n_sites != 3)) {
    throw InapplicableMethod("su(2) propagator requires a Dirichlet chain with N = 2 or 3 (got N = " +
                             std::to_string(spec.dim()) + ", " + std::string(to_string(spec.boundary)) + ")");
  }
  if (record_stride < 1) throw std::invalid_argument("record_stride must be >= 1");
  spec.validate();
  const auto gens = su2_generators<double>(spec.n_sites);
  const double hop = gens.coupling_scale * spec.coupling;
  const double shift = gens.number_shift;
  const int n = spec.n_sites;

  const auto rates = [&](double t, const Su2Coefficients& y) {
    const double force = drive.force_at(t);
    return su2_coefficient_rates(y, hop, hop, force, force * shift);
  };

  const auto grid = TimeGrid::make(t_final, dt);
  const double h = grid.step;
  Su2Run run;
  Eigen::MatrixXcd accumulated = Eigen::MatrixXcd::Identity(n, n);
  Su2Coefficients y{};
  emit(0.0, accumulated);
  for (long step = 0; step < grid.steps; ++step) {
    const double t = grid.time(step);
    if (chart_size(y) > options.chart_limit) {
      accumulated = su2_assemble(n, y) * accumulated;
      y = {};
      ++run.restarts;
    }
    const auto k1 = rates(t, y);
    const auto k2 = rates(t + 0.5 * h, axpy(y, 0.5 * h, k1));
    const auto k3 = rates(t + 0.5 * h, axpy(y, 0.5 * h, k2));
    const auto k4 = rates(t + h, axpy(y, h, k3));
    y.mu += (h / 6.0) * (k1.mu + 2.0 * k2.mu + 2.0 * k3.mu + k4.mu);
    y.f += (h / 6.0) * (k1.f + 2.0 * k2.f + 2.0 * k3.f + k4.f);
    y.g += (h / 6.0) * (k1.g + 2.0 * k2.g + 2.0 * k3.g + k4.g);
    y.k += (h / 6.0) * (k1.k + 2.0 * k2.k + 2.0 * k3.k + k4.k);
    if (overflowed(y, options.overflow_guard)) {
      run.failed = true;
      run.failure_time = grid.time(step + 1);
      return run;
    }
    if ((step + 1) % record_stride == 0 || step + 1 == grid.steps) {
      emit(grid.time(step + 1), su2_assemble(n, y) * accumulated);
    }
  }
  return run;
}

}  // namespace

Su2Coefficients su2_coefficient_rates(const Su2Coefficients& y, double a, double b, double c, double e) {
  // Matching i dU/dt U^-1 = a J+ + b J- + c J0 + e generator by generator:
  //   J-: k' e^{if} = b
  //   J0: f' - 2i g k' = c
  //   J+: e^{-if} (g' + g^2 k') = a
  const std::complex<double> eif = std::exp(kI * y.f);
  Su2Coefficients r;
  r.k = b / eif;
  r.f = c + 2.0 * kI * y.g * r.k;
  r.g = a * eif - y.g * y.g * r.k;
  r.mu = e;
  return r;
}

Eigen::MatrixXcd su2_assemble(int n_sites, const Su2Coefficients& c) {
  const auto gens = su2_generators<double>(n_sites);
  const Eigen::Index n = n_sites;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd& jp = gens.j_plus.entries;
  const Eigen::MatrixXcd& jm = gens.j_minus.entries;
  // (J+)^3 = (J-)^3 = 0 for both realisations, so the series terminate.
  const Eigen::MatrixXcd ep = id - kI * c.g * jp - 0.5 * c.g * c.g * (jp * jp);
  const Eigen::MatrixXcd em = id - kI * c.k * jm - 0.5 * c.k * c.k * (jm * jm);
  Eigen::VectorXcd diag(n);
  for (Eigen::Index r = 0; r < n; ++r) diag(r) = std::exp(-kI * c.f * gens.j_zero.entries(r, r));
  return std::exp(-kI * c.mu) * (diag.asDiagonal() * (ep * em));
}

PropagationResult su2_propagate(const LatticeSpec& spec, const DriveProfile& drive, const StateVector& psi0,
                                double t_final, double dt, int record_stride, const Su2Options& options) {
  if (psi0.size() != spec.dim()) throw std::invalid_argument("initial state has the wrong dimension");
  require_normalized(psi0);
  PropagationResult result;
  result.method = Method::Su2Exact;
  result.basis_offset = spec.basis_offset();
  const auto run = run_su2(spec, drive, t_final, dt, record_stride, options,
                           [&](double t, const Eigen::MatrixXcd& u) {
                             StateVector psi = u * psi0;
                             result.times.push_back(t);
                             result.norm_error.push_back(std::abs(psi.norm() - 1.0));
                             result.states.push_back(std::move(psi));
                           });
  result.restarts = run.restarts;
  if (run.failed) {
    result.failed = true;
    result.failure_time = run.failure_time;
    result.failure_reason = "coefficient overflow (Riccati blow-up) at t = " + std::to_string(run.failure_time);
  }
  return result;
}

Eigen::MatrixXcd su2_evolution_operator(const LatticeSpec& spec, const DriveProfile& drive, double t_final, double dt,
                                        const Su2Options& options) {
  Eigen::MatrixXcd last;
  const auto run = run_su2(spec, drive, t_final, dt, 1, options, [&](double, const Eigen::MatrixXcd& u) { last = u; });
  if (run.failed) {
    throw std::runtime_error("su(2) coefficient overflow at t = " + std::to_string(run.failure_time));
  }
  return last;
}

}  // namespace tbdrive
