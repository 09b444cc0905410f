// Time evolution of the driven chain.
//
//   oracle_propagate   RK4 on i d/dt psi = H(t) psi (any boundary)
//   su2_propagate      U = e^{-i mu} e^{-i f J0} e^{-i g J+} e^{-i k J-}, N = 2, 3
//   series_propagate   gauge transform plus lambda-graded coefficient series,
//                      Dirichlet chains with even N
#ifndef TBDRIVE_PROPAGATORS_HPP
#define TBDRIVE_PROPAGATORS_HPP

#include "tbdrive/drive.hpp"
#include "tbdrive/eigensystem.hpp"
#include "tbdrive/lattice.hpp"

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace tbdrive {

/// Raised when a method cannot be applied to the requested lattice.
class InapplicableMethod : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Method { Oracle, Su2Exact, PerturbativeSeries };

/// Uniform grid t_k = k * step, k = 0..steps, with steps * step == t_final.
///
/// The requested dt is shrunk, if needed, so that it divides t_final.
struct TimeGrid {
  long steps = 0;
  double step = 0.0;
  double t_final = 0.0;

  static TimeGrid make(double t_final, double dt);
  double time(long k) const { return k == steps ? t_final : static_cast<double>(k) * step; }
};

struct PropagationResult {
  Method method = Method::Oracle;
  int order = 0;
  int basis_offset = 1;
  std::vector<double> times;
  std::vector<StateVector> states;
  /// | ||psi(t)|| - 1 | at each recorded time.
  std::vector<double> norm_error;
  /// Series only: max over the grid of ||lambda^k C^(k)(t)||, k = 0..order.
  std::vector<double> layer_magnitudes;
  std::vector<std::string> warnings;
  /// su(2) only: number of times the factorisation was restarted from U = 1.
  int restarts = 0;
  bool failed = false;
  double failure_time = 0.0;
  std::string failure_reason;

  std::string method_name() const;
  const StateVector& final_state() const { return states.back(); }
};

/// H(t) = static_part + F(t) diag(position).
struct DrivenHamiltonian {
  Eigen::MatrixXcd static_part;
  Eigen::VectorXd position;
  DriveProfile drive;
  int basis_offset = 1;

  static DrivenHamiltonian from_lattice(const LatticeSpec& spec, const DriveProfile& drive);

  Eigen::Index dim() const { return position.size(); }
  void apply(double t, const StateVector& psi, StateVector& out) const {
    out.noalias() = static_part * psi;
    out += (drive.force_at(t) * position).cwiseProduct(psi);
  }
};

/// Classic RK4 for i d/dt psi = H(t) psi with H supplied as apply(t, psi, out).
/// Stages sample H at t, t + h/2 and t + h. No renormalisation.
template <class ApplyH>
PropagationResult rk4_integrate(const ApplyH& apply, StateVector psi, const TimeGrid& grid, int record_stride) {
  if (record_stride < 1) throw std::invalid_argument("record_stride must be >= 1");
  const std::complex<double> minus_i(0.0, -1.0);
  const Eigen::Index n = psi.size();
  StateVector k1(n), k2(n), k3(n), k4(n), tmp(n);

  PropagationResult result;
  const auto record = [&](double t) {
    result.times.push_back(t);
    result.norm_error.push_back(std::abs(psi.norm() - 1.0));
    result.states.push_back(psi);
  };
  record(0.0);
  const double h = grid.step;
  for (long step = 0; step < grid.steps; ++step) {
    const double t = grid.time(step);
    apply(t, psi, k1);
    k1 *= minus_i;
    tmp = psi + (0.5 * h) * k1;
    apply(t + 0.5 * h, tmp, k2);
    k2 *= minus_i;
    tmp = psi + (0.5 * h) * k2;
    apply(t + 0.5 * h, tmp, k3);
    k3 *= minus_i;
    tmp = psi + h * k3;
    apply(t + h, tmp, k4);
    k4 *= minus_i;
    psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if ((step + 1) % record_stride == 0 || step + 1 == grid.steps) record(grid.time(step + 1));
  }
  return result;
}

PropagationResult oracle_propagate(const DrivenHamiltonian& hamiltonian, const StateVector& psi0, double t_final,
                                   double dt, int record_stride = 1);
PropagationResult oracle_propagate(const LatticeSpec& spec, const DriveProfile& drive, const StateVector& psi0,
                                   double t_final, double dt, int record_stride = 1);

/// Integrates the gauge-frame Hamiltonian G(e^{-i phi} K + e^{i phi} K^dag)
/// and maps each state back with e^{-i phi N}.
PropagationResult gauge_frame_propagate(const LatticeSpec& spec, const DriveProfile& drive, const StateVector& psi0,
                                        double t_final, double dt, int record_stride = 1);

struct Su2Options {
  /// Restart the factorisation from the identity once |g|, |k| or |Im f|
  /// exceed this. Infinity disables restarts.
  double chart_limit = 0.5;
  /// Coefficient magnitude treated as a blow-up of the scalar equations.
  double overflow_guard = 1e8;
};

/// Scalar coefficients of the factorised propagator on the current segment.
struct Su2Coefficients {
  std::complex<double> mu;
  std::complex<double> f;
  std::complex<double> g;
  std::complex<double> k;
};

/// Assembles e^{-i mu} e^{-i f J0} e^{-i g J+} e^{-i k J-} exactly (J+- nilpotent).
Eigen::MatrixXcd su2_assemble(int n_sites, const Su2Coefficients& c);

/// Right-hand side of the coefficient equations for
/// H = a J+ + b J- + c J0 + e.
Su2Coefficients su2_coefficient_rates(const Su2Coefficients& y, double a, double b, double c, double e);

PropagationResult su2_propagate(const LatticeSpec& spec, const DriveProfile& drive, const StateVector& psi0,
                                double t_final, double dt, int record_stride = 1, const Su2Options& options = {});

/// U(t_final) from the factorised propagator.
Eigen::MatrixXcd su2_evolution_operator(const LatticeSpec& spec, const DriveProfile& drive, double t_final, double dt,
                                        const Su2Options& options = {});

/// Layers C^(0..order) of the coefficient series on the full time grid.
struct CoefficientState {
  int order = 0;
  TimeGrid grid;
  Eigen::MatrixXd a_matrix;
  Eigen::VectorXd lambda;
  /// layers[k].col(step) = C^(k)(t_step)
  std::vector<Eigen::MatrixXcd> layers;

  /// C(t_step) = sum_k lambda^k C^(k)(t_step).
  Eigen::VectorXcd total(long step) const;
};

/// Throws InapplicableMethod for odd N or non-Dirichlet chains.
void require_series_applicable(const LatticeSpec& spec);

CoefficientState series_coefficients(const LatticeSpec& spec, const DriveProfile& drive, const Eigen::VectorXcd& c_initial,
                                     double t_final, double dt, int order);

PropagationResult series_propagate(const LatticeSpec& spec, const DriveProfile& drive, const StateVector& psi0,
                                   double t_final, double dt, int order, int record_stride = 1);

/// |<a(t)|b(t)>| / (|a(t)| |b(t)|) at every common time; the grids must agree.
std::vector<double> fidelity(const PropagationResult& a, const PropagationResult& b);

struct MethodComparison {
  std::string method;
  bool applicable = true;
  std::string reason;
  PropagationResult result;
  std::vector<double> fidelity_vs_oracle;
  double terminal_fidelity = std::numeric_limits<double>::quiet_NaN();
  double terminal_error = std::numeric_limits<double>::quiet_NaN();
  double runtime_seconds = 0.0;
};

struct ComparisonReport {
  LatticeSpec spec;
  std::string drive;
  MethodComparison oracle;
  std::vector<MethodComparison> methods;

  /// Plain-text table; runtimes are included only when asked for, which
  /// keeps file output reproducible.
  std::string to_table(bool include_runtime) const;
};

ComparisonReport compare_methods(const LatticeSpec& spec, const DriveProfile& drive, const StateVector& psi0,
                                 double t_final, double dt, const std::vector<int>& orders, int record_stride = 1);

}  // namespace tbdrive

#endif  // TBDRIVE_PROPAGATORS_HPP
