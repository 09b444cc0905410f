#include "tbdrive/propagators.hpp"

#include <cmath>

namespace tbdrive {

TimeGrid TimeGrid::make(double t_final, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw std::invalid_argument("t_final must be >= 0");
  TimeGrid grid;
  grid.t_final = t_final;
  if (t_final == 0.0) {
    grid.step = dt;
    return grid;
  }
  grid.steps = static_cast<long>(std::ceil(t_final / dt - 1e-9));
  if (grid.steps < 1) grid.steps = 1;
  grid.step = t_final / static_cast<double>(grid.steps);
  return grid;
}

std::string PropagationResult::method_name() const {
  switch (method) {
    case Method::Oracle: return "oracle";
    case Method::Su2Exact: return "su2";
    case Method::PerturbativeSeries: return "series(order=" + std::to_string(order) + ")";
  }
  return "unknown";
}

DrivenHamiltonian DrivenHamiltonian::from_lattice(const LatticeSpec& spec, const DriveProfile& drive) {
  spec.validate();
  return {build_hopping<double>(spec).entries, site_labels<double>(spec), drive, spec.basis_offset()};
}

PropagationResult oracle_propagate(const DrivenHamiltonian& hamiltonian, const StateVector& psi0, double t_final,
                                   double dt, int record_stride) {
  if (psi0.size() != hamiltonian.dim()) throw std::invalid_argument("initial state has the wrong dimension");
  require_normalized(psi0);
  const auto grid = TimeGrid::make(t_final, dt);
  auto result = rk4_integrate(
      [&](double t, const StateVector& psi, StateVector& out) { hamiltonian.apply(t, psi, out); }, psi0, grid,
      record_stride);
  result.method = Method::Oracle;
  result.basis_offset = hamiltonian.basis_offset;
  return result;
}

PropagationResult oracle_propagate(const LatticeSpec& spec, const DriveProfile& drive, const StateVector& psi0,
                                   double t_final, double dt, int record_stride) {
  return oracle_propagate(DrivenHamiltonian::from_lattice(spec, drive), psi0, t_final, dt, record_stride);
}

PropagationResult gauge_frame_propagate(const LatticeSpec& spec, const DriveProfile& drive, const StateVector& psi0,
                                        double t_final, double dt, int record_stride) {
  spec.validate();
  if (spec.boundary == Boundary::Periodic) {
    // the wrap term |N><1| picks up e^{-i phi (N-1)}, not e^{i phi}
    throw InapplicableMethod("gauge-frame propagation needs an open chain (got periodic)");
  }
  if (psi0.size() != spec.dim()) throw std::invalid_argument("initial state has the wrong dimension");
  require_normalized(psi0);
  const Eigen::MatrixXcd k = (spec.coupling * build_ladder_down<double>(spec)).entries;
  const Eigen::MatrixXcd kd = (spec.coupling * build_ladder_up<double>(spec)).entries;
  const auto grid = TimeGrid::make(t_final, dt);
  // U(0) = V(0) = 1, so the lab and gauge frames share the initial state.
  auto result = rk4_integrate(
      [&](double t, const StateVector& psi, StateVector& out) {
        const std::complex<double> phase = std::polar(1.0, -drive.phi_at(t));
        out.noalias() = phase * (k * psi);
        out.noalias() += std::conj(phase) * (kd * psi);
      },
      psi0, grid, record_stride);
  for (std::size_t i = 0; i < result.states.size(); ++i) {
    result.states[i] = apply_gauge<double>(result.states[i], drive.phi_at(result.times[i]), spec.basis_offset());
  }
  result.method = Method::Oracle;
  result.basis_offset = spec.basis_offset();
  return result;
}

std::vector<double> fidelity(const PropagationResult& a, const PropagationResult& b) {
  if (a.times.size() != b.times.size()) throw std::invalid_argument("fidelity: time grids differ in length");
  std::vector<double> out(a.times.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (std::abs(a.times[i] - b.times[i]) > 1e-9 * (1.0 + std::abs(a.times[i]))) {
      throw std::invalid_argument("fidelity: time grids differ");
    }
    // truncated series states are not unit vectors
    out[i] = std::abs(a.states[i].dot(b.states[i])) / (a.states[i].norm() * b.states[i].norm());
  }
  return out;
}

}  // namespace tbdrive
