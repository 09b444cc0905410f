#include "tbdrive/circuit.hpp"

#include "tbdrive/observables.hpp"

#include <cmath>

namespace tbdrive {

namespace {

void validate(const CircuitSpec& c) {
  if (!(c.inductance > 0.0) || !std::isfinite(c.inductance)) throw std::invalid_argument("inductance must be positive");
  if (!(c.electron_charge > 0.0) || !std::isfinite(c.electron_charge)) {
    throw std::invalid_argument("electron_charge must be positive");
  }
  if (c.capacitance && !(*c.capacitance > 0.0)) throw std::invalid_argument("capacitance must be positive");
  if (c.basis_halfwidth < 1) throw std::invalid_argument("basis_halfwidth must be >= 1");
}

}  // namespace

CircuitMapping circuit_to_lattice(const CircuitSpec& circuit) {
  validate(circuit);
  const double q = circuit.electron_charge;
  CircuitMapping m;
  m.charge_quantum = q;
  double hopping = 0.0;
  double force_factor = q;
  if (circuit.units == UnitSystem::Natural) {
    hopping = -1.0 / (2.0 * circuit.inductance * q * q);
  } else {
    m.energy_scale = kHbarSI * kHbarSI / (2.0 * circuit.inductance * q * q);
    m.time_scale = kHbarSI / m.energy_scale;
    hopping = -1.0;
    force_factor = q / m.energy_scale;
  }
  m.lattice = LatticeSpec::infinite_window(circuit.basis_halfwidth, hopping);
  m.drive = circuit.drive_voltage.rescaled(force_factor, m.time_scale);
  if (circuit.capacitance) {
    const Eigen::VectorXd labels = site_labels<double>(m.lattice);
    m.charging_energy = (q * q / (2.0 * *circuit.capacitance * m.energy_scale)) * labels.cwiseAbs2();
  }
  return m;
}

DrivenHamiltonian circuit_hamiltonian(const CircuitMapping& mapping) {
  auto h = DrivenHamiltonian::from_lattice(mapping.lattice, mapping.drive);
  if (mapping.charging_energy) h.static_part.diagonal() += mapping.charging_energy->cast<std::complex<double>>();
  return h;
}

DrivenHamiltonian circuit_hamiltonian_direct(const CircuitSpec& circuit) {
  validate(circuit);
  if (circuit.units != UnitSystem::Natural) throw std::invalid_argument("direct assembly uses natural units");
  const int m = circuit.basis_halfwidth;
  const Eigen::Index dim = 2 * m + 1;
  const double q = circuit.electron_charge;
  // Q|n> = |n-1>, Q^dag|n> = |n+1> on charges -M..M
  Eigen::MatrixXcd shift_down = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index r = 0; r + 1 < dim; ++r) shift_down(r, r + 1) = 1.0;
  const Eigen::MatrixXcd shift_up = shift_down.transpose();
  Eigen::VectorXd charge(dim);
  for (Eigen::Index r = 0; r < dim; ++r) charge(r) = q * static_cast<double>(r - m);

  DrivenHamiltonian h;
  const double kinetic = -1.0 / (2.0 * circuit.inductance * q * q);
  h.static_part = kinetic * (shift_down + shift_up);
  if (circuit.capacitance) {
    h.static_part.diagonal() += (charge.cwiseAbs2() / (2.0 * *circuit.capacitance)).cast<std::complex<double>>();
  }
  h.position = charge;
  h.drive = circuit.drive_voltage;
  h.basis_offset = -m;
  return h;
}

std::vector<double> charge_expectation(const PropagationResult& result, double q_e) {
  auto obs = occupations(result);
  for (auto& v : obs.mean_position) v *= q_e;
  return obs.mean_position;
}

}  // namespace tbdrive
