// Discrete-charge mesoscopic circuit (L-design) on the tight-binding engine.
//
//   H = -hbar^2/(2 L q_e^2) (Q + Q^dag) + eps(t) q,   q = q_e N
//
// is the infinite-chain Hamiltonian with G = -hbar^2/(2 L q_e^2) and
// F(t) = q_e eps(t). An optional capacitor adds q^2 / (2C) on the diagonal.
#ifndef TBDRIVE_CIRCUIT_HPP
#define TBDRIVE_CIRCUIT_HPP

#include "tbdrive/propagators.hpp"

#include <optional>

namespace tbdrive {

enum class UnitSystem {
  /// hbar = 1; inputs are taken as already dimensionless.
  Natural,
  /// SI inputs (H, C, V, s), rescaled by E0 = hbar^2/(2 L q_e^2) and t0 = hbar/E0.
  SI,
};

struct CircuitSpec {
  double inductance = 1.0;
  double electron_charge = 1.0;
  DriveProfile drive_voltage;
  int basis_halfwidth = 1;
  std::optional<double> capacitance;
  UnitSystem units = UnitSystem::Natural;
};

struct CircuitMapping {
  LatticeSpec lattice;
  DriveProfile drive;
  /// q_e^2 n^2 / (2C) in engine units, present for the LC design.
  std::optional<Eigen::VectorXd> charging_energy;
  /// Engine energy unit in input units (1 for Natural).
  double energy_scale = 1.0;
  /// Engine time unit in input units (1 for Natural).
  double time_scale = 1.0;
  /// Charge per site label, in input units.
  double charge_quantum = 1.0;
};

inline constexpr double kHbarSI = 1.054571817e-34;

CircuitMapping circuit_to_lattice(const CircuitSpec& circuit);

/// The engine Hamiltonian of a mapped circuit (lattice hopping, drive and
/// the optional charging term).
DrivenHamiltonian circuit_hamiltonian(const CircuitMapping& mapping);

/// The circuit Hamiltonian assembled directly from Q, Q^dag and q on the
/// charge basis, without going through LatticeSpec. Natural units only.
DrivenHamiltonian circuit_hamiltonian_direct(const CircuitSpec& circuit);

/// <q>(t) = q_e <N>(t) per recorded time.
std::vector<double> charge_expectation(const PropagationResult& result, double q_e);

}  // namespace tbdrive

#endif  // TBDRIVE_CIRCUIT_HPP
