#include <doctest.h>

#include "tbdrive/circuit.hpp"
#include "tbdrive/observables.hpp"

using namespace tbdrive;

namespace {

CircuitSpec l_design(double l, double q, DriveProfile v, int m) {
  CircuitSpec c;
  c.inductance = l;
  c.electron_charge = q;
  c.drive_voltage = std::move(v);
  c.basis_halfwidth = m;
  return c;
}

}  // namespace

TEST_CASE("L-design with L = 1, q = 1 is the G = -1/2 chain") {
  const auto circuit = l_design(1.0, 1.0, DriveProfile::sinusoid(0.7, 1.1), 6);
  const auto mapping = circuit_to_lattice(circuit);
  CHECK(mapping.lattice.boundary == Boundary::InfiniteWindow);
  CHECK(mapping.lattice.coupling == -0.5);
  CHECK(mapping.lattice.window_halfwidth == 6);

  const auto lattice = LatticeSpec::infinite_window(6, -0.5);
  const auto psi0 = site_state(lattice, 0);
  const auto via_circuit = oracle_propagate(circuit_hamiltonian(mapping), psi0, 3.0, 1e-3, 100);
  const auto via_lattice = oracle_propagate(lattice, DriveProfile::sinusoid(0.7, 1.1), psi0, 3.0, 1e-3, 100);
  CHECK(states_csv(via_circuit) == states_csv(via_lattice));
  CHECK(observables_csv(occupations(via_circuit)) == observables_csv(occupations(via_lattice)));
}

TEST_CASE("mapped and directly assembled circuits agree") {
  for (double q : {1.0, 0.5, 2.0}) {
    for (bool with_c : {false, true}) {
      auto circuit = l_design(1.7, q, DriveProfile::sinusoid(0.4, 0.8, 0.3), 5);
      if (with_c) circuit.capacitance = 3.0;
      const auto mapped = circuit_hamiltonian(circuit_to_lattice(circuit));
      const auto direct = circuit_hamiltonian_direct(circuit);
      CHECK((mapped.static_part - direct.static_part).norm() < 1e-14);
      const auto psi0 = site_state(LatticeSpec::infinite_window(5, 1.0), 1);
      const auto a = oracle_propagate(mapped, psi0, 2.0, 1e-3);
      const auto b = oracle_propagate(direct, psi0, 2.0, 1e-3);
      CHECK((a.final_state() - b.final_state()).norm() < 1e-10);
    }
  }
}

TEST_CASE("SI inputs rescale to dimensionless units") {
  const double l = 2e-9;
  const double q = 1.602176634e-19;
  const double e0 = kHbarSI * kHbarSI / (2 * l * q * q);
  const double t0 = kHbarSI / e0;
  auto circuit = l_design(l, q, DriveProfile::constant(0.5 * e0 / q), 4);
  circuit.units = UnitSystem::SI;
  const auto m = circuit_to_lattice(circuit);
  CHECK(m.lattice.coupling == -1.0);
  CHECK(m.energy_scale == doctest::Approx(e0));
  CHECK(m.time_scale == doctest::Approx(t0));
  CHECK(m.drive.force_at(0.0) == doctest::Approx(0.5));

  // a sinusoid at angular frequency w (SI) has engine frequency w t0
  auto sin_circuit = l_design(l, q, DriveProfile::sinusoid(e0 / q, 3.0 / t0), 4);
  sin_circuit.units = UnitSystem::SI;
  const auto ms = circuit_to_lattice(sin_circuit);
  CHECK(ms.drive.force_at(0.2) == doctest::Approx(std::sin(0.6)));

  circuit.capacitance = 1e-15;
  const auto mc = circuit_to_lattice(circuit);
  REQUIRE(mc.charging_energy);
  CHECK((*mc.charging_energy)(5) == doctest::Approx(q * q / (2e-15 * e0)));
  CHECK_THROWS(circuit_hamiltonian_direct(circuit));
}

TEST_CASE("charge expectation follows the drive") {
  const auto circuit = l_design(1.0, 0.5, DriveProfile::constant(0.0), 3);
  const auto mapping = circuit_to_lattice(circuit);
  StateVector psi0 = site_state(mapping.lattice, 2);
  const auto res = oracle_propagate(circuit_hamiltonian(mapping), psi0, 0.5, 1e-2, 10);
  const auto q = charge_expectation(res, 0.5);
  CHECK(q.front() == doctest::Approx(1.0));
  CHECK(q.size() == res.times.size());
}

TEST_CASE("invalid circuits") {
  CHECK_THROWS(circuit_to_lattice(l_design(0.0, 1.0, DriveProfile::constant(0.0), 2)));
  CHECK_THROWS(circuit_to_lattice(l_design(1.0, -1.0, DriveProfile::constant(0.0), 2)));
  CHECK_THROWS(circuit_to_lattice(l_design(1.0, 1.0, DriveProfile::constant(0.0), 0)));
  auto c = l_design(1.0, 1.0, DriveProfile::constant(0.0), 2);
  c.capacitance = -1.0;
  CHECK_THROWS(circuit_to_lattice(c));
}
