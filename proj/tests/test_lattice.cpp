#include <doctest.h>

#include "tbdrive/lattice.hpp"

using namespace tbdrive;

namespace {

// Reference ladder built straight from the ket-bra sums.
Eigen::MatrixXcd ketbra_sum(int dim, std::initializer_list<std::pair<int, int>> entries) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (auto [r, c] : entries) m(r - 1, c - 1) = 1.0;
  return m;
}

}  // namespace

TEST_CASE("ladder down on Dirichlet and periodic chains") {
  const auto kd = build_ladder_down(LatticeSpec::dirichlet(3, 1.0));
  CHECK(kd.entries == ketbra_sum(3, {{1, 2}, {2, 3}}));
  const auto kp = build_ladder_down(LatticeSpec::periodic(3, 1.0));
  CHECK(kp.entries == ketbra_sum(3, {{1, 2}, {2, 3}, {3, 1}}));
  const auto k2 = build_ladder_down(LatticeSpec::dirichlet(2, 1.0));
  CHECK(max_abs(k2 * k2) == 0.0);
}

TEST_CASE("ladder up is the adjoint and raises the site") {
  const auto spec = LatticeSpec::dirichlet(3, 1.0);
  const auto up = build_ladder_up(spec);
  CHECK(up.entries == ketbra_sum(3, {{2, 1}, {3, 2}}));
  for (auto s : {LatticeSpec::dirichlet(5, 1.0), LatticeSpec::periodic(5, 1.0), LatticeSpec::infinite_window(3, 1.0)}) {
    CHECK(build_ladder_up(s).entries == build_ladder_down(s).entries.adjoint());
  }
  const StateVector raised = up.entries * site_state(spec, 1);
  CHECK(raised == site_state(spec, 2));
}

TEST_CASE("number operator") {
  CHECK(build_number(LatticeSpec::dirichlet(3, 1.0)).entries.diagonal().real() == Eigen::Vector3d(1, 2, 3));
  const auto win = build_number(LatticeSpec::infinite_window(1, 1.0));
  CHECK(win.entries.diagonal().real() == Eigen::Vector3d(-1, 0, 1));
  CHECK(win.basis_offset == -1);
  CHECK(win.at(1, 1).real() == 1.0);
  CHECK(build_number(LatticeSpec::dirichlet(4, 1.0)).entries.trace().real() == 10.0);
}

TEST_CASE("hamiltonian examples") {
  Eigen::Matrix2cd expect2;
  expect2 << 0, 1, 1, 0;
  CHECK(build_hamiltonian(LatticeSpec::dirichlet(2, 1.0), 0.0).entries == Eigen::MatrixXcd(expect2));

  const auto h = build_hamiltonian(LatticeSpec::dirichlet(3, 0.0), 2.0);
  CHECK(h.entries.diagonal().real() == Eigen::Vector3d(2, 4, 6));
  CHECK(max_abs(Eigen::MatrixXcd(h.entries - Eigen::MatrixXcd(h.entries.diagonal().asDiagonal()))) == 0.0);

  Eigen::Matrix3cd expect3;
  expect3 << 1, 1, 0, 1, 2, 1, 0, 1, 3;
  CHECK(build_hamiltonian(LatticeSpec::dirichlet(3, 1.0), 1.0).entries == Eigen::MatrixXcd(expect3));
}

TEST_CASE("commutator examples") {
  const auto spec = LatticeSpec::dirichlet(3, 1.0);
  const auto k = build_ladder_down(spec);
  const auto kd = build_ladder_up(spec);
  const auto n = build_number(spec);
  CHECK(commutator(n, k).entries == (-1.0 * k).entries);
  CHECK(commutator(kd, k).entries.diagonal().real() == Eigen::Vector3d(-1, 0, 1));
  CHECK(max_abs(commutator(n, n)) == 0.0);
}

TEST_CASE("Dirichlet algebra is exact for N = 2..12") {
  for (int n = 2; n <= 12; ++n) {
    CAPTURE(n);
    const auto spec = LatticeSpec::dirichlet(n, 1.0);
    const auto k = build_ladder_down(spec);
    const auto kd = build_ladder_up(spec);
    const auto num = build_number(spec);
    CHECK(max_abs(commutator(num, k) + k) == 0.0);
    CHECK(max_abs(commutator(num, kd) - kd) == 0.0);
    CHECK(max_abs(commutator(kd, k) - (projector(spec, n) - projector(spec, 1))) == 0.0);
    CHECK(max_abs(power(k, n)) == 0.0);
    CHECK(max_abs(power(kd, n)) == 0.0);
  }
}

TEST_CASE("periodic commutator picks up the N|1><1| deformation") {
  for (int n = 2; n <= 12; ++n) {
    CAPTURE(n);
    const auto spec = LatticeSpec::periodic(n, 1.0);
    const auto k = build_ladder_down(spec);
    const auto id = identity_operator(spec);
    const auto h = double(n) * projector(spec, 1);
    CHECK(max_abs(commutator(build_number(spec), k) + k * (id - h)) == 0.0);
  }
}

TEST_CASE("infinite window commutator lives on the edges") {
  const auto spec = LatticeSpec::infinite_window(5, 1.0);
  const auto c = commutator(build_ladder_up(spec), build_ladder_down(spec));
  for (int j = -4; j <= 4; ++j) CHECK(std::abs(c.at(j, j)) == 0.0);
  CHECK(c.at(5, 5).real() == 1.0);
  CHECK(c.at(-5, -5).real() == -1.0);
  CHECK(max_abs(Eigen::MatrixXcd(c.entries - Eigen::MatrixXcd(c.entries.diagonal().asDiagonal()))) == 0.0);
}

TEST_CASE("hamiltonians are hermitian") {
  for (auto spec : {LatticeSpec::dirichlet(7, 0.3), LatticeSpec::periodic(6, -1.2), LatticeSpec::infinite_window(4, 0.5)}) {
    for (double f : {-2.0, 0.0, 1.7}) CHECK(build_hamiltonian(spec, f).is_hermitian(1e-12));
  }
}

TEST_CASE("invalid specs are rejected") {
  CHECK_THROWS_AS(build_ladder_down(LatticeSpec::dirichlet(1, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(build_number(LatticeSpec::infinite_window(0, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(site_state(LatticeSpec::dirichlet(3, 1.0), 4), std::invalid_argument);
  CHECK_THROWS_AS(parse_boundary("ring"), std::invalid_argument);
}

TEST_CASE("long double instantiation") {
  const auto spec = LatticeSpec::dirichlet(6, 0.5);
  const auto k = build_ladder_down<long double>(spec);
  const auto num = build_number<long double>(spec);
  CHECK(max_abs(commutator(num, k) + k) == 0.0L);
  CHECK(build_hamiltonian<long double>(spec, 0.25L).is_hermitian());
}
