#include <doctest.h>

#include "tbdrive/algebra.hpp"

#include <vector>

using namespace tbdrive;

namespace {

// Ascending coefficients, frozen from exact rational Lagrange interpolation.
struct Frozen {
  int n;
  std::vector<double> f, g, h;
};

const std::vector<Frozen>& frozen() {
  static const std::vector<Frozen> table = {
      {2, {-3, 2}, {4, -4, 1}, {4, -2}},
      {3, {-2, 1}, {3, -2.5, 0.5}, {9, -7.5, 1.5}},
      {4, {-5, 37.0 / 6, -2.5, 1.0 / 3}, {6, -8.5, 53.0 / 12, -1, 1.0 / 12}, {16, -52.0 / 3, 6, -2.0 / 3}},
      {5, {-4, 13.0 / 3, -1.5, 1.0 / 6}, {5, -77.0 / 12, 71.0 / 24, -7.0 / 12, 1.0 / 24},
       {25, -385.0 / 12, 355.0 / 24, -35.0 / 12, 5.0 / 24}},
      {6, {-7, 659.0 / 60, -161.0 / 24, 2, -7.0 / 24, 1.0 / 60},
       {8, -68.0 / 5, 841.0 / 90, -10.0 / 3, 47.0 / 72, -1.0 / 15, 1.0 / 360},
       {36, -261.0 / 5, 29, -31.0 / 4, 1, -1.0 / 20}},
  };
  return table;
}

void check_coeffs(const Eigen::VectorXd& got, const std::vector<double>& want) {
  REQUIRE(got.size() == static_cast<Eigen::Index>(want.size()));
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(got(static_cast<Eigen::Index>(i)) == doctest::Approx(want[i]).epsilon(1e-12));
}

// Degree from finite differences on n = 0..N+2: highest order with a nonzero difference.
int degree_by_differences(const NumberPolynomial<double>& p, int n_points) {
  std::vector<double> v;
  for (int i = 0; i < n_points; ++i) v.push_back(p(i));
  int deg = 0;
  for (int order = 0; order < n_points; ++order) {
    bool nonzero = false;
    for (double x : v) nonzero = nonzero || std::abs(x) > 1e-9;
    if (nonzero) deg = order;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) v[i] = v[i + 1] - v[i];
    v.pop_back();
  }
  return deg;
}

}  // namespace

TEST_CASE("frozen polynomial coefficients") {
  for (const auto& row : frozen()) {
    CAPTURE(row.n);
    check_coeffs(f_polynomial(row.n).coefficients(), row.f);
    check_coeffs(g_polynomial(row.n).coefficients(), row.g);
    check_coeffs(h_polynomial(row.n).coefficients(), row.h);
  }
}

TEST_CASE("small-N polynomial examples") {
  const auto f2 = f_polynomial(2);
  CHECK(f2(1.0) == -1.0);
  CHECK(f2(2.0) == 1.0);
  const auto f3 = f_polynomial(3);
  CHECK(f3(1.0) == -1.0);
  CHECK(f3(2.0) == 0.0);
  CHECK(f3(3.0) == 1.0);
  const auto h3 = h_polynomial(3);
  CHECK(h3(1.0) == doctest::Approx(3.0));
  CHECK(h3(2.0) == 0.0);
  CHECK(h3(3.0) == 0.0);
}

TEST_CASE("interpolation, difference identity and structure function for N = 2..12") {
  for (int n = 2; n <= 12; ++n) {
    CAPTURE(n);
    const auto f = f_polynomial(n);
    const auto g = g_polynomial(n);
    const auto phi = phi_polynomial(n);
    for (int m = 1; m <= n; ++m) {
      const double want = (m == n ? 1.0 : 0.0) - (m == 1 ? 1.0 : 0.0);
      CHECK(std::abs(f(m) - want) < 1e-9);
      CHECK(std::abs(f(m) - (g(m + 1) - g(m))) < 1e-9);
    }
    CHECK(std::abs(g(1.0) - 1.0) < 1e-9);
    CHECK(std::abs(phi(1.0)) < 1e-9);
    CHECK(std::abs(phi(n + 1.0)) < 1e-9);
    for (int m = 2; m <= n; ++m) CHECK(std::abs(phi(m) - 1.0) < 1e-9);
  }
}

TEST_CASE("structural degree matches a finite-difference oracle") {
  for (int n = 2; n <= 12; ++n) {
    CAPTURE(n);
    const auto f = f_polynomial(n);
    CHECK(f.degree() == (n % 2 == 1 ? n - 2 : n - 1));
    CHECK(degree_by_differences(f, n + 3) == f.degree());
    CHECK(degree_by_differences(g_polynomial(n), n + 4) == g_polynomial(n).degree());
    CHECK(g_polynomial(n).degree() == f.degree() + 1);
  }
}

TEST_CASE("polynomial agrees with its expanded coefficients off the lattice") {
  for (int n = 2; n <= 9; ++n) {
    const auto g = g_polynomial(n);
    const auto c = g.coefficients();
    for (double x : {-1.5, 0.25, 3.7}) {
      double horner = 0.0;
      for (Eigen::Index i = c.size() - 1; i >= 0; --i) horner = horner * x + c(i);
      CHECK(horner == doctest::Approx(g(x)).epsilon(1e-9));
    }
  }
}

TEST_CASE("certification passes for every boundary and N = 2..12") {
  for (int n = 2; n <= 12; ++n) {
    for (auto spec : {LatticeSpec::dirichlet(n, 1.0), LatticeSpec::periodic(n, 1.0)}) {
      const auto rep = certify_algebra(spec);
      CAPTURE(to_table(rep));
      CHECK(rep.all_passed());
      CHECK(rep.max_residual() < 1e-9);
    }
  }
  for (int m = 1; m <= 6; ++m) CHECK(certify_algebra(LatticeSpec::infinite_window(m, 1.0)).all_passed());
}

TEST_CASE("alternative sign conventions are reported as informational failures") {
  for (int n : {2, 3}) {
    const auto rep = certify_algebra(LatticeSpec::dirichlet(n, 0.4));
    int informational = 0;
    for (const auto& c : rep.checks) {
      if (!c.informational) continue;
      ++informational;
      CHECK_FALSE(c.passed);
    }
    CHECK(informational == 1);
    CHECK(rep.all_passed());
  }
}

TEST_CASE("parafermion map") {
  const auto spec = LatticeSpec::dirichlet(4, 1.0);
  const auto pf = parafermion_map(spec);
  CHECK(pf.order_p == 3);
  // B|n+1> = sqrt(n (4 - n)) |n>
  CHECK(pf.b_down.at(1, 2).real() == doctest::Approx(std::sqrt(3.0)));
  CHECK(pf.b_down.at(2, 3).real() == doctest::Approx(2.0));
  CHECK(pf.b_down.at(3, 4).real() == doctest::Approx(std::sqrt(3.0)));
  CHECK(pf.m_number.at(1, 1).real() == 0.0);
  CHECK_THROWS_AS(parafermion_map(LatticeSpec::periodic(4, 1.0)), std::invalid_argument);
}

TEST_CASE("regularized hamiltonian approaches H as epsilon shrinks") {
  const auto spec = LatticeSpec::dirichlet(5, 0.7);
  const auto h = build_hamiltonian(spec, 0.3);
  double previous = 1e9;
  for (double eps : {1e-1, 1e-3, 1e-6}) {
    const double err = max_abs(regularized_hamiltonian(spec, 0.3, eps) - h);
    CHECK(err < previous);
    previous = err;
  }
  CHECK(previous < 1e-5);
  CHECK_THROWS_AS(regularized_deformation(5, 0.0), std::invalid_argument);
}

TEST_CASE("su(2) generators") {
  const auto s2 = su2_generators(2);
  CHECK(s2.coupling_scale == 1.0);
  CHECK(s2.number_shift == 1.5);
  CHECK(s2.j_zero.at(1, 1).real() == -0.5);
  const auto s3 = su2_generators(3);
  CHECK(s3.coupling_scale == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(s3.j_zero.at(3, 3).real() == 1.0);
  CHECK_THROWS_AS(su2_generators(4), std::invalid_argument);
}

TEST_CASE("certification in long double") {
  for (int n : {2, 3, 8, 12}) {
    const auto rep = certify_algebra<long double>(LatticeSpec::dirichlet(n, 1.0));
    CHECK(rep.all_passed());
  }
  const auto g = g_polynomial<long double>(7);
  CHECK(std::abs(static_cast<double>(g(1.0L) - 1.0L)) < 1e-15);
}

TEST_CASE("report rendering") {
  const auto rep = certify_algebra(LatticeSpec::dirichlet(2, 1.0));
  const auto csv = to_csv(rep);
  CHECK(csv.rfind("boundary,dim,identity,", 0) == 0);
  // identity names containing commas are quoted
  CHECK(csv.find(",\"[K+,K] = |N><N| - |1><1|\",") != std::string::npos);
  CHECK(to_table(rep).find("info-fail") != std::string::npos);
  CHECK_THROWS_AS(f_polynomial(1), std::invalid_argument);
}
