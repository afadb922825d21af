#include <doctest.h>

#include "oracles.hpp"
#include "sgqst/hermitian.hpp"
#include "sgqst/pauli.hpp"
#include "sgqst/state.hpp"

using namespace sgqst;

namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

CMatrix diag(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Index>(values.size()));
  Index k = 0;
  for (double x : values) v[k++] = x;
  return v.cast<cplx>().asDiagonal();
}

}  // namespace

TEST_CASE("eigh basics") {
  const auto id = eigh(CMatrix::Identity(4, 4));
  CHECK((id.values.array() - 1.0).abs().maxCoeff() < 1e-15);

  const auto z = eigh(to_matrix(PauliString::parse("Z")));
  CHECK(z.values[0] == doctest::Approx(-1.0));
  CHECK(z.values[1] == doctest::Approx(1.0));

  CounterRng rng(3);
  for (int t = 0; t < 10; ++t) {
    const CMatrix h = oracle::random_hermitian(rng, 8);
    const auto e = eigh(h);
    const CMatrix back = e.vectors * e.values.cast<cplx>().asDiagonal() * e.vectors.adjoint();
    CHECK(max_abs(back - h) <= 1e-12);
    CHECK(std::is_sorted(e.values.data(), e.values.data() + e.values.size()));
  }
}

TEST_CASE("eigh rejects bad input") {
  CMatrix nh(2, 2);
  nh << 1, 2, 0, 1;
  CHECK_FALSE(is_hermitian(nh));
  CHECK_THROWS_AS(eigh(nh), std::invalid_argument);
  CHECK_THROWS_AS(eigh(CMatrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("expm_hermitian") {
  CHECK(max_abs(expm_hermitian(CMatrix::Zero(4, 4)) - CMatrix::Identity(4, 4)) < 1e-15);
  CHECK(max_abs(expm_hermitian(diag({std::log(2.0), 0.0})) - diag({2.0, 1.0})) < 1e-14);

  CounterRng rng(17);
  for (int t = 0; t < 20; ++t) {
    CMatrix h = oracle::random_hermitian(rng, 8);
    h *= 10.0 / h.norm();
    const CMatrix e = expm_hermitian(h);
    CHECK(max_abs(e * expm_hermitian(-h) - CMatrix::Identity(8, 8)) < 1e-9);
    const CMatrix ref = oracle::expm_taylor(h);
    CHECK(max_abs(e - ref) / max_abs(ref) < 1e-11);
  }
  CHECK_THROWS_AS(expm_hermitian(diag({701.0, 0.0})), std::overflow_error);
  CHECK_NOTHROW(expm_hermitian(diag({699.0, 0.0})));
}

TEST_CASE("sqrtm_psd") {
  CHECK(max_abs(sqrtm_psd(CMatrix::Identity(3, 3)) - CMatrix::Identity(3, 3)) < 1e-15);
  CHECK(max_abs(sqrtm_psd(diag({4.0, 9.0})) - diag({2.0, 3.0})) < 1e-14);
  const CMatrix g = ghz(3).matrix();
  CHECK(max_abs(sqrtm_psd(g) - g) < 1e-12);

  CounterRng rng(8);
  const CMatrix rho = oracle::random_density(rng, 8);
  const CMatrix s = sqrtm_psd(rho);
  CHECK(max_abs(s * s - rho) < 1e-13);
  CHECK_THROWS_AS(sqrtm_psd(diag({1.0, -1e-6})), std::domain_error);
  CHECK_NOTHROW(sqrtm_psd(diag({1.0, -1e-12})));
}

TEST_CASE("exponential divided difference") {
  CHECK(exp_divided_difference(0.0, 0.0) == doctest::Approx(1.0));
  CHECK(exp_divided_difference(1.0, 1.0 + 1e-12) == doctest::Approx(std::exp(1.0)));
  CHECK(exp_divided_difference(2.0, -1.0) == doctest::Approx((std::exp(2.0) - std::exp(-1.0)) / 3.0).epsilon(1e-14));
  CHECK(exp_divided_difference(-3.0, 5.0) == exp_divided_difference(5.0, -3.0));
  // just above the degenerate gap the expm1 form stays accurate
  const double a = 0.3, b = 0.3 + 2e-9;
  CHECK(exp_divided_difference(a, b) == doctest::Approx(std::exp(a + 1e-9)).epsilon(1e-12));
}

TEST_CASE("Frechet derivative") {
  CounterRng rng(21);
  const CMatrix v = oracle::random_hermitian(rng, 4);
  CHECK(max_abs(frechet_expm(CMatrix::Zero(4, 4), v) - v) < 1e-14);

  // commuting diagonal case
  const CMatrix h = diag({0.5, -1.0, 2.0});
  const CMatrix vd = diag({1.0, 2.0, -3.0});
  const CMatrix d = frechet_expm(h, vd);
  CHECK(d(0, 0).real() == doctest::Approx(std::exp(0.5) * 1.0));
  CHECK(d(1, 1).real() == doctest::Approx(std::exp(-1.0) * 2.0));
  CHECK(d(2, 2).real() == doctest::Approx(std::exp(2.0) * -3.0));
  CHECK(std::abs(d(0, 1)) < 1e-15);

  // degenerate spectrum
  const CMatrix pz = to_matrix(PauliString::parse("ZI"));
  const CMatrix vr = oracle::random_hermitian(rng, 4);
  const double hstep = 1e-5;
  const CMatrix fd_deg = (oracle::expm_taylor(pz + hstep * vr) - oracle::expm_taylor(pz - hstep * vr)) / (2 * hstep);
  CHECK(max_abs(frechet_expm(pz, vr) - fd_deg) / max_abs(fd_deg) < 1e-8);

  for (int t = 0; t < 20; ++t) {
    const CMatrix hh = oracle::random_hermitian(rng, 8);
    const CMatrix dir = oracle::random_hermitian(rng, 8);
    const CMatrix fd = (expm_hermitian(hh + hstep * dir) - expm_hermitian(hh - hstep * dir)) / (2 * hstep);
    const CMatrix an = frechet_expm(hh, dir);
    CHECK(max_abs(an - fd) / max_abs(fd) <= 1e-5);

    const CMatrix v1 = oracle::random_hermitian(rng, 8);
    const CMatrix v2 = oracle::random_hermitian(rng, 8);
    const double alpha = rng.uniform(-2, 2);
    const auto eig = eigh(hh);
    const CMatrix lhs = frechet_expm(eig, alpha * v1 + v2);
    const CMatrix rhs = alpha * frechet_expm(eig, v1) + frechet_expm(eig, v2);
    CHECK(max_abs(lhs - rhs) <= 1e-10 * std::max(1.0, max_abs(lhs)));
  }
}

TEST_CASE("simplex projection") {
  Eigen::VectorXd v(3);
  v << 0.2, 0.3, 0.5;
  CHECK((project_to_simplex(v) - v).norm() < 1e-15);
  v << 1.2, -0.2, 0.0;
  const auto p = project_to_simplex(v);
  CHECK(p[0] == doctest::Approx(1.0));
  CHECK(p[1] == 0.0);
  CHECK(p[2] == 0.0);
  CHECK(project_to_simplex(Eigen::VectorXd::Zero(4)).isApprox(Eigen::VectorXd::Constant(4, 0.25)));
}

TEST_CASE("project_to_density") {
  CounterRng rng(31);
  const CMatrix rho = oracle::random_density(rng, 4);
  CHECK(max_abs(project_to_density(rho).matrix() - rho) < 1e-12);
  CHECK(max_abs(project_to_density(diag({1.2, -0.2})).matrix() - diag({1.0, 0.0})) < 1e-15);
  CHECK(max_abs(project_to_density(CMatrix::Zero(8, 8)).matrix() - CMatrix::Identity(8, 8) / 8.0) < 1e-15);

  for (int t = 0; t < 20; ++t) {
    const CMatrix a = oracle::random_hermitian(rng, 4);
    const CMatrix p1 = project_to_density(a).matrix();
    const CMatrix p2 = project_to_density(p1).matrix();
    CHECK(max_abs(p2 - p1) <= 1e-12);
    CHECK(std::abs(p1.trace() - cplx(1.0)) <= 1e-12);
    CHECK(eigh(p1).values.minCoeff() >= -1e-12);
  }
}

TEST_CASE("projection is Frobenius optimal against random feasible points") {
  CounterRng rng(77);
  for (int t = 0; t < 10; ++t) {
    const CMatrix a = oracle::random_hermitian(rng, 4);
    const double best = (project_to_density(a).matrix() - a).norm();
    for (int k = 0; k < 200; ++k) {
      const CMatrix rho = oracle::random_density(rng, 4, 1 + k % 4);
      CHECK(best <= (rho - a).norm() + 1e-12);
    }
  }
}
