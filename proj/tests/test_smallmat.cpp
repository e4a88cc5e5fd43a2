#include <random>

#include <Eigen/Dense>

#include "doctest.h"
#include "constrained_oracle.hpp"
#include "oracles.hpp"
#include "relaxsim/errors.hpp"
#include "relaxsim/smallmat.hpp"

using namespace relaxsim;

namespace {

double max_abs_diff(const Vec& a, const Vec& b) { return (a - b).norm_inf(); }

}  // namespace

TEST_CASE("vector and matrix arithmetic") {
  const Vec v{1.0, -2.0, 3.0};
  CHECK(v.size() == 3);
  CHECK(v.norm_inf() == 3.0);
  CHECK(dot(v, v) == doctest::Approx(14.0));
  CHECK((v + v)[1] == -4.0);
  const Mat m{{1.0, 2.0}, {3.0, 4.0}};
  CHECK((m * Vec{1.0, 1.0}) == Vec{3.0, 7.0});
  CHECK((m * Mat::identity(2)) == m);
  CHECK(m.transpose()(0, 1) == 3.0);
  CHECK(m.norm_inf() == 7.0);
  CHECK(m.norm_one() == 6.0);
}

TEST_CASE("solve_dense examples") {
  const Vec b{0.3, -1.0, 2.0};
  CHECK(solve_dense(Mat::identity(3), b) == b);
  const Vec x = solve_dense(Mat::diagonal(Vec{2.0, 4.0}), Vec{2.0, 8.0});
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] == doctest::Approx(2.0));
  CHECK_THROWS_AS(solve_dense(Mat{{1.0, 2.0}, {2.0, 4.0}}, Vec{1.0, 1.0}), SingularityError);
}

TEST_CASE("solve_dense agrees with an elimination oracle on random 4x4 systems") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    Mat a(4, 4);
    oracle::Matrix oa(4, std::vector<double>(4));
    Vec b(4);
    std::vector<double> ob(4);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) oa[i][j] = a(i, j) = (i == j ? 3.0 : 0.0) + entry(rng);
      ob[i] = b[i] = entry(rng);
    }
    const Vec x = solve_dense(a, b);
    const auto ox = oracle::gauss_solve(oa, ob);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(x[i] - ox[i]) <= 1e-12);
    CHECK((a * x - b).norm() <= 1e-12 * (1.0 + b.norm()));
    // solve_dense(A, A x) recovers x
    const Vec back = solve_dense(a, a * x);
    CHECK(max_abs_diff(back, x) <= 1e-11 * (1.0 + x.norm_inf()));
  }
}

TEST_CASE("spectral_radius_bound") {
  CHECK(spectral_radius_bound(Mat::zeros(3, 3)) == 0.0);
  CHECK(spectral_radius_bound(Mat::diagonal(Vec{1.0, -3.0})) >= 3.0);
  // Euler at rho = 2 with p = rho^2: eigenvalues +-2.
  CHECK(spectral_radius_bound(Mat{{0.0, 1.0}, {4.0, 0.0}}) >= 2.0);
  CHECK(spectral_radius_bound(Mat{{0.0, 1.0}, {4.0, 0.0}}) == doctest::Approx(2.0));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> entry(-2.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    Mat a(4, 4);
    Eigen::Matrix4d e;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) e(i, j) = a(i, j) = entry(rng);
    const double rho = e.eigenvalues().cwiseAbs().maxCoeff();
    CHECK(spectral_radius_bound(a) >= rho * (1.0 - 1e-12));
  }
}

TEST_CASE("constrained_solve examples") {
  const Vec x = constrained_solve(Mat{{0.0, 0.0}, {0.0, 1.0}}, Mat{{1.0, 0.0}}, Vec{0.0, 3.0});
  CHECK(x[0] == doctest::Approx(0.0));
  CHECK(x[1] == doctest::Approx(3.0));

  const Vec zero = constrained_solve(Mat{{0.0, 0.0}, {0.0, 1.0}}, Mat{{1.0, 0.0}}, Vec{0.0, 0.0});
  CHECK(zero.norm() == 0.0);

  // M1 corrector system at tau = 1.
  const Mat b{{1.0, 0.0, -4.0}, {0.0, 1.0, 0.0}, {-1.0, 0.0, 4.0}};
  const Vec u1 = constrained_solve(b, Mat{{1.0, 0.0, 1.0}}, Vec{0.0, 0.4, 0.0});
  CHECK(std::abs(u1[0]) <= 1e-14);
  CHECK(u1[1] == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(std::abs(u1[2]) <= 1e-14);
}

TEST_CASE("constrained_solve rejects incompatible and singular systems") {
  CHECK_THROWS_AS(constrained_solve(Mat{{0.0, 0.0}, {0.0, 1.0}}, Mat{{1.0, 0.0}}, Vec{1.0, 3.0}), CompatibilityError);
  // ker A has dimension 2 but Q has one row: [A; Q] is rank deficient.
  CHECK_THROWS_AS(constrained_solve(Mat::zeros(2, 2), Mat{{1.0, 0.0}}, Vec{0.0, 0.0}), SingularityError);
}

TEST_CASE("constrained_solve on structured random instances") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto inst = oracle::structured_instance(rng);
    const Vec x = constrained_solve(inst.a, inst.q, inst.b);
    CHECK((inst.a * x - inst.b).norm() <= 1e-10 * (1.0 + inst.b.norm()));
    CHECK((inst.q * x).norm() <= 1e-10 * (1.0 + x.norm()));
    CHECK(max_abs_diff(x, oracle::stacked_least_squares(inst)) <= 1e-9);
  }
}

TEST_CASE("numerical_rank") {
  CHECK(numerical_rank(Mat{{1.0, 0.0, 1.0}}) == 1);
  CHECK(numerical_rank(Mat{{1.0, 2.0}, {2.0, 4.0}}) == 1);
  CHECK(numerical_rank(Mat::identity(4)) == 4);
}
