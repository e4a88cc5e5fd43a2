#include <cmath>
#include <random>

#include "doctest.h"
#include "relaxsim/errors.hpp"
#include "relaxsim/limits.hpp"
#include "relaxsim/models.hpp"

using namespace relaxsim;

namespace {

// dF(E(u(x)))/dx at a point where u has gradient v, by the chain rule through
// central differences of F o E.
Vec grad_flux(const SystemDescriptor& sys, const Vec& u, const Vec& v) {
  const double h = 1e-6;
  return (0.5 / h) * (sys.flux(sys.equilibrium(u + h * v)) - sys.flux(sys.equilibrium(u - h * v)));
}

Field constant_field(int cells, const Vec& u) { return Field(cells, u); }

Vec sum(const Field& f) {
  Vec s = Vec::zeros(f[0].size());
  for (const Vec& v : f) s += v;
  return s;
}

}  // namespace

TEST_CASE("corrector examples") {
  const auto euler = make_euler_friction();
  const auto c = corrector(euler, Vec{1.5}, Vec{0.0, 0.7});
  CHECK(c.U1[0] == doctest::Approx(0.0));
  CHECK(c.U1[1] == doctest::Approx(-0.7));
  CHECK(c.d[0] == doctest::Approx(0.7));

  const auto zero = corrector(euler, Vec{1.5}, Vec{0.0, 0.0});
  CHECK(zero.U1.norm_inf() == 0.0);

  // M1 at tau = 1 with tau_x = 0.3: J = dF(E)/dx = (0, (4/3) tau^3 tau_x, 0).
  const auto m1 = make_m1();
  const Vec u{2.0};
  const Vec J{0.0, 0.4, 0.0};
  const auto r = corrector(m1, u, J);
  CHECK(std::abs(r.U1[0]) <= 1e-12);
  CHECK(r.U1[1] == doctest::Approx(-0.4));
  CHECK(std::abs(r.U1[2]) <= 1e-12);
  CHECK(r.d[0] == doctest::Approx(0.4));
  // the same J from the model's own flux
  const Vec J_fd = grad_flux(m1, u, Vec{0.3 * (1.0 + 4.0)});
  CHECK(J_fd[1] == doctest::Approx(0.4).epsilon(1e-8));
}

TEST_CASE("corrector solves the constrained system") {
  for (const auto& name : model_names()) {
    const auto sys = make_model(name);
    if (sys.m != 1) continue;
    CAPTURE(name);
    const auto us = random_reduced_states(sys, 41, 100);
    const auto vs = random_reduced_states(sys, 42, 100);
    for (std::size_t k = 0; k < us.size(); ++k) {
      const Vec J = grad_flux(sys, us[k], vs[k]);
      const auto c = corrector(sys, us[k], J);
      CHECK((sys.Q * c.U1).norm_inf() <= 1e-10 * (1.0 + c.U1.norm_inf()));
      CHECK((relax_jacobian_at_equilibrium(sys, us[k]) * c.U1 + J).norm_inf() <= 1e-10 * (1.0 + J.norm_inf()));
    }
  }
}

TEST_CASE("shallow-water corrector goes through the analytic hook") {
  const auto sys = make_shallow_water();
  const ShallowWaterParams p;
  const Vec u{1.3};
  const auto c = corrector(sys, u, Vec{0.0, p.g * 1.3 * 0.2});
  const Vec direct = sw_corrector(1.3, 0.2, p);
  CHECK(c.U1[1] == doctest::Approx(direct[1]));
  CHECK(c.d[0] == doctest::Approx(-direct[1]));

  SystemDescriptor bare = sys;
  bare.nonlinear_corrector = nullptr;
  CHECK_THROWS_AS(corrector(bare, u, Vec{0.0, 0.1}), NotImplemented);
}

TEST_CASE("effective diffusion matrix") {
  const auto euler = make_euler_friction();
  CHECK(effective_diffusion_matrix(euler, Vec{1.0})(0, 0) == doctest::Approx(2.0).epsilon(1e-6));

  const CoupledParams p;
  const auto coupled = make_coupled(p);
  for (const Vec& u : {Vec{0.2, 1.0}, Vec{1.5, 0.4}, Vec{0.7, 2.2}}) {
    const Mat m = effective_diffusion_matrix(coupled, u);
    CHECK(m(0, 0) == doctest::Approx(p.fluid().dpressure(u[0]) / p.kappa).epsilon(1e-6));
    CHECK(m(0, 1) == doctest::Approx(1.0 / (3.0 * p.kappa)).epsilon(1e-6));
    CHECK(std::abs(m(1, 0)) <= 1e-6);
    CHECK(m(1, 1) == doctest::Approx(1.0 / (3.0 * p.sigma_c)).epsilon(1e-6));
  }

  CHECK_THROWS_AS(effective_diffusion_matrix(make_m1(), Vec{2.0}), NotAvailable);
  CHECK_THROWS_AS(effective_diffusion_matrix(make_shallow_water(), Vec{1.0}), NotAvailable);
}

TEST_CASE("effective diffusion matrix matches the analytic limit") {
  for (const auto& name : {"euler-friction", "coupled-euler-m1"}) {
    CAPTURE(name);
    const auto sys = make_model(name);
    for (const Vec& u : random_reduced_states(sys, 51, 100)) {
      const Mat m = effective_diffusion_matrix(sys, u);
      const Mat ref = limit_diffusivity(sys, u, u, 0.01);
      for (int r = 0; r < sys.n; ++r) {
        for (int c = 0; c < sys.n; ++c) {
          CHECK(std::abs(m(r, c) - ref(r, c)) <= 0.05 * std::abs(ref(r, c)) + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("dissipativity") {
  const auto euler = make_euler_friction();
  CHECK(dissipativity_check(euler, Vec{1.2}, Vec{0.0}) == 0.0);
  CHECK(dissipativity_check(euler, Vec{1.2}, Vec{0.5}) == doctest::Approx(1.2 * 0.25).epsilon(1e-9));

  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> grad(-3.0, 3.0);
  SUBCASE("euler") {
    for (const Vec& u : random_reduced_states(euler, 62, 1000)) {
      CHECK(dissipativity_check(euler, u, Vec{grad(rng)}) >= -1e-10);
    }
  }
  SUBCASE("shallow water") {
    const auto sw = make_shallow_water();
    for (const Vec& u : random_reduced_states(sw, 63, 1000)) {
      CHECK(dissipativity_check(sw, u, Vec{grad(rng)}) >= -1e-10);
    }
  }
  SUBCASE("coupled, radiative energy below 12 rho kappa / sigma") {
    const CoupledParams p;
    const auto sys = make_coupled(p);
    std::uniform_real_distribution<double> rho(0.1, 5.0);
    for (int k = 0; k < 1000; ++k) {
      const double r = rho(rng);
      const double e = std::uniform_real_distribution<double>(0.05, 12.0 * r * p.kappa / p.sigma_c)(rng);
      CHECK(dissipativity_check(sys, Vec{r, e}, Vec{grad(rng), grad(rng)}) >= -1e-10);
    }
  }
}

TEST_CASE("reference diffusion step") {
  const auto euler = make_euler_friction();
  const Grid1D g{3, 1.0, 0.0, Boundary::NeumannOutflow};
  const Field next = diffusion_reference_step(euler, g, {{1.0}, {2.0}, {1.0}}, 0.1);
  CHECK(next[0][0] == doctest::Approx(1.3));
  CHECK(next[1][0] == doctest::Approx(1.4));
  CHECK(next[2][0] == doctest::Approx(1.3));

  const Grid1D g8{8, 0.1, 0.0, Boundary::NeumannOutflow};
  const Field flat = constant_field(8, Vec{1.7});
  CHECK(diffusion_reference_step(euler, g8, flat, 1e-3) == flat);

  CHECK_THROWS_AS(diffusion_reference_step(euler, g, {{1.0}, {2.0}, {1.0}}, 0.2), StabilityError);
  CHECK_THROWS_AS(diffusion_reference_step(euler, g, {{1.0}, {-2.0}, {1.0}}, 0.01), DomainError);

  SUBCASE("periodic sums are preserved") {
    for (const auto& name : model_names()) {
      CAPTURE(name);
      const auto sys = make_model(name);
      const Grid1D gp{32, 0.05, 0.0, Boundary::Periodic};
      // rough data can push the coupled density negative, so perturb a base state mildly
      const Vec base = random_reduced_states(sys, 70, 1)[0];
      std::mt19937_64 rng(71);
      std::uniform_real_distribution<double> jitter(0.9, 1.1);
      Field u(gp.cells, base);
      for (Vec& v : u)
        for (int k = 0; k < sys.n; ++k) v[k] *= jitter(rng);
      for (int step = 0; step < 5; ++step) {
        const auto mats = reference_interface_matrices(sys, gp, u);
        const double dt = 0.9 * diffusion_dt_limit(mats, gp.dx);
        const Vec before = sum(u);
        u = diffusion_stencil_step(sys, gp, u, mats, dt);
        CHECK((sum(u) - before).norm_inf() <= 1e-11 * std::max(1.0, before.norm_inf()));
      }
    }
  }
}

TEST_CASE("discrete asymptotic limit step") {
  const auto euler = make_euler_friction();
  const Grid1D g{16, 0.05, 0.0, Boundary::NeumannOutflow};
  Field u(g.cells);
  for (int i = 0; i < g.cells; ++i) u[i] = Vec{1.0 + 0.5 * std::sin(0.7 * i)};
  const double dt = 0.5 * diffusion_dt_limit(reference_interface_matrices(euler, g, u), g.dx);
  const Field a = diffusion_reference_step(euler, g, u, dt);
  const Field b = discrete_ap_limit_step(euler, g, u, dt);
  for (int i = 0; i < g.cells; ++i) CHECK(a[i][0] == doctest::Approx(b[i][0]).epsilon(1e-12));

  // unit diffusivity: the standard heat stencil
  const std::vector<Mat> unit(g.cells + 1, Mat::identity(1));
  const Field h = diffusion_stencil_step(euler, g, u, unit, 1e-4);
  for (int i = 1; i + 1 < g.cells; ++i) {
    const double expect = u[i][0] + 1e-4 / (g.dx * g.dx) * (u[i + 1][0] - 2.0 * u[i][0] + u[i - 1][0]);
    CHECK(h[i][0] == doctest::Approx(expect).epsilon(1e-14));
  }
  const std::vector<Mat> none(g.cells + 1, Mat::zeros(1, 1));
  CHECK(diffusion_stencil_step(euler, g, u, none, 1.0) == u);
}

TEST_CASE("heat kernel for the radiative energy") {
  // Coupled limit: de/dt = (1/(3 sigma_c)) e_xx, independent of rho.
  const auto sys = make_coupled();
  const Grid1D g{128, 1.0 / 128, 0.0, Boundary::Periodic};
  const double D = 1.0 / 3.0, t = 0.05;
  const std::vector<std::pair<int, double>> modes{{1, 0.4}, {2, -0.2}, {5, 0.1}};
  const auto exact = [&](double x, double time) {
    double e = 1.0;
    for (auto [k, a] : modes) {
      const double w = 2.0 * M_PI * k;
      e += a * std::cos(w * x) * std::exp(-D * w * w * time);
    }
    return e;
  };
  Field u0(g.cells);
  for (int i = 0; i < g.cells; ++i) u0[i] = Vec{1.0, exact(g.center(i), 0.0)};
  DiffusionRunConfig cfg;
  cfg.t_final = t;
  const auto out = run_diffusion(sys, g, u0, cfg);
  REQUIRE(out.snapshots.back().t == t);
  double err = 0.0, amp = 0.0;
  for (int i = 0; i < g.cells; ++i) {
    const double ref = exact(g.center(i), t);
    err = std::max(err, std::abs(out.snapshots.back().cells[i][1] - ref));
    amp = std::max(amp, std::abs(ref - 1.0));
  }
  CHECK(err <= 0.01 * amp);
  CHECK(sum(out.snapshots.back().cells)[1] == doctest::Approx(sum(u0)[1]).epsilon(1e-12));
}

TEST_CASE("diffusion runs") {
  const auto euler = make_euler_friction();
  const Grid1D g{60, 0.05, 0.0, Boundary::NeumannOutflow};
  Field u0(g.cells);
  for (int i = 0; i < g.cells; ++i) u0[i] = Vec{(i >= 24 && i < 36) ? 2.0 : 1.0};

  DiffusionRunConfig cfg;
  cfg.t_final = 0.02;
  cfg.snapshot_times = {0.01};
  const auto out = run_diffusion(euler, g, u0, cfg);
  REQUIRE(out.snapshots.size() == 3);
  CHECK(out.snapshots[1].t == 0.01);
  CHECK(out.snapshots[2].t == 0.02);
  // Neumann copy ghosts give zero boundary flux
  for (const auto& s : out.snapshots) CHECK(sum(s.cells)[0] * g.dx == doctest::Approx(sum(u0)[0] * g.dx).epsilon(1e-12));

  DiffusionRunConfig replay = cfg;
  replay.dt_sequence = out.dt_history;
  replay.solver = LimitSolver::DiscreteApLimit;
  const auto again = run_diffusion(euler, g, u0, replay);
  REQUIRE(again.snapshots.size() == 3);
  for (int i = 0; i < g.cells; ++i) {
    CHECK(again.snapshots[2].cells[i][0] == doctest::Approx(out.snapshots[2].cells[i][0]).epsilon(1e-10));
  }

  cfg.t_final = 0.0;
  CHECK(run_diffusion(euler, g, u0, cfg).snapshots.size() == 1);
  cfg.t_final = 0.02;
  cfg.max_steps = 2;
  CHECK_THROWS_AS(run_diffusion(euler, g, u0, cfg), StabilityError);
}
