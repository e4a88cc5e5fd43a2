// Isentropic Euler equations with linear friction:
//   eps d(rho)/dt   + d(rho v)/dx           = 0
//   eps d(rho v)/dt + d(rho v^2 + p)/dx     = -(rho v) / eps

#include <cmath>

#include "relaxsim/errors.hpp"
#include "relaxsim/models.hpp"

namespace relaxsim {

double EulerFrictionParams::pressure(double rho) const { return c_p * std::pow(rho, eta); }

double EulerFrictionParams::dpressure(double rho) const { return c_p * eta * std::pow(rho, eta - 1.0); }

double EulerFrictionParams::internal_energy(double rho) const {
  return c_p * std::pow(rho, eta - 1.0) / (eta - 1.0);
}

double EulerFrictionParams::divided_difference(double rho_left, double rho_right) const {
  const double jump = rho_right - rho_left;
  if (std::abs(jump) <= 1e-7 * std::max(std::abs(rho_left), std::abs(rho_right))) {
    return dpressure(0.5 * (rho_left + rho_right));
  }
  return (pressure(rho_right) - pressure(rho_left)) / jump;
}

void EulerFrictionParams::validate() const {
  if (!(eta > 1.0)) throw ConfigError("euler-friction: eta must be > 1");
  if (!(c_p > 0.0)) throw ConfigError("euler-friction: c_p must be > 0");
}

Mat euler_sigma(double rho_left, double rho_right, double b, const EulerFrictionParams& p) {
  const double m = p.divided_difference(rho_left, rho_right);
  return (b * b / m - 1.0) * Mat::identity(2);
}

SystemDescriptor make_euler_friction(const EulerFrictionParams& p) {
  p.validate();
  SystemDescriptor s;
  s.name = "euler-friction";
  s.N = 2;
  s.n = 1;
  s.m = 1;
  s.Q = Mat{{1.0, 0.0}};

  s.flux = [p](const Vec& U) {
    const double rho = U[0], mom = U[1];
    return Vec{mom, mom * mom / rho + p.pressure(rho)};
  };
  s.relax = [](const Vec& U) { return Vec{0.0, U[1]}; };
  s.equilibrium = [](const Vec& u) { return Vec{u[0], 0.0}; };
  s.admissible_fn = [](const Vec& U) { return U[0] > 0.0; };

  s.jac_flux = [p](const Vec& U) {
    const double v = U[1] / U[0];
    return Mat{{0.0, 1.0}, {p.dpressure(U[0]) - v * v, 2.0 * v}};
  };
  s.jac_relax_at_equilibrium = [](const Vec&) { return Mat{{0.0, 0.0}, {0.0, 1.0}}; };

  s.entropy = [p](const Vec& U) {
    const double rho = U[0], mom = U[1];
    return 0.5 * mom * mom / rho + rho * p.internal_energy(rho);
  };
  s.entropy_flux = [p](const Vec& U) {
    const double rho = U[0], v = U[1] / U[0];
    return (0.5 * rho * v * v + rho * p.internal_energy(rho) + p.pressure(rho)) * v;
  };
  s.entropy_hessian = [p](const Vec& U) {
    const double rho = U[0], mom = U[1];
    return Mat{{mom * mom / (rho * rho * rho) + p.dpressure(rho) / rho, -mom / (rho * rho)},
               {-mom / (rho * rho), 1.0 / rho}};
  };

  s.sigma_rule = [p](const Vec& left, const Vec& right, double b, double) {
    return euler_sigma(left[0], right[0], b, p);
  };
  s.limit_diffusivity = [p](const Vec& ul, const Vec& ur, double) {
    return Mat{{p.divided_difference(ul[0], ur[0])}};
  };
  return s;
}

}  // namespace relaxsim
