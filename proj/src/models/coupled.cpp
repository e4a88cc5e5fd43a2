// Euler with friction coupled to the M1 radiative block through the flux:
// U = (rho, rho v, e, f), u = (rho, e).

#include <cmath>

#include "relaxsim/errors.hpp"
#include "relaxsim/models.hpp"

namespace relaxsim {

void CoupledParams::validate() const {
  if (!(kappa > 0.0)) throw ConfigError("coupled-euler-m1: kappa must be > 0");
  if (!(sigma_c > 0.0)) throw ConfigError("coupled-euler-m1: sigma_c must be > 0");
  fluid().validate();
}

Mat coupled_sigma(const Vec& left, const Vec& right, double b, const CoupledParams& p) {
  const double drho_dp = 1.0 / p.fluid().divided_difference(left[0], right[0]);
  const double ghat = p.stiffness();
  const double b2 = b * b;
  Mat s(4, 4);
  s(0, 0) = p.kappa * b2 * drho_dp / ghat - 1.0;
  s(0, 2) = -p.sigma_c * b2 * drho_dp / ghat;
  s(2, 2) = 3.0 * p.sigma_c * b2 / ghat - 1.0;
  return s;
}

SystemDescriptor make_coupled(const CoupledParams& p) {
  p.validate();
  const EulerFrictionParams fluid = p.fluid();
  SystemDescriptor s;
  s.name = "coupled-euler-m1";
  s.N = 4;
  s.n = 2;
  s.m = 1;
  s.Q = Mat{{1.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 0.0}};
  s.stiffness = p.stiffness();

  s.flux = [fluid](const Vec& U) {
    const double rho = U[0], mom = U[1], e = U[2], f = U[3];
    return Vec{mom, mom * mom / rho + fluid.pressure(rho), f, eddington_chi(f / e) * e};
  };
  s.relax = [p](const Vec& U) {
    const double mom = U[1], f = U[3];
    return Vec{0.0, p.kappa * mom - p.sigma_c * f, 0.0, p.sigma_c * f};
  };
  s.equilibrium = [](const Vec& u) { return Vec{u[0], 0.0, u[1], 0.0}; };
  s.admissible_fn = [](const Vec& U) { return U[0] > 0.0 && U[2] > 0.0 && std::abs(U[3]) <= U[2]; };

  s.jac_flux = [fluid](const Vec& U) {
    const double v = U[1] / U[0];
    const double xi = U[3] / U[2];
    const double chi = eddington_chi(xi), dchi = eddington_chi_prime(xi);
    Mat a(4, 4);
    a(0, 1) = 1.0;
    a(1, 0) = fluid.dpressure(U[0]) - v * v;
    a(1, 1) = 2.0 * v;
    a(2, 3) = 1.0;
    a(3, 2) = chi - xi * dchi;
    a(3, 3) = dchi;
    return a;
  };
  s.jac_relax_at_equilibrium = [p](const Vec&) {
    Mat b(4, 4);
    b(1, 1) = p.kappa;
    b(1, 3) = -p.sigma_c;
    b(3, 3) = p.sigma_c;
    return b;
  };
  // No closed-form entropy is available for this coupling; the hook carries
  // a symmetrizer of A on the equilibrium manifold (fluid entropy Hessian and
  // diag(1, 3)/e for the radiative block), which is all the limit-matrix
  // assembly consumes.
  s.entropy_hessian = [fluid](const Vec& U) {
    const double rho = U[0], mom = U[1], e = U[2];
    Mat h(4, 4);
    h(0, 0) = mom * mom / (rho * rho * rho) + fluid.dpressure(rho) / rho;
    h(0, 1) = h(1, 0) = -mom / (rho * rho);
    h(1, 1) = 1.0 / rho;
    h(2, 2) = 1.0 / e;
    h(3, 3) = 3.0 / e;
    return h;
  };

  s.sigma_rule = [p](const Vec& left, const Vec& right, double b, double) {
    return coupled_sigma(left, right, b, p);
  };
  s.limit_diffusivity = [p, fluid](const Vec& ul, const Vec& ur, double) {
    return Mat{{fluid.divided_difference(ul[0], ur[0]) / p.kappa, 1.0 / (3.0 * p.kappa)},
               {0.0, 1.0 / (3.0 * p.sigma_c)}};
  };
  return s;
}

}  // namespace relaxsim
