// Grey M1 moment model of radiative transfer coupled to a temperature:
// U = (e, f, tau), u = e + tau, E(u) = (tau^4, 0, tau).

#include <cmath>
#include <sstream>

#include "detail.hpp"
#include "relaxsim/errors.hpp"
#include "relaxsim/models.hpp"

namespace relaxsim {

double eddington_chi(double xi) {
  if (!(std::abs(xi) <= 1.0)) {
    std::ostringstream os;
    os << "Eddington factor needs |f/e| <= 1, got " << xi;
    throw DomainError(os.str());
  }
  const double xi2 = xi * xi;
  return (3.0 + 4.0 * xi2) / (5.0 + 2.0 * std::sqrt(4.0 - 3.0 * xi2));
}

double eddington_chi_prime(double xi) {
  if (!(std::abs(xi) <= 1.0)) throw DomainError("Eddington factor derivative needs |f/e| <= 1");
  const double xi2 = xi * xi;
  const double s = std::sqrt(4.0 - 3.0 * xi2);
  const double den = 5.0 + 2.0 * s;
  return (8.0 * xi * den + 6.0 * xi * (3.0 + 4.0 * xi2) / s) / (den * den);
}

double m1_temperature(double u) {
  if (!(u > 0.0) || !std::isfinite(u)) {
    std::ostringstream os;
    os << "M1 reduced variable must be positive, got " << u;
    throw DomainError(os.str());
  }
  // Newton from the right of the root; g(tau) = tau + tau^4 - u is convex and
  // increasing so the iterates decrease monotonically.
  double tau = std::min(u, std::sqrt(std::sqrt(u)));
  for (int it = 0; it < 200; ++it) {
    const double t3 = tau * tau * tau;
    const double next = tau - (tau + t3 * tau - u) / (1.0 + 4.0 * t3);
    if (!(next < tau)) break;
    tau = next;
  }
  return tau;
}

namespace {

double m1_diffusivity(const Vec& ul, const Vec& ur) {
  const double tau = 0.5 * (m1_temperature(ul[0]) + m1_temperature(ur[0]));
  const double t3 = tau * tau * tau;
  return (4.0 / 3.0) * t3 / (1.0 + 4.0 * t3);
}

}  // namespace

SystemDescriptor make_m1(const M1Params&) {
  SystemDescriptor s;
  s.name = "m1";
  s.N = 3;
  s.n = 1;
  s.m = 1;
  s.Q = Mat{{1.0, 0.0, 1.0}};

  s.flux = [](const Vec& U) {
    const double e = U[0], f = U[1];
    return Vec{f, eddington_chi(f / e) * e, 0.0};
  };
  s.relax = [](const Vec& U) {
    const double e = U[0], f = U[1], tau = U[2];
    const double t4 = tau * tau * tau * tau;
    return Vec{e - t4, f, t4 - e};
  };
  s.equilibrium = [](const Vec& u) {
    const double tau = m1_temperature(u[0]);
    // e = tau^4 evaluated exactly as in relax, so R(E(u)) = 0 bit for bit.
    return Vec{tau * tau * tau * tau, 0.0, tau};
  };
  s.admissible_fn = [](const Vec& U) { return U[0] > 0.0 && U[2] > 0.0 && std::abs(U[1]) <= U[0]; };

  s.jac_flux = [](const Vec& U) {
    const double xi = U[1] / U[0];
    const double chi = eddington_chi(xi), dchi = eddington_chi_prime(xi);
    return Mat{{0.0, 1.0, 0.0}, {chi - xi * dchi, dchi, 0.0}, {0.0, 0.0, 0.0}};
  };
  s.jac_relax_at_equilibrium = [](const Vec& u) {
    const double tau = m1_temperature(u[0]);
    const double d = 4.0 * tau * tau * tau;
    return Mat{{1.0, 0.0, -d}, {0.0, 1.0, 0.0}, {-1.0, 0.0, d}};
  };

  s.sigma_rule = [](const Vec& left, const Vec& right, double b, double) {
    const Mat q{{1.0, 0.0, 1.0}};
    return detail::scalar_sigma(m1_diffusivity(q * left, q * right), b, 1.0, 3);
  };
  s.limit_diffusivity = [](const Vec& ul, const Vec& ur, double) { return Mat{{m1_diffusivity(ul, ur)}}; };
  return s;
}

}  // namespace relaxsim
