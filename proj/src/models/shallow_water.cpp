// Shallow water with quadratic friction kappa(h)^2 g hv|hv| and m = 2.

#include <cmath>

#include "detail.hpp"
#include "relaxsim/errors.hpp"
#include "relaxsim/models.hpp"

namespace relaxsim {

void ShallowWaterParams::validate() const {
  if (!(g > 0.0)) throw ConfigError("shallow-water: g must be > 0");
  if (!(kappa0 > 0.0)) throw ConfigError("shallow-water: kappa0 must be > 0");
  if (!(delta > 0.0)) throw ConfigError("shallow-water: delta must be > 0");
}

Vec sw_corrector(double h, double grad_h, const ShallowWaterParams& p) {
  const double beta = -std::sqrt(h) * grad_h / (p.kappa(h) * std::sqrt(std::max(std::abs(grad_h), p.delta)));
  return Vec{0.0, beta};
}

namespace {

double sw_diffusivity(const Vec& ul, const Vec& ur, double dx, const ShallowWaterParams& p) {
  const double h = 0.5 * (ul[0] + ur[0]);
  const double grad = std::abs(ur[0] - ul[0]) / dx;
  return std::sqrt(h) / (p.kappa(h) * std::sqrt(std::max(grad, p.delta)));
}

}  // namespace

SystemDescriptor make_shallow_water(const ShallowWaterParams& p) {
  p.validate();
  SystemDescriptor s;
  s.name = "shallow-water";
  s.N = 2;
  s.n = 1;
  s.m = 2;
  s.Q = Mat{{1.0, 0.0}};

  s.flux = [p](const Vec& U) {
    const double h = U[0], q = U[1];
    return Vec{q, q * q / h + 0.5 * p.g * h * h};
  };
  s.relax = [p](const Vec& U) {
    const double k = p.kappa(U[0]);
    return Vec{0.0, k * k * p.g * U[1] * std::abs(U[1])};
  };
  s.equilibrium = [](const Vec& u) { return Vec{u[0], 0.0}; };
  s.admissible_fn = [](const Vec& U) { return U[0] > 0.0; };

  s.jac_flux = [p](const Vec& U) {
    const double v = U[1] / U[0];
    return Mat{{0.0, 1.0}, {p.g * U[0] - v * v, 2.0 * v}};
  };
  s.jac_relax_at_equilibrium = [](const Vec&) { return Mat::zeros(2, 2); };

  s.entropy = [p](const Vec& U) {
    const double h = U[0], q = U[1];
    return 0.5 * q * q / h + 0.5 * p.g * h * h;
  };
  s.entropy_flux = [p](const Vec& U) {
    const double h = U[0], v = U[1] / U[0];
    return (0.5 * h * v * v + p.g * h * h) * v;
  };
  s.entropy_hessian = [p](const Vec& U) {
    const double h = U[0], q = U[1];
    return Mat{{q * q / (h * h * h) + p.g, -q / (h * h)}, {-q / (h * h), 1.0 / h}};
  };
  // dF(E(u))/dx = (0, g h dh/dx) carries the gradient the corrector needs.
  s.nonlinear_corrector = [p](const Vec& u, const Vec& grad_flux) {
    const double h = u[0];
    return sw_corrector(h, grad_flux[1] / (p.g * h), p);
  };

  s.sigma_rule = [p](const Vec& left, const Vec& right, double b, double dx) {
    return detail::scalar_sigma(sw_diffusivity(Vec{left[0]}, Vec{right[0]}, dx, p), b, 1.0, 2);
  };
  s.limit_diffusivity = [p](const Vec& ul, const Vec& ur, double dx) { return Mat{{sw_diffusivity(ul, ur, dx, p)}}; };
  return s;
}

}  // namespace relaxsim
