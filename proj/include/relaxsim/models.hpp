#pragma once

// The four shipped relaxation systems and their closed-form ingredients:
// Eddington closure, AP correction matrices, correctors and limit
// diffusivities.

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "relaxsim/system.hpp"

namespace relaxsim {

struct EulerFrictionParams {
  double eta = 2.0;  // p(rho) = c_p rho^eta
  double c_p = 1.0;

  double pressure(double rho) const;
  double dpressure(double rho) const;
  double internal_energy(double rho) const;  // e' = p / rho^2
  //! (p(r) - p(l)) / (r - l), falling back to p' at the midpoint when the two
  //! densities agree to 1e-7 relative.
  double divided_difference(double rho_left, double rho_right) const;
  void validate() const;
};

struct M1Params {};

struct CoupledParams {
  double kappa = 2.0;    // friction
  double sigma_c = 1.0;  // opacity
  double c_p = 1e-3;
  double eta = 2.0;

  EulerFrictionParams fluid() const { return {eta, c_p}; }
  double stiffness() const { return std::max(kappa, sigma_c); }
  void validate() const;
};

struct ShallowWaterParams {
  double g = 1.0;
  double kappa0 = 1.0;  // kappa(h) = kappa0 / h
  double delta = 1e-8;  // floor on |dh/dx|

  double kappa(double h) const { return kappa0 / h; }
  void validate() const;
};

// ---------------------------------------------------------------------------
// Closed-form pieces

//! chi(xi) = (3 + 4 xi^2) / (5 + 2 sqrt(4 - 3 xi^2)); DomainError if |xi| > 1.
double eddington_chi(double xi);
double eddington_chi_prime(double xi);

//! Temperature tau > 0 with tau + tau^4 = u (Newton iteration).
double m1_temperature(double u);

//! (b^2 / m_{i+1/2} - 1) I_2 with m the divided difference of the pressure.
Mat euler_sigma(double rho_left, double rho_right, double b, const EulerFrictionParams& p);

//! 4x4 correction for the coupled model: s1 at (0,0), -s2 at (0,2), s3 at
//! (2,2), each carrying a factor b^2 so that the scheme's limit matches the
//! coupled diffusion system for every interface speed.
Mat coupled_sigma(const Vec& left, const Vec& right, double b, const CoupledParams& p);

//! (0, beta) with beta = -sqrt(h) grad_h / (kappa(h) sqrt(max(|grad_h|, delta))).
Vec sw_corrector(double h, double grad_h, const ShallowWaterParams& p);

// ---------------------------------------------------------------------------
// Descriptors and registry

SystemDescriptor make_euler_friction(const EulerFrictionParams& p = {});
SystemDescriptor make_m1(const M1Params& p = {});
SystemDescriptor make_coupled(const CoupledParams& p = {});
SystemDescriptor make_shallow_water(const ShallowWaterParams& p = {});

const std::vector<std::string>& model_names();

//! Builds a registered model; unknown keys in `params` raise ConfigError.
SystemDescriptor make_model(std::string_view name, const nlohmann::json& params = nlohmann::json::object());

//! Random admissible reduced states u (count of them) for the named model,
//! drawn from fixed per-model boxes; deterministic for a given seed.
std::vector<Vec> random_reduced_states(const SystemDescriptor& sys, std::uint64_t seed, int count);

//! Random admissible full states U, generally off equilibrium.
std::vector<Vec> random_states(const SystemDescriptor& sys, std::uint64_t seed, int count);

//! Interface diffusion matrix of the limit equation. DomainError when either
//! reduced state is outside the model's admissible reduced set.
Mat limit_diffusivity(const SystemDescriptor& sys, const Vec& u_left, const Vec& u_right, double dx);

}  // namespace relaxsim
