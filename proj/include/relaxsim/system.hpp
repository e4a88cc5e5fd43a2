#pragma once

// The structural description of a relaxation system
//
//   eps dU/dt + dF(U)/dx = -R(U) / eps^m
//
// together with every hook the finite-volume scheme and the asymptotic
// machinery consume.

#include <functional>
#include <string>
#include <vector>

#include "relaxsim/smallmat.hpp"

namespace relaxsim {

using VecFn = std::function<Vec(const Vec&)>;
using MatFn = std::function<Mat(const Vec&)>;
using ScalarFn = std::function<double(const Vec&)>;

//! sigma_{i+1/2} from the two interface states, the interface speed b and dx.
using SigmaRule = std::function<Mat(const Vec& left, const Vec& right, double b, double dx)>;

//! n x n interface diffusion matrix of the limit equation from the reduced
//! states on either side of an interface.
using DiffusivityRule = std::function<Mat(const Vec& u_left, const Vec& u_right, double dx)>;

//! First corrector U1 from u and J = dF(E(u))/dx, for models (m > 1) where it
//! is not the solution of a linear constrained system.
using CorrectorRule = std::function<Vec(const Vec& u, const Vec& grad_flux)>;

struct SystemDescriptor {
  std::string name;
  int N = 0;  // state dimension
  int n = 0;  // equilibrium dimension, n < N
  int m = 1;  // relaxation exponent

  VecFn flux;
  VecFn relax;
  Mat Q;  // n x N, Q R(U) = 0
  VecFn equilibrium;  // u -> E(u)
  std::function<bool(const Vec&)> admissible_fn;

  // Optional hooks; empty std::function means "not provided".
  MatFn jac_flux;                  // A(U)
  MatFn jac_relax_at_equilibrium;  // u -> B(E(u))
  ScalarFn entropy;                // Phi(U)
  ScalarFn entropy_flux;           // Psi(U)
  MatFn entropy_hessian;           // D^2 Phi(U)
  CorrectorRule nonlinear_corrector;

  //! gamma = stiffness / eps. Defaults to 1 (gamma = 1/eps).
  double stiffness = 1.0;
  SigmaRule sigma_rule;
  DiffusivityRule limit_diffusivity;

  double gamma(double eps) const { return stiffness / eps; }
  bool admissible(const Vec& U) const;
  Vec reduce(const Vec& U) const { return Q * U; }
};

//! A(U): analytic hook when present, otherwise jac_flux_fd with a step of
//! 1e-6 scaled by component magnitude.
Mat flux_jacobian(const SystemDescriptor& sys, const Vec& U);

//! Central finite-difference Jacobian of the flux. Throws AdmissibilityError
//! when a perturbed state leaves the admissible set.
Mat jac_flux_fd(const SystemDescriptor& sys, const Vec& U, double h);

//! B(E(u)): analytic hook when present, otherwise central differences of R at
//! E(u).
Mat relax_jacobian_at_equilibrium(const SystemDescriptor& sys, const Vec& u);

//! D^2 Phi(U): analytic hook, otherwise second differences of Phi. Throws
//! NotAvailable when the model carries neither.
Mat entropy_hessian(const SystemDescriptor& sys, const Vec& U);

bool has_entropy_hessian(const SystemDescriptor& sys);

struct ValidationReport {
  double relax_in_kernel = 0.0;      // max |Q R(U)|
  double equilibrium_reduces = 0.0;  // max |Q E(u) - u|
  double equilibrium_at_rest = 0.0;  // max |R(E(u))|
  double flux_constraint = 0.0;      // max |Q F(E(u))|
  int q_rank = 0;
  bool q_full_rank = false;
  double tolerance = 1e-10;

  double worst() const;
  bool passed() const;
};

//! Per-assumption maximum violation over the given samples of reduced states
//! u and full states U.
ValidationReport validate_descriptor(const SystemDescriptor& sys, const std::vector<Vec>& reduced_samples,
                                     const std::vector<Vec>& state_samples);

}  // namespace relaxsim
