#pragma once

// The diffusion side: first correctors, the effective diffusion matrix, its
// dissipativity, and explicit solvers for the limit equations.

#include <vector>

#include "relaxsim/grid.hpp"
#include "relaxsim/scheme.hpp"
#include "relaxsim/system.hpp"

namespace relaxsim {

struct CorrectorResult {
  Vec U1;
  Vec d;  // -Q A(E(u)) U1, so that du/dt = dd/dx
};

//! m = 1: U1 solves B(E(u)) U1 = -grad_flux, Q U1 = 0. m > 1: the model's
//! analytic corrector (NotImplemented when absent). grad_flux is
//! dF(E(u))/dx.
CorrectorResult corrector(const SystemDescriptor& sys, const Vec& u, const Vec& grad_flux);

//! D_u E(u) by central differences with step h (scaled by max(1, |u_k|)).
Mat equilibrium_jacobian(const SystemDescriptor& sys, const Vec& u, double h = 1e-6);

//! M(u) = S L^{-1} D^2Phi A D_uE with S = Q A(E(u)) and L = D^2Phi B, all at
//! E(u); L^{-1} is applied column by column through constrained_solve.
//! Needs m = 1 and an entropy Hessian (NotAvailable otherwise).
Mat effective_diffusion_matrix(const SystemDescriptor& sys, const Vec& u, double h = 1e-6);

//! m = 1: v^T S L^{-1} S^T v. m > 1: v . d(u) for the corrector driven by
//! du/dx = v.
double dissipativity_check(const SystemDescriptor& sys, const Vec& u, const Vec& v);

//! Largest step the explicit diffusion stencil tolerates for these
//! interface matrices: dx^2 / (2 max spectral bound).
double diffusion_dt_limit(const std::vector<Mat>& interface_matrices, double dx);

//! Interface matrices of the model's limit equation (limit_diffusivity).
std::vector<Mat> reference_interface_matrices(const SystemDescriptor& sys, const Grid1D& grid, const Field& u);

//! Interface matrices of the scheme's own eps -> 0 limit, read off the sigma
//! rule evaluated at equilibrium states.
std::vector<Mat> ap_limit_interface_matrices(const SystemDescriptor& sys, const Grid1D& grid, const Field& u,
                                             const SchemeOptions& opts = {});

//! u_i + dt/dx^2 [M_{i+1/2}(u_{i+1} - u_i) - M_{i-1/2}(u_i - u_{i-1})].
//! StabilityError when dt exceeds the diffusion limit, DomainError when a
//! value leaves the admissible reduced set.
Field diffusion_stencil_step(const SystemDescriptor& sys, const Grid1D& grid, const Field& u,
                             const std::vector<Mat>& interface_matrices, double dt);

Field diffusion_reference_step(const SystemDescriptor& sys, const Grid1D& grid, const Field& u, double dt);
Field discrete_ap_limit_step(const SystemDescriptor& sys, const Grid1D& grid, const Field& u, double dt,
                             const SchemeOptions& opts = {});

enum class LimitSolver { Reference, DiscreteApLimit };

struct DiffusionRunConfig {
  double t_final = 0.0;
  double cfl = 0.9;
  std::vector<double> snapshot_times;
  std::vector<double> dt_sequence;  // replayed verbatim when non-empty
  LimitSolver solver = LimitSolver::Reference;
  SchemeOptions scheme;             // wave speeds for DiscreteApLimit
  long max_steps = 50'000'000;
};

//! Snapshots of the reduced field u (n components).
SnapshotSeries run_diffusion(const SystemDescriptor& sys, const Grid1D& grid, const Field& u0,
                             const DiffusionRunConfig& config);

}  // namespace relaxsim
