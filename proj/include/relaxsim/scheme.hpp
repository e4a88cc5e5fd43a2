#pragma once

// HLL solver and the asymptotic-preserving Godunov-type update for
//
//   eps dU/dt + dF(U)/dx = -R(U) / eps^m.
//
// Every source coefficient is assembled through
//   alpha_eps = (eps I + (ghat dx / (2 b)) (I + sigma))^{-1},  ghat = eps gamma,
// so nothing underflows as eps -> 0.

#include <optional>
#include <utility>
#include <vector>

#include "relaxsim/grid.hpp"
#include "relaxsim/system.hpp"

namespace relaxsim {

struct SchemeOptions {
  double safety = 1.0;             // multiplies the spectral bound in wave_speed
  std::optional<double> fixed_b;   // same b at every interface, no estimation
  bool uniform_b = false;          // max of the estimated speeds at every interface
  bool relaxation = true;          // false: R is replaced by 0
  bool sigma_correction = true;    // false: sigma = 0
  std::optional<double> stiffness; // overrides sys.stiffness; 0 gives alpha = I
  bool parallel = true;            // OpenMP over interfaces and cells
};

struct InterfaceData {
  double b = 0.0;
  Mat sigma;
  Mat alpha_eps;
  Vec flux;  // F^HLL
};

struct SchemeState {
  Field cells;
  double t = 0.0;
  long step = 0;
  double dt = 0.0;                       // step ap_step will take
  std::vector<InterfaceData> interfaces; // cells + 1 entries, from the last step
};

Vec hll_intermediate(const Vec& u_left, const Vec& u_right, double b, const SystemDescriptor& sys);
Vec hll_flux(const Vec& u_left, const Vec& u_right, double b, const SystemDescriptor& sys);

//! safety * max spectral bound of A(U_L), A(U_R), floored at 1e-8 and doubled
//! (at most 10 times) until U -+ F(U)/b stay admissible on both sides.
double wave_speed(const Vec& u_left, const Vec& u_right, const SystemDescriptor& sys, double safety);

struct AlphaPair {
  Mat alpha;      // (I + (gamma dx / (2 b)) (I + sigma))^{-1}
  Mat alpha_eps;  // alpha / eps
};

//! SingularityError when the matrix to invert is singular.
AlphaPair alpha_matrix(const Mat& sigma, double dx, double eps, double b, double gamma);

//! U*L = alpha U~* + (I - alpha)(U_L - Rbar(U_L)) and likewise for U*R, with
//! Rbar = (I + sigma)^{-1} R. The caller folds any eps scaling of R into
//! `relax_scale` (Rbar = relax_scale (I + sigma)^{-1} R).
std::pair<Vec, Vec> interface_states(const Vec& u_left, const Vec& u_right, const Vec& u_star, const Mat& alpha,
                                     const Mat& sigma, const SystemDescriptor& sys, double relax_scale = 1.0);

//! Speed, sigma, alpha_eps and F^HLL at every interface of the frozen field.
std::vector<InterfaceData> compute_interfaces(const Field& cells, const SystemDescriptor& sys, const Grid1D& grid,
                                              double eps, const SchemeOptions& opts);

//! One step of length state.dt in flux form. Throws CflViolation when
//! b_max dt / (eps dx) > 1/2 and AdmissibilityError naming the first cell that
//! leaves the admissible set.
SchemeState ap_step(const SchemeState& state, const SystemDescriptor& sys, const Grid1D& grid, double eps,
                    const SchemeOptions& opts = {});

//! ap_step with all OpenMP regions disabled; reference for the parallel path.
SchemeState ap_step_serial(const SchemeState& state, const SystemDescriptor& sys, const Grid1D& grid, double eps,
                           SchemeOptions opts = {});

//! The same update written as the convex combination
//!   lam U*R_{i-1/2} + (1 - 2 lam) U_i + lam U*L_{i+1/2},  lam = b dt / (eps dx),
//! of the interface states touching cell i. Forces a uniform b.
SchemeState ap_step_integral_form(const SchemeState& state, const SystemDescriptor& sys, const Grid1D& grid,
                                  double eps, SchemeOptions opts = {});

//! cfl * min(eps dx / (2 b_max), dx^2 / (2 D_max)).
double stable_dt(double eps, double dx, double b_max, double d_max, double cfl);

//! Spectral bound of the scheme's own limit diffusion
//!   M = (b^2 / ghat) Q (I + sigma)^{-1} Q^T (Q Q^T)^{-1}
//! at one interface; 0 when ghat = 0.
Mat interface_limit_matrix(const SystemDescriptor& sys, const Mat& sigma, double b, double ghat);

struct DtInfo {
  double dt = 0.0;
  double b_max = 0.0;
  double d_max = 0.0;
};

//! Stable step for the current state, clamped to t_final - state.t.
DtInfo compute_dt(const SchemeState& state, const SystemDescriptor& sys, const Grid1D& grid, double eps,
                  double cfl, double t_final, const SchemeOptions& opts = {});

struct RunConfig {
  double eps = 1e-3;
  double cfl = 0.9;
  double t_final = 0.0;
  std::vector<double> snapshot_times;  // t = 0 and t_final are always kept
  int entropy_every = 1;               // 0 disables the entropy trace
  long max_steps = 50'000'000;
  SchemeOptions scheme;
};

struct Snapshot {
  double t = 0.0;
  Field cells;
};

struct SnapshotSeries {
  Grid1D grid;
  int n_components = 0;
  std::vector<Snapshot> snapshots;
  std::vector<std::pair<double, double>> entropy;   // (t, sum Phi dx)
  std::vector<std::pair<double, double>> momentum;  // (t, momentum_max)
  std::vector<double> dt_history;
  long steps = 0;
};

//! Runs from `initial` to config.t_final. Step errors are rethrown with the
//! step index and time prefixed.
SnapshotSeries run(const SystemDescriptor& sys, const Grid1D& grid, const Field& initial, const RunConfig& config);

}  // namespace relaxsim
