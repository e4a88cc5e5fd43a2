#include "relaxsim/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "relaxsim/errors.hpp"
#include "relaxsim/models.hpp"

namespace relaxsim {

CorrectorResult corrector(const SystemDescriptor& sys, const Vec& u, const Vec& grad_flux) {
  const Vec E = sys.equilibrium(u);
  CorrectorResult out;
  if (sys.m == 1) {
    out.U1 = constrained_solve(relax_jacobian_at_equilibrium(sys, u), sys.Q, -grad_flux);
  } else if (sys.nonlinear_corrector) {
    out.U1 = sys.nonlinear_corrector(u, grad_flux);
  } else {
    throw NotImplemented("model " + sys.name + " has m = " + std::to_string(sys.m) + " but no analytic corrector");
  }
  out.d = -(sys.Q * (flux_jacobian(sys, E) * out.U1));
  return out;
}

Mat equilibrium_jacobian(const SystemDescriptor& sys, const Vec& u, double h) {
  Mat de(sys.N, sys.n);
  for (int k = 0; k < sys.n; ++k) {
    const double step = h * std::max(1.0, std::abs(u[k]));
    Vec plus = u, minus = u;
    plus[k] += step;
    minus[k] -= step;
    de.set_col(k, (0.5 / step) * (sys.equilibrium(plus) - sys.equilibrium(minus)));
  }
  return de;
}

namespace {

struct LimitPieces {
  Mat S;  // Q A
  Mat L;  // D^2Phi B
  Mat H;  // D^2Phi
  Mat A;
};

LimitPieces limit_pieces(const SystemDescriptor& sys, const Vec& u) {
  if (sys.m != 1) throw NotAvailable("the linear limit matrix needs m = 1 (model " + sys.name + ")");
  if (!has_entropy_hessian(sys)) throw NotAvailable("model " + sys.name + " carries no entropy");
  const Vec E = sys.equilibrium(u);
  LimitPieces p;
  p.A = flux_jacobian(sys, E);
  p.H = entropy_hessian(sys, E);
  p.S = sys.Q * p.A;
  p.L = p.H * relax_jacobian_at_equilibrium(sys, u);
  return p;
}

}  // namespace

Mat effective_diffusion_matrix(const SystemDescriptor& sys, const Vec& u, double h) {
  const LimitPieces p = limit_pieces(sys, u);
  const Mat rhs = p.H * p.A * equilibrium_jacobian(sys, u, h);
  Mat sol(sys.N, sys.n);
  for (int k = 0; k < sys.n; ++k) sol.set_col(k, constrained_solve(p.L, sys.Q, rhs.col(k)));
  return p.S * sol;
}

double dissipativity_check(const SystemDescriptor& sys, const Vec& u, const Vec& v) {
  if (sys.m == 1) {
    const LimitPieces p = limit_pieces(sys, u);
    const Vec st_v = p.S.transpose() * v;
    return dot(v, p.S * constrained_solve(p.L, sys.Q, st_v));
  }
  const Vec E = sys.equilibrium(u);
  const Vec grad_flux = flux_jacobian(sys, E) * (equilibrium_jacobian(sys, u) * v);
  return dot(v, corrector(sys, u, grad_flux).d);
}

double diffusion_dt_limit(const std::vector<Mat>& interface_matrices, double dx) {
  double d_max = 0.0;
  for (const Mat& m : interface_matrices) d_max = std::max(d_max, spectral_radius_bound(m));
  return d_max > 0.0 ? dx * dx / (2.0 * d_max) : std::numeric_limits<double>::infinity();
}

std::vector<Mat> reference_interface_matrices(const SystemDescriptor& sys, const Grid1D& grid, const Field& u) {
  if (!sys.limit_diffusivity) throw NotAvailable("model " + sys.name + " has no limit diffusivity");
  std::vector<Mat> out(grid.cells + 1);
  for (int k = 0; k <= grid.cells; ++k) {
    out[k] = limit_diffusivity(sys, neighbor(grid, u, k), neighbor(grid, u, k + 1), grid.dx);
  }
  return out;
}

std::vector<Mat> ap_limit_interface_matrices(const SystemDescriptor& sys, const Grid1D& grid, const Field& u,
                                             const SchemeOptions& opts) {
  Field eq;
  eq.reserve(u.size());
  for (const Vec& v : u) eq.push_back(sys.equilibrium(v));
  const auto faces = compute_interfaces(eq, sys, grid, 1.0, opts);
  const double ghat = opts.stiffness.value_or(sys.stiffness);
  std::vector<Mat> out(faces.size());
  for (std::size_t k = 0; k < faces.size(); ++k) {
    out[k] = interface_limit_matrix(sys, faces[k].sigma, faces[k].b, ghat);
  }
  return out;
}

Field diffusion_stencil_step(const SystemDescriptor& sys, const Grid1D& grid, const Field& u,
                             const std::vector<Mat>& interface_matrices, double dt) {
  const double limit = diffusion_dt_limit(interface_matrices, grid.dx);
  if (dt > limit * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "diffusion step " << dt << " exceeds the explicit stability limit " << limit;
    throw StabilityError(os.str());
  }
  const double lam = dt / (grid.dx * grid.dx);
  Field next(u.size());
  for (int i = 0; i < grid.cells; ++i) {
    const Vec& ul = neighbor(grid, u, i);
    const Vec& ur = neighbor(grid, u, i + 2);
    next[i] = u[i] + lam * (interface_matrices[i + 1] * (ur - u[i]) - interface_matrices[i] * (u[i] - ul));
  }
  for (int i = 0; i < grid.cells; ++i) {
    bool ok = next[i].all_finite();
    if (ok) {
      try {
        ok = sys.admissible(sys.equilibrium(next[i]));
      } catch (const DomainError&) {
        ok = false;
      }
    }
    if (!ok) {
      std::ostringstream os;
      os << "cell " << i << " (x = " << grid.center(i) << ") left the admissible reduced set: u = " << next[i];
      throw DomainError(os.str());
    }
  }
  return next;
}

Field diffusion_reference_step(const SystemDescriptor& sys, const Grid1D& grid, const Field& u, double dt) {
  return diffusion_stencil_step(sys, grid, u, reference_interface_matrices(sys, grid, u), dt);
}

Field discrete_ap_limit_step(const SystemDescriptor& sys, const Grid1D& grid, const Field& u, double dt,
                             const SchemeOptions& opts) {
  return diffusion_stencil_step(sys, grid, u, ap_limit_interface_matrices(sys, grid, u, opts), dt);
}

SnapshotSeries run_diffusion(const SystemDescriptor& sys, const Grid1D& grid, const Field& u0,
                             const DiffusionRunConfig& config) {
  grid.validate();
  if (!(config.t_final >= 0.0)) throw ConfigError("t_final must be >= 0");
  if (!(config.cfl > 0.0 && config.cfl <= 1.0)) throw ConfigError("cfl number must lie in (0, 1]");
  if (static_cast<int>(u0.size()) != grid.cells) throw ConfigError("initial data size does not match the grid");
  for (const Vec& v : u0) {
    if (v.size() != sys.n) throw ConfigError("reduced initial state has the wrong number of components");
  }

  std::vector<double> targets;
  for (double t : config.snapshot_times) {
    if (t > 0.0 && t < config.t_final) targets.push_back(t);
  }
  targets.push_back(config.t_final);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  SnapshotSeries out;
  out.grid = grid;
  out.n_components = sys.n;
  out.snapshots.push_back({0.0, u0});
  if (config.t_final == 0.0) return out;

  const auto matrices = [&](const Field& u) {
    return config.solver == LimitSolver::Reference ? reference_interface_matrices(sys, grid, u)
                                                   : ap_limit_interface_matrices(sys, grid, u, config.scheme);
  };
  const bool replay = !config.dt_sequence.empty();

  Field u = u0;
  double t = 0.0;
  long step = 0;
  std::size_t next_target = 0;
  while (next_target < targets.size()) {
    if (replay && step >= static_cast<long>(config.dt_sequence.size())) break;
    if (step >= config.max_steps) throw StabilityError("step budget exhausted at t = " + std::to_string(t));
    const double target = targets[next_target];
    try {
      const auto mats = matrices(u);
      double dt;
      bool hits;
      if (replay) {
        dt = config.dt_sequence[step];
        hits = std::abs(t + dt - target) <= 1e-9 * std::max(1.0, target);
      } else {
        dt = config.cfl * diffusion_dt_limit(mats, grid.dx);
        hits = t + dt >= target;
        if (hits) dt = target - t;
      }
      u = diffusion_stencil_step(sys, grid, u, mats, dt);
      t = hits ? target : t + dt;
      ++step;
      out.dt_history.push_back(dt);
      if (hits) {
        out.snapshots.push_back({t, u});
        ++next_target;
      }
    } catch (const Error& e) {
      std::ostringstream os;
      os << "diffusion step " << step + 1 << " from t = " << t;
      rethrow_with_context(e, os.str());
    }
  }
  out.steps = step;
  return out;
}

}  // namespace relaxsim
