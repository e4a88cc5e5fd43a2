#include "relaxsim/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

#include "relaxsim/diagnostics.hpp"
#include "relaxsim/errors.hpp"

namespace relaxsim {

namespace {

constexpr double kMinSpeed = 1e-8;
constexpr int kMaxDoublings = 10;

// Runs fn(i) for i in [0, count), in parallel when asked. The exception of
// the lowest failing index is rethrown so failures are deterministic.
template <class Fn>
void for_each_index(int count, bool parallel, Fn&& fn) {
  std::exception_ptr first;
  int first_index = count;
#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < count; ++i) {
    try {
      fn(i);
    } catch (...) {
#pragma omp critical(relaxsim_step_error)
      if (i < first_index) {
        first_index = i;
        first = std::current_exception();
      }
    }
  }
  if (first) std::rethrow_exception(first);
}

double stiffness_of(const SystemDescriptor& sys, const SchemeOptions& opts) {
  return opts.stiffness.value_or(sys.stiffness);
}

double max_speed(const std::vector<InterfaceData>& faces) {
  double b = 0.0;
  for (const auto& f : faces) b = std::max(b, f.b);
  return b;
}

void check_cfl(double b_max, double dt, double eps, double dx) {
  const double courant = b_max * dt / (eps * dx);
  if (courant > 0.5 * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "time step " << dt << " violates b dt / (eps dx) <= 1/2 (got " << courant << ", b_max = " << b_max << ")";
    throw CflViolation(os.str());
  }
}

void check_cells(const SystemDescriptor& sys, const Grid1D& grid, const Field& cells) {
  for (int i = 0; i < grid.cells; ++i) {
    if (!sys.admissible(cells[i])) {
      std::ostringstream os;
      os << "cell " << i << " (x = " << grid.center(i) << ") left the admissible set: U = " << cells[i];
      throw AdmissibilityError(os.str());
    }
  }
}

// Flux-form update from precomputed interface data.
Field advance_flux_form(const Field& cells, const std::vector<InterfaceData>& faces, const SystemDescriptor& sys,
                        const Grid1D& grid, double eps, double dt, const SchemeOptions& opts) {
  const double lam = dt / grid.dx;
  const double src = dt / (2.0 * std::pow(eps, sys.m));
  Field next(cells.size());
  for_each_index(grid.cells, opts.parallel, [&](int i) {
    const Vec& u = cells[i];
    const InterfaceData& lf = faces[i];
    const InterfaceData& rf = faces[i + 1];
    const Vec f = sys.flux(u);
    Vec out = u;
    out -= lam * (rf.alpha_eps * rf.flux - lf.alpha_eps * lf.flux);
    out += lam * ((rf.alpha_eps - lf.alpha_eps) * f);
    if (opts.relaxation) out -= src * ((rf.alpha_eps + lf.alpha_eps) * sys.relax(u));
    next[i] = out;
  });
  return next;
}

}  // namespace

Vec hll_intermediate(const Vec& u_left, const Vec& u_right, double b, const SystemDescriptor& sys) {
  return 0.5 * (u_left + u_right) - (0.5 / b) * (sys.flux(u_right) - sys.flux(u_left));
}

Vec hll_flux(const Vec& u_left, const Vec& u_right, double b, const SystemDescriptor& sys) {
  return 0.5 * (sys.flux(u_left) + sys.flux(u_right)) - (0.5 * b) * (u_right - u_left);
}

double wave_speed(const Vec& u_left, const Vec& u_right, const SystemDescriptor& sys, double safety) {
  const double bound = std::max(spectral_radius_bound(flux_jacobian(sys, u_left)),
                                spectral_radius_bound(flux_jacobian(sys, u_right)));
  double b = std::max(safety * bound, kMinSpeed);
  const Vec fl = sys.flux(u_left), fr = sys.flux(u_right);
  const auto one_sided_ok = [&](double speed) {
    return sys.admissible(u_left + fl * (1.0 / speed)) && sys.admissible(u_left - fl * (1.0 / speed)) &&
           sys.admissible(u_right + fr * (1.0 / speed)) && sys.admissible(u_right - fr * (1.0 / speed));
  };
  for (int k = 0; k <= kMaxDoublings; ++k) {
    if (one_sided_ok(b)) return b;
    if (k < kMaxDoublings) b *= 2.0;
  }
  std::ostringstream os;
  os << "no admissible wave speed up to b = " << b << " for states " << u_left << " | " << u_right;
  throw AdmissibilityError(os.str());
}

AlphaPair alpha_matrix(const Mat& sigma, double dx, double eps, double b, double gamma) {
  const int n = sigma.rows();
  const Mat id = Mat::identity(n);
  // eps gamma is the stiffness ghat; alpha_eps never divides by eps.
  const Mat to_invert = eps * id + (eps * gamma * dx / (2.0 * b)) * (id + sigma);
  AlphaPair out;
  try {
    out.alpha_eps = inverse(to_invert);
  } catch (const SingularityError& e) {
    rethrow_with_context(e, "alpha matrix: sigma gives a singular eps I + (gamma dx/(2b))(I + sigma)");
  }
  out.alpha = eps * out.alpha_eps;
  return out;
}

std::pair<Vec, Vec> interface_states(const Vec& u_left, const Vec& u_right, const Vec& u_star, const Mat& alpha,
                                     const Mat& sigma, const SystemDescriptor& sys, double relax_scale) {
  const int n = u_left.size();
  const Mat id = Mat::identity(n);
  const Mat rest = id - alpha;
  const auto relaxed = [&](const Vec& u) {
    if (relax_scale == 0.0) return u;
    return u - relax_scale * solve_dense(id + sigma, sys.relax(u));
  };
  const Vec base = alpha * u_star;
  return {base + rest * relaxed(u_left), base + rest * relaxed(u_right)};
}

std::vector<InterfaceData> compute_interfaces(const Field& cells, const SystemDescriptor& sys, const Grid1D& grid,
                                              double eps, const SchemeOptions& opts) {
  const int faces = grid.cells + 1;
  std::vector<InterfaceData> out(faces);
  if (opts.fixed_b) {
    if (!(*opts.fixed_b > 0.0)) throw ConfigError("fixed wave speed must be > 0");
    for (auto& f : out) f.b = *opts.fixed_b;
  } else {
    for_each_index(faces, opts.parallel, [&](int k) {
      out[k].b = wave_speed(neighbor(grid, cells, k), neighbor(grid, cells, k + 1), sys, opts.safety);
    });
    if (opts.uniform_b) {
      const double b = max_speed(out);
      for (auto& f : out) f.b = b;
    }
  }
  const double ghat = stiffness_of(sys, opts);
  const Mat id = Mat::identity(sys.N);
  for_each_index(faces, opts.parallel, [&](int k) {
    const Vec& ul = neighbor(grid, cells, k);
    const Vec& ur = neighbor(grid, cells, k + 1);
    InterfaceData& f = out[k];
    f.sigma = (opts.sigma_correction && sys.sigma_rule) ? sys.sigma_rule(ul, ur, f.b, grid.dx) : Mat::zeros(sys.N, sys.N);
    try {
      f.alpha_eps = inverse(eps * id + (ghat * grid.dx / (2.0 * f.b)) * (id + f.sigma));
    } catch (const SingularityError& e) {
      rethrow_with_context(e, "interface " + std::to_string(k) + ": singular alpha matrix");
    }
    f.flux = hll_flux(ul, ur, f.b, sys);
  });
  return out;
}

SchemeState ap_step(const SchemeState& state, const SystemDescriptor& sys, const Grid1D& grid, double eps,
                    const SchemeOptions& opts) {
  SchemeState next;
  next.interfaces = compute_interfaces(state.cells, sys, grid, eps, opts);
  check_cfl(max_speed(next.interfaces), state.dt, eps, grid.dx);
  next.cells = advance_flux_form(state.cells, next.interfaces, sys, grid, eps, state.dt, opts);
  check_cells(sys, grid, next.cells);
  next.t = state.t + state.dt;
  next.step = state.step + 1;
  next.dt = state.dt;
  return next;
}

SchemeState ap_step_serial(const SchemeState& state, const SystemDescriptor& sys, const Grid1D& grid, double eps,
                           SchemeOptions opts) {
  opts.parallel = false;
  return ap_step(state, sys, grid, eps, opts);
}

SchemeState ap_step_integral_form(const SchemeState& state, const SystemDescriptor& sys, const Grid1D& grid,
                                  double eps, SchemeOptions opts) {
  if (!opts.fixed_b) opts.uniform_b = true;
  const double ghat = stiffness_of(sys, opts);
  if (opts.relaxation && ghat == 0.0) {
    throw ConfigError("integral form needs a nonzero stiffness when relaxation is on");
  }
  const double relax_scale = opts.relaxation ? 1.0 / (ghat * std::pow(eps, sys.m - 1)) : 0.0;

  SchemeState next;
  next.interfaces = compute_interfaces(state.cells, sys, grid, eps, opts);
  const double b = max_speed(next.interfaces);
  check_cfl(b, state.dt, eps, grid.dx);

  const int faces = grid.cells + 1;
  std::vector<std::pair<Vec, Vec>> star(faces);
  for_each_index(faces, opts.parallel, [&](int k) {
    const Vec& ul = neighbor(grid, state.cells, k);
    const Vec& ur = neighbor(grid, state.cells, k + 1);
    const InterfaceData& f = next.interfaces[k];
    star[k] = interface_states(ul, ur, hll_intermediate(ul, ur, f.b, sys), eps * f.alpha_eps, f.sigma, sys,
                               relax_scale);
  });

  const double lam = b * state.dt / (eps * grid.dx);
  next.cells.resize(state.cells.size());
  for_each_index(grid.cells, opts.parallel, [&](int i) {
    next.cells[i] = lam * star[i].second + (1.0 - 2.0 * lam) * state.cells[i] + lam * star[i + 1].first;
  });
  check_cells(sys, grid, next.cells);
  next.t = state.t + state.dt;
  next.step = state.step + 1;
  next.dt = state.dt;
  return next;
}

double stable_dt(double eps, double dx, double b_max, double d_max, double cfl) {
  const double hyperbolic = eps * dx / (2.0 * b_max);
  const double parabolic = d_max > 0.0 ? dx * dx / (2.0 * d_max) : std::numeric_limits<double>::infinity();
  return cfl * std::min(hyperbolic, parabolic);
}

Mat interface_limit_matrix(const SystemDescriptor& sys, const Mat& sigma, double b, double ghat) {
  if (ghat == 0.0) return Mat::zeros(sys.n, sys.n);
  const Mat qt = sys.Q.transpose();
  const Mat p = sys.Q * inverse(Mat::identity(sys.N) + sigma);
  return (b * b / ghat) * (p * qt * inverse(sys.Q * qt));
}

namespace {

DtInfo dt_from_interfaces(const std::vector<InterfaceData>& faces, const SystemDescriptor& sys, double eps,
                          double dx, double cfl, const SchemeOptions& opts) {
  const double ghat = stiffness_of(sys, opts);
  DtInfo info;
  for (const auto& f : faces) {
    info.b_max = std::max(info.b_max, f.b);
    info.d_max = std::max(info.d_max, spectral_radius_bound(interface_limit_matrix(sys, f.sigma, f.b, ghat)));
  }
  info.dt = stable_dt(eps, dx, info.b_max, info.d_max, cfl);
  return info;
}

}  // namespace

DtInfo compute_dt(const SchemeState& state, const SystemDescriptor& sys, const Grid1D& grid, double eps, double cfl,
                  double t_final, const SchemeOptions& opts) {
  const auto faces = compute_interfaces(state.cells, sys, grid, eps, opts);
  DtInfo info = dt_from_interfaces(faces, sys, eps, grid.dx, cfl, opts);
  info.dt = std::min(info.dt, std::max(t_final - state.t, 0.0));
  return info;
}

SnapshotSeries run(const SystemDescriptor& sys, const Grid1D& grid, const Field& initial, const RunConfig& config) {
  grid.validate();
  if (!(config.eps > 0.0)) throw ConfigError("epsilon must be > 0");
  if (!(config.cfl > 0.0 && config.cfl <= 1.0)) throw ConfigError("cfl number must lie in (0, 1]");
  if (!(config.t_final >= 0.0)) throw ConfigError("t_final must be >= 0");
  if (static_cast<int>(initial.size()) != grid.cells) throw ConfigError("initial data size does not match the grid");
  for (const Vec& u : initial) {
    if (u.size() != sys.N) throw ConfigError("initial state has the wrong number of components");
  }
  check_cells(sys, grid, initial);

  std::vector<double> targets;
  for (double t : config.snapshot_times) {
    if (t > 0.0 && t < config.t_final) targets.push_back(t);
  }
  targets.push_back(config.t_final);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  SnapshotSeries out;
  out.grid = grid;
  out.n_components = sys.N;
  const bool track_entropy = config.entropy_every > 0 && static_cast<bool>(sys.entropy);
  const auto record_traces = [&](double t, const Field& cells) {
    if (track_entropy) out.entropy.emplace_back(t, total_entropy(sys, cells, grid.dx));
    out.momentum.emplace_back(t, momentum_max(sys, cells));
  };

  SchemeState state;
  state.cells = initial;
  out.snapshots.push_back({0.0, initial});
  record_traces(0.0, initial);
  if (config.t_final == 0.0) return out;

  std::size_t next_target = 0;
  while (next_target < targets.size()) {
    if (state.step >= config.max_steps) {
      throw StabilityError("step budget of " + std::to_string(config.max_steps) + " exhausted at t = " +
                           std::to_string(state.t));
    }
    try {
      const double target = targets[next_target];
      SchemeState next;
      next.interfaces = compute_interfaces(state.cells, sys, grid, config.eps, config.scheme);
      const DtInfo info = dt_from_interfaces(next.interfaces, sys, config.eps, grid.dx, config.cfl, config.scheme);
      double dt = info.dt;
      bool hits_target = false;
      if (state.t + dt >= target) {
        dt = target - state.t;
        hits_target = true;
      }
      check_cfl(info.b_max, dt, config.eps, grid.dx);
      next.cells = advance_flux_form(state.cells, next.interfaces, sys, grid, config.eps, dt, config.scheme);
      check_cells(sys, grid, next.cells);
      next.t = hits_target ? target : state.t + dt;
      next.step = state.step + 1;
      next.dt = dt;
      state = std::move(next);
      out.dt_history.push_back(dt);

      const bool trace_now = hits_target || (config.entropy_every > 0 && state.step % config.entropy_every == 0);
      if (trace_now) record_traces(state.t, state.cells);
      if (hits_target) {
        out.snapshots.push_back({state.t, state.cells});
        ++next_target;
      }
    } catch (const Error& e) {
      std::ostringstream os;
      os << "step " << state.step + 1 << " from t = " << state.t;
      rethrow_with_context(e, os.str());
    }
  }
  out.steps = state.step;
  return out;
}

}  // namespace relaxsim
