#include "relaxsim/system.hpp"

#include <algorithm>
#include <sstream>

#include "relaxsim/errors.hpp"

namespace relaxsim {

bool SystemDescriptor::admissible(const Vec& U) const {
  if (U.size() != N || !U.all_finite()) return false;
  return !admissible_fn || admissible_fn(U);
}

Mat jac_flux_fd(const SystemDescriptor& sys, const Vec& U, double h) {
  Mat a(sys.N, sys.N);
  for (int k = 0; k < sys.N; ++k) {
    Vec plus = U, minus = U;
    plus[k] += h;
    minus[k] -= h;
    if (!sys.admissible(plus) || !sys.admissible(minus)) {
      std::ostringstream os;
      os << "finite-difference perturbation of component " << k << " by " << h << " leaves the admissible set at "
         << U;
      throw AdmissibilityError(os.str());
    }
    a.set_col(k, (1.0 / (2.0 * h)) * (sys.flux(plus) - sys.flux(minus)));
  }
  return a;
}

Mat flux_jacobian(const SystemDescriptor& sys, const Vec& U) {
  if (sys.jac_flux) return sys.jac_flux(U);
  Mat a(sys.N, sys.N);
  for (int k = 0; k < sys.N; ++k) {
    const double h = 1e-6 * std::max(1.0, std::abs(U[k]));
    Vec plus = U, minus = U;
    plus[k] += h;
    minus[k] -= h;
    if (!sys.admissible(plus) || !sys.admissible(minus)) {
      throw AdmissibilityError("flux Jacobian fallback stepped outside the admissible set");
    }
    a.set_col(k, (1.0 / (2.0 * h)) * (sys.flux(plus) - sys.flux(minus)));
  }
  return a;
}

Mat relax_jacobian_at_equilibrium(const SystemDescriptor& sys, const Vec& u) {
  if (sys.jac_relax_at_equilibrium) return sys.jac_relax_at_equilibrium(u);
  const Vec U = sys.equilibrium(u);
  Mat b(sys.N, sys.N);
  for (int k = 0; k < sys.N; ++k) {
    const double h = 1e-6 * std::max(1.0, std::abs(U[k]));
    Vec plus = U, minus = U;
    plus[k] += h;
    minus[k] -= h;
    b.set_col(k, (1.0 / (2.0 * h)) * (sys.relax(plus) - sys.relax(minus)));
  }
  return b;
}

bool has_entropy_hessian(const SystemDescriptor& sys) {
  return static_cast<bool>(sys.entropy_hessian) || static_cast<bool>(sys.entropy);
}

Mat entropy_hessian(const SystemDescriptor& sys, const Vec& U) {
  if (sys.entropy_hessian) return sys.entropy_hessian(U);
  if (!sys.entropy) throw NotAvailable("model '" + sys.name + "' has no entropy");
  const int n = sys.N;
  Mat h(n, n);
  std::array<double, kMaxDim> step{};
  for (int k = 0; k < n; ++k) step[k] = 1e-4 * std::max(1.0, std::abs(U[k]));
  const double phi0 = sys.entropy(U);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double value;
      if (i == j) {
        Vec p = U, q = U;
        p[i] += step[i];
        q[i] -= step[i];
        value = (sys.entropy(p) - 2.0 * phi0 + sys.entropy(q)) / (step[i] * step[i]);
      } else {
        Vec pp = U, pm = U, mp = U, mm = U;
        pp[i] += step[i], pp[j] += step[j];
        pm[i] += step[i], pm[j] -= step[j];
        mp[i] -= step[i], mp[j] += step[j];
        mm[i] -= step[i], mm[j] -= step[j];
        value = (sys.entropy(pp) - sys.entropy(pm) - sys.entropy(mp) + sys.entropy(mm)) / (4.0 * step[i] * step[j]);
      }
      h(i, j) = h(j, i) = value;
    }
  }
  return h;
}

double ValidationReport::worst() const {
  return std::max({relax_in_kernel, equilibrium_reduces, equilibrium_at_rest, flux_constraint});
}

bool ValidationReport::passed() const { return q_full_rank && worst() <= tolerance; }

ValidationReport validate_descriptor(const SystemDescriptor& sys, const std::vector<Vec>& reduced_samples,
                                     const std::vector<Vec>& state_samples) {
  ValidationReport rep;
  rep.q_rank = numerical_rank(sys.Q);
  rep.q_full_rank = rep.q_rank == sys.n;
  for (const Vec& U : state_samples) {
    rep.relax_in_kernel = std::max(rep.relax_in_kernel, (sys.Q * sys.relax(U)).norm_inf());
  }
  for (const Vec& u : reduced_samples) {
    const Vec E = sys.equilibrium(u);
    rep.equilibrium_reduces = std::max(rep.equilibrium_reduces, (sys.Q * E - u).norm_inf());
    rep.equilibrium_at_rest = std::max(rep.equilibrium_at_rest, sys.relax(E).norm_inf());
    rep.flux_constraint = std::max(rep.flux_constraint, (sys.Q * sys.flux(E)).norm_inf());
  }
  return rep;
}

}  // namespace relaxsim
