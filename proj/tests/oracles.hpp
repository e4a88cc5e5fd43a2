#pragma once

// Independent reference computations used by the tests. Deliberately naive:
// plain std::vector arithmetic, no code shared with the library.

#include <cmath>
#include <utility>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

// Gaussian elimination without pivoting tricks beyond row swaps on exact zeros.
inline std::vector<double> gauss_solve(Matrix a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
    }
    std::swap(a[k], a[p]);
    std::swap(b[k], b[p]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a[k][j] * x[j];
    x[k] = s / a[k][k];
  }
  return x;
}

// Textbook HLL update with a single speed b:
//   U_i - dt/dx (F_{i+1/2} - F_{i-1/2}),
//   F_{i+1/2} = (F_i + F_{i+1})/2 - b/2 (U_{i+1} - U_i),
// on copy ghosts. `flux` maps a state to its flux.
template <class State, class Flux>
std::vector<State> hll_step(const std::vector<State>& u, double b, double lam, Flux flux) {
  const std::size_t n = u.size();
  const auto at = [&](long i) -> const State& {
    if (i < 0) return u[0];
    if (i >= static_cast<long>(n)) return u[n - 1];
    return u[i];
  };
  std::vector<State> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const State& l = at(static_cast<long>(i) - 1);
    const State& c = u[i];
    const State& r = at(static_cast<long>(i) + 1);
    const State fl = flux(l), fc = flux(c), fr = flux(r);
    State next = c;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double right = 0.5 * (fc[k] + fr[k]) - 0.5 * b * (r[k] - c[k]);
      const double left = 0.5 * (fl[k] + fc[k]) - 0.5 * b * (c[k] - l[k]);
      next[k] = c[k] - lam * (right - left);
    }
    out[i] = next;
  }
  return out;
}

}  // namespace oracle
