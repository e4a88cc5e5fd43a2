#include "relaxsim/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "relaxsim/errors.hpp"
#include "relaxsim/scheme.hpp"

namespace relaxsim {

double total_entropy(const SystemDescriptor& sys, const Field& cells, double dx) {
  if (!sys.entropy) throw NotAvailable("model " + sys.name + " carries no entropy");
  double sum = 0.0;
  for (const Vec& u : cells) sum += sys.entropy(u);
  return sum * dx;
}

double momentum_max(const SystemDescriptor& sys, const Field& cells) {
  double worst = 0.0;
  for (const Vec& u : cells) worst = std::max(worst, (u - sys.equilibrium(sys.reduce(u))).norm());
  return worst;
}

Field reduce_field(const SystemDescriptor& sys, const Field& cells) {
  Field out;
  out.reserve(cells.size());
  for (const Vec& u : cells) out.push_back(sys.reduce(u));
  return out;
}

Field restrict_field(const Field& fine, int factor) {
  if (factor < 1 || fine.size() % factor != 0) {
    throw GridMismatch("cannot restrict " + std::to_string(fine.size()) + " cells by a factor " +
                       std::to_string(factor));
  }
  Field out;
  out.reserve(fine.size() / factor);
  for (std::size_t i = 0; i < fine.size(); i += factor) {
    Vec avg = Vec::zeros(fine[i].size());
    for (int k = 0; k < factor; ++k) avg += fine[i + k];
    out.push_back((1.0 / factor) * avg);
  }
  return out;
}

ErrorReport compare_fields(const Grid1D& grid_a, const Field& a, const Grid1D& grid_b, const Field& b) {
  const double tol = 1e-9 * std::max({1.0, std::abs(grid_a.x0), grid_a.length()});
  if (std::abs(grid_a.x0 - grid_b.x0) > tol || std::abs(grid_a.length() - grid_b.length()) > tol) {
    std::ostringstream os;
    os << "grids cover different intervals: [" << grid_a.x0 << ", " << grid_a.x0 + grid_a.length() << "] vs ["
       << grid_b.x0 << ", " << grid_b.x0 + grid_b.length() << "]";
    throw GridMismatch(os.str());
  }
  if (static_cast<int>(a.size()) != grid_a.cells || static_cast<int>(b.size()) != grid_b.cells) {
    throw GridMismatch("field sizes do not match their grids");
  }
  const int coarse = std::min(grid_a.cells, grid_b.cells);
  const int fine = std::max(grid_a.cells, grid_b.cells);
  if (fine % coarse != 0) {
    throw GridMismatch("cell counts " + std::to_string(grid_a.cells) + " and " + std::to_string(grid_b.cells) +
                       " are not related by an integer factor");
  }
  const int factor = fine / coarse;
  const Field ra = grid_a.cells == coarse ? a : restrict_field(a, factor);
  const Field rb = grid_b.cells == coarse ? b : restrict_field(b, factor);
  const int n = ra.empty() ? 0 : ra[0].size();
  if (!rb.empty() && rb[0].size() != n) throw GridMismatch("fields have different component counts");

  ErrorReport rep;
  rep.cells = coarse;
  rep.dx = grid_a.cells == coarse ? grid_a.dx : grid_b.dx;
  rep.refinement = factor;
  rep.components.resize(n);
  for (int c = 0; c < n; ++c) {
    ComponentNorms& cn = rep.components[c];
    double sq = 0.0;
    for (int i = 0; i < coarse; ++i) {
      const double d = std::abs(ra[i][c] - rb[i][c]);
      cn.l1 += d;
      sq += d * d;
      cn.linf = std::max(cn.linf, d);
      cn.l1_reference += std::abs(rb[i][c]);
    }
    cn.l1 *= rep.dx;
    cn.l2 = std::sqrt(sq * rep.dx);
    cn.l1_reference *= rep.dx;
  }
  return rep;
}

std::vector<ErrorReport> compare(const SnapshotSeries& a, const SnapshotSeries& b) {
  if (a.n_components != b.n_components) {
    throw GridMismatch("series have " + std::to_string(a.n_components) + " and " + std::to_string(b.n_components) +
                       " components");
  }
  std::vector<ErrorReport> out;
  for (const Snapshot& sa : a.snapshots) {
    for (const Snapshot& sb : b.snapshots) {
      if (std::abs(sa.t - sb.t) <= 1e-9 * std::max(1.0, std::abs(sa.t))) {
        ErrorReport rep = compare_fields(a.grid, sa.cells, b.grid, sb.cells);
        rep.t = sa.t;
        out.push_back(std::move(rep));
        break;
      }
    }
  }
  if (out.empty()) throw GridMismatch("the two series share no snapshot time");
  return out;
}

}  // namespace relaxsim
