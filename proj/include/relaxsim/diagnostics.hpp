#pragma once

#include <vector>

#include "relaxsim/grid.hpp"
#include "relaxsim/system.hpp"

namespace relaxsim {

struct SnapshotSeries;

//! sum_i Phi(U_i) dx. NotAvailable when the model has no entropy.
double total_entropy(const SystemDescriptor& sys, const Field& cells, double dx);

//! max_i |U_i - E(Q U_i)|, the distance of the field to the equilibrium manifold.
double momentum_max(const SystemDescriptor& sys, const Field& cells);

//! Q U_i for every cell.
Field reduce_field(const SystemDescriptor& sys, const Field& cells);

//! Cell averages over consecutive blocks of `factor` cells.
Field restrict_field(const Field& fine, int factor);

struct ComponentNorms {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  double l1_reference = 0.0;  // sum |b| dx, for relative errors

  double relative_l1() const { return l1_reference > 0.0 ? l1 / l1_reference : l1; }
};

struct ErrorReport {
  double t = 0.0;
  int cells = 0;       // cells of the comparison grid (the coarser one)
  double dx = 0.0;
  int refinement = 1;  // integer ratio between the two grids
  std::vector<ComponentNorms> components;
};

//! Norms of a - b on the coarser of the two grids; the finer field is
//! restricted by cell averaging. GridMismatch unless the grids cover the same
//! interval and their cell counts differ by an integer factor.
ErrorReport compare_fields(const Grid1D& grid_a, const Field& a, const Grid1D& grid_b, const Field& b);

//! compare_fields at every snapshot time present in both series (matched to
//! 1e-9 relative). Both series must hold fields with the same component count.
std::vector<ErrorReport> compare(const SnapshotSeries& a, const SnapshotSeries& b);

}  // namespace relaxsim
