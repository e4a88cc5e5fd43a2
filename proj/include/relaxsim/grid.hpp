#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "relaxsim/smallmat.hpp"

namespace relaxsim {

enum class Boundary { NeumannOutflow, Periodic };

Boundary parse_boundary(std::string_view name);  // ConfigError on unknown names
const char* to_string(Boundary b);

//! Uniform 1D mesh with one ghost cell per side. Cell i spans
//! [x0 + i dx, x0 + (i+1) dx].
struct Grid1D {
  int cells = 0;
  double dx = 0.0;
  double x0 = 0.0;
  Boundary boundary = Boundary::NeumannOutflow;

  double center(int i) const { return x0 + (i + 0.5) * dx; }
  double length() const { return cells * dx; }
  void validate() const;  // ConfigError unless dx > 0 and cells >= 3
};

using Field = std::vector<Vec>;

//! Cell k - 1 for k in [0, cells + 1], resolving the ghost layers by the
//! boundary policy. Interface k separates neighbor(k) and neighbor(k + 1).
inline const Vec& neighbor(const Grid1D& g, const Field& f, int k) {
  if (k <= 0) return g.boundary == Boundary::Periodic ? f[g.cells - 1] : f[0];
  if (k > g.cells) return g.boundary == Boundary::Periodic ? f[0] : f[g.cells - 1];
  return f[k - 1];
}

}  // namespace relaxsim
