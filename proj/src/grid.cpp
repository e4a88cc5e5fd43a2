#include "relaxsim/grid.hpp"

#include "relaxsim/errors.hpp"

namespace relaxsim {

Boundary parse_boundary(std::string_view name) {
  if (name == "neumann-outflow" || name == "neumann") return Boundary::NeumannOutflow;
  if (name == "periodic") return Boundary::Periodic;
  throw ConfigError("unknown boundary '" + std::string(name) + "' (expected neumann-outflow or periodic)");
}

const char* to_string(Boundary b) {
  return b == Boundary::Periodic ? "periodic" : "neumann-outflow";
}

void Grid1D::validate() const {
  if (cells < 3) throw ConfigError("grid needs at least 3 cells, got " + std::to_string(cells));
  if (!(dx > 0.0)) throw ConfigError("grid spacing dx must be > 0");
}

}  // namespace relaxsim
