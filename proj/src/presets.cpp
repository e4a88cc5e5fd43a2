#include "relaxsim/presets.hpp"

#include <cmath>

#include "relaxsim/errors.hpp"

namespace relaxsim {

Preset Preset::with_cells(int cells) const {
  if (cells < 3) throw ConfigError("a preset needs at least 3 cells");
  Preset p = *this;
  p.grid.dx = grid.length() / cells;
  p.grid.cells = cells;
  return p;
}

Grid1D Preset::reference_grid() const {
  Grid1D g = grid;
  g.cells = grid.cells * reference_refinement;
  g.dx = grid.dx / reference_refinement;
  return g;
}

Field Preset::initial_field(const SystemDescriptor& sys, const Grid1D& g) const {
  Field f;
  f.reserve(g.cells);
  for (int i = 0; i < g.cells; ++i) f.push_back(initial(sys, g.center(i)));
  return f;
}

Field Preset::initial_reduced(const SystemDescriptor& sys, const Grid1D& g) const {
  Field f;
  f.reserve(g.cells);
  for (int i = 0; i < g.cells; ++i) f.push_back(sys.reduce(initial(sys, g.center(i))));
  return f;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"euler-friction-paper", "coupled-paper", "m1-bump",
                                              "shallow-water-step"};
  return names;
}

Preset make_preset(std::string_view name) {
  Preset p;
  p.name = std::string(name);
  if (name == "euler-friction-paper") {
    p.description = "Euler with friction, p = rho^2, density 2 on [1.2, 1.8] and 1 elsewhere, at rest";
    p.model = "euler-friction";
    p.params = {{"eta", 2.0}, {"c_p", 1.0}};
    p.grid = {300, 0.01, 0.0, Boundary::NeumannOutflow};
    p.run.eps = 1e-3;
    p.run.t_final = 0.02;
    p.initial = [](const SystemDescriptor&, double x) { return Vec{(x > 1.2 && x < 1.8) ? 2.0 : 1.0, 0.0}; };
  } else if (name == "coupled-paper") {
    p.description = "Euler/M1 coupling, rho = 0.2 at rest, e = 1.5 on [0.45, 0.55] and 1 elsewhere, f = 0";
    p.model = "coupled-euler-m1";
    p.params = {{"kappa", 2.0}, {"sigma_c", 1.0}, {"c_p", 1e-3}, {"eta", 2.0}};
    p.grid = {100, 0.01, 0.0, Boundary::NeumannOutflow};
    p.run.eps = 1e-3;
    p.run.t_final = 0.02;
    p.initial = [](const SystemDescriptor&, double x) {
      return Vec{0.2, 0.0, (x > 0.45 && x < 0.55) ? 1.5 : 1.0, 0.0};
    };
  } else if (name == "m1-bump") {
    p.description = "M1 at equilibrium with a Gaussian temperature bump tau = 0.5 + 0.5 exp(-((x - 0.5)/0.1)^2)";
    p.model = "m1";
    p.grid = {100, 0.01, 0.0, Boundary::NeumannOutflow};
    p.run.eps = 1e-4;
    p.run.t_final = 0.01;
    p.initial = [](const SystemDescriptor&, double x) {
      const double tau = 0.5 + 0.5 * std::exp(-std::pow((x - 0.5) / 0.1, 2));
      return Vec{tau * tau * tau * tau, 0.0, tau};
    };
  } else if (name == "shallow-water-step") {
    p.description = "Shallow water at rest, h = 2 on [0, 5) and 1 on [5, 10], kappa(h) = 1/h";
    p.model = "shallow-water";
    p.params = {{"g", 1.0}, {"kappa0", 1.0}, {"delta", 1e-8}};
    p.grid = {100, 0.1, 0.0, Boundary::NeumannOutflow};
    p.run.eps = 1e-3;
    p.run.t_final = 0.01;
    p.run.entropy_every = 10;
    p.initial = [](const SystemDescriptor&, double x) { return Vec{x < 5.0 ? 2.0 : 1.0, 0.0}; };
  } else {
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown preset '" + std::string(name) + "' (known: " + known + ")");
  }
  return p;
}

std::string default_preset_for(std::string_view model) {
  if (model == "euler-friction") return "euler-friction-paper";
  if (model == "coupled-euler-m1") return "coupled-paper";
  if (model == "m1") return "m1-bump";
  if (model == "shallow-water") return "shallow-water-step";
  throw ConfigError("no default initial data for model '" + std::string(model) + "'");
}

}  // namespace relaxsim
