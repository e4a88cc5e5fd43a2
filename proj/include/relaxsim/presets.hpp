#pragma once

// Named experiment setups: model, grid, run parameters and initial data.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "relaxsim/grid.hpp"
#include "relaxsim/scheme.hpp"
#include "relaxsim/system.hpp"

namespace relaxsim {

struct Preset {
  std::string name;
  std::string description;
  std::string model;
  nlohmann::json params = nlohmann::json::object();
  Grid1D grid;
  RunConfig run;
  int reference_refinement = 2;  // reference grid has this many times more cells
  std::function<Vec(const SystemDescriptor&, double x)> initial;  // full state at x

  //! Same domain, `cells` cells.
  Preset with_cells(int cells) const;
  Grid1D reference_grid() const;
  Field initial_field(const SystemDescriptor& sys, const Grid1D& grid) const;
  Field initial_reduced(const SystemDescriptor& sys, const Grid1D& grid) const;
};

const std::vector<std::string>& preset_names();

//! ConfigError listing the known presets for unknown names.
Preset make_preset(std::string_view name);

//! The preset a bare `run --model <name>` draws its initial data from.
std::string default_preset_for(std::string_view model);

}  // namespace relaxsim
