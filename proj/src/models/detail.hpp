#pragma once

#include <algorithm>

#include "relaxsim/smallmat.hpp"

namespace relaxsim::detail {

//! sigma = s I with b^2 / (stiffness (1 + s)) = diffusivity, so that the
//! scheme's limit diffusion at this interface equals `diffusivity`.
inline Mat scalar_sigma(double diffusivity, double b, double stiffness, int n_state) {
  const double d = std::max(diffusivity, 1e-300);
  return (b * b / (stiffness * d) - 1.0) * Mat::identity(n_state);
}

}  // namespace relaxsim::detail
