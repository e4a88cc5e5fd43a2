#include <random>

#include "relaxsim/errors.hpp"
#include "relaxsim/models.hpp"

namespace relaxsim {

namespace {

struct Draw {
  std::mt19937_64 rng;
  double operator()(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
};

}  // namespace

std::vector<Vec> random_reduced_states(const SystemDescriptor& sys, std::uint64_t seed, int count) {
  Draw draw{std::mt19937_64(seed)};
  std::vector<Vec> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    if (sys.name == "euler-friction") {
      out.push_back(Vec{draw(0.1, 5.0)});
    } else if (sys.name == "m1") {
      const double tau = draw(0.1, 2.0);
      out.push_back(Vec{tau + tau * tau * tau * tau});
    } else if (sys.name == "coupled-euler-m1") {
      out.push_back(Vec{draw(0.1, 5.0), draw(0.1, 5.0)});
    } else if (sys.name == "shallow-water") {
      out.push_back(Vec{draw(0.1, 5.0)});
    } else {
      throw NotAvailable("no sampling box for model " + sys.name);
    }
  }
  return out;
}

std::vector<Vec> random_states(const SystemDescriptor& sys, std::uint64_t seed, int count) {
  Draw draw{std::mt19937_64(seed)};
  std::vector<Vec> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    if (sys.name == "euler-friction") {
      const double rho = draw(0.1, 5.0);
      out.push_back(Vec{rho, rho * draw(-2.0, 2.0)});
    } else if (sys.name == "m1") {
      const double e = draw(0.1, 5.0);
      out.push_back(Vec{e, e * draw(-0.99, 0.99), draw(0.1, 2.0)});
    } else if (sys.name == "coupled-euler-m1") {
      const double rho = draw(0.1, 5.0), e = draw(0.1, 5.0);
      out.push_back(Vec{rho, rho * draw(-2.0, 2.0), e, e * draw(-0.99, 0.99)});
    } else if (sys.name == "shallow-water") {
      const double h = draw(0.1, 5.0);
      out.push_back(Vec{h, h * draw(-2.0, 2.0)});
    } else {
      throw NotAvailable("no sampling box for model " + sys.name);
    }
  }
  return out;
}

}  // namespace relaxsim
