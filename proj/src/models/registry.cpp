#include <set>

#include "relaxsim/errors.hpp"
#include "relaxsim/models.hpp"

namespace relaxsim {

namespace {

void reject_unknown_keys(std::string_view model, const nlohmann::json& params, const std::set<std::string>& known) {
  if (params.is_null()) return;
  if (!params.is_object()) throw ConfigError("model parameters for '" + std::string(model) + "' must be an object");
  for (const auto& [key, value] : params.items()) {
    if (!known.count(key)) {
      throw ConfigError("unknown parameter '" + key + "' for model '" + std::string(model) + "'");
    }
    if (!value.is_number()) throw ConfigError("parameter '" + key + "' must be a number");
  }
}

double get(const nlohmann::json& params, const char* key, double fallback) {
  if (params.is_object() && params.contains(key)) return params.at(key).get<double>();
  return fallback;
}

}  // namespace

const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names{"euler-friction", "m1", "coupled-euler-m1", "shallow-water"};
  return names;
}

SystemDescriptor make_model(std::string_view name, const nlohmann::json& params) {
  if (name == "euler-friction") {
    reject_unknown_keys(name, params, {"eta", "c_p"});
    EulerFrictionParams p;
    p.eta = get(params, "eta", p.eta);
    p.c_p = get(params, "c_p", p.c_p);
    return make_euler_friction(p);
  }
  if (name == "m1") {
    reject_unknown_keys(name, params, {});
    return make_m1();
  }
  if (name == "coupled-euler-m1") {
    reject_unknown_keys(name, params, {"kappa", "sigma_c", "c_p", "eta"});
    CoupledParams p;
    p.kappa = get(params, "kappa", p.kappa);
    p.sigma_c = get(params, "sigma_c", p.sigma_c);
    p.c_p = get(params, "c_p", p.c_p);
    p.eta = get(params, "eta", p.eta);
    return make_coupled(p);
  }
  if (name == "shallow-water") {
    reject_unknown_keys(name, params, {"g", "kappa0", "delta"});
    ShallowWaterParams p;
    p.g = get(params, "g", p.g);
    p.kappa0 = get(params, "kappa0", p.kappa0);
    p.delta = get(params, "delta", p.delta);
    return make_shallow_water(p);
  }
  std::string known;
  for (const auto& n : model_names()) known += (known.empty() ? "" : ", ") + n;
  throw ConfigError("unknown model '" + std::string(name) + "' (known: " + known + ")");
}

Mat limit_diffusivity(const SystemDescriptor& sys, const Vec& u_left, const Vec& u_right, double dx) {
  for (const Vec* u : {&u_left, &u_right}) {
    if (u->size() != sys.n || !u->all_finite()) throw DomainError("reduced state has wrong size or is not finite");
    Vec E;
    try {
      E = sys.equilibrium(*u);
    } catch (const DomainError&) {
      throw;
    }
    if (!sys.admissible(E)) throw DomainError("reduced state outside the admissible set of " + sys.name);
  }
  return sys.limit_diffusivity(u_left, u_right, dx);
}

}  // namespace relaxsim
