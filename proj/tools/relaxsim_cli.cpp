// relaxsim: command-line front end.
//
//   relaxsim run        AP scheme run, snapshot CSV + entropy trace
//   relaxsim reference  explicit solver for the limit diffusion equation
//   relaxsim compare    norms between two snapshot CSV files
//   relaxsim preset     AP run + reference + comparison for a named setup
//   relaxsim validate   structural checks of a model descriptor

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "relaxsim/csv.hpp"
#include "relaxsim/diagnostics.hpp"
#include "relaxsim/errors.hpp"
#include "relaxsim/limits.hpp"
#include "relaxsim/models.hpp"
#include "relaxsim/presets.hpp"
#include "relaxsim/scheme.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace relaxsim;

namespace {

// Every knob of run/reference. Unset optionals fall back to the JSON config
// file, then to the preset the initial data comes from.
struct RunFlags {
  std::optional<std::string> config_path;
  std::optional<std::string> model;
  std::optional<std::string> preset;
  std::vector<std::string> params;  // key=value
  std::optional<int> cells;
  std::optional<double> dx;
  std::optional<double> x0;
  std::optional<std::string> boundary;
  std::optional<double> eps;
  std::optional<double> cfl;
  std::optional<double> safety;
  std::optional<double> t_final;
  std::optional<std::vector<double>> snapshot_times;
  std::optional<int> entropy_every;
  std::optional<std::string> output;
  std::optional<std::string> entropy_output;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> solver;  // reference only
};

void add_run_flags(CLI::App* cmd, RunFlags& f, bool reference) {
  cmd->add_option("--config", f.config_path, "JSON file with the same keys as the long flags; flags win");
  cmd->add_option("--model", f.model, "euler-friction | m1 | coupled-euler-m1 | shallow-water");
  cmd->add_option("--init", f.preset, "preset whose initial data to use (default: the model's preset)");
  cmd->add_option("--param", f.params, "model parameter as key=value (repeatable)");
  cmd->add_option("--cells", f.cells, "number of cells");
  cmd->add_option("--dx", f.dx, "cell width");
  cmd->add_option("--x0", f.x0, "left edge of the domain");
  cmd->add_option("--boundary", f.boundary, "neumann-outflow | periodic");
  cmd->add_option("--epsilon", f.eps, "relaxation scaling epsilon");
  cmd->add_option("--cfl", f.cfl, "CFL number in (0, 1]");
  if (!reference) cmd->add_option("--safety", f.safety, "multiplier (>= 1) on the wave-speed estimate");
  cmd->add_option("--t-final", f.t_final, "final time");
  cmd->add_option("--snapshot-times", f.snapshot_times, "extra output times")->delimiter(',');
  if (!reference) cmd->add_option("--entropy-every", f.entropy_every, "entropy sampling cadence in steps (0: off)");
  cmd->add_option("--output,-o", f.output, "snapshot CSV path");
  if (!reference) cmd->add_option("--entropy-output", f.entropy_output, "entropy trace CSV path");
  cmd->add_option("--seed", f.seed, "seed recorded in the output metadata");
  if (reference) cmd->add_option("--solver", f.solver, "reference | ap-limit");
}

template <class T>
void fill_from_json(std::optional<T>& slot, const json& cfg, const char* key) {
  if (slot || !cfg.contains(key)) return;
  try {
    slot = cfg.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

void merge_config_file(RunFlags& f) {
  if (!f.config_path) return;
  std::ifstream is(*f.config_path);
  if (!is) throw ConfigError("cannot open config file '" + *f.config_path + "'");
  json cfg;
  try {
    cfg = json::parse(is);
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + *f.config_path + "': " + e.what());
  }
  if (!cfg.is_object()) throw ConfigError("config file must hold a JSON object");
  static const std::set<std::string> known{"model", "init", "params", "cells", "dx", "x0", "boundary",
                                           "epsilon", "cfl", "safety", "t_final", "snapshot_times",
                                           "entropy_every", "output", "entropy_output", "seed", "solver"};
  for (const auto& [key, value] : cfg.items()) {
    if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  fill_from_json(f.model, cfg, "model");
  fill_from_json(f.preset, cfg, "init");
  fill_from_json(f.cells, cfg, "cells");
  fill_from_json(f.dx, cfg, "dx");
  fill_from_json(f.x0, cfg, "x0");
  fill_from_json(f.boundary, cfg, "boundary");
  fill_from_json(f.eps, cfg, "epsilon");
  fill_from_json(f.cfl, cfg, "cfl");
  fill_from_json(f.safety, cfg, "safety");
  fill_from_json(f.t_final, cfg, "t_final");
  fill_from_json(f.snapshot_times, cfg, "snapshot_times");
  fill_from_json(f.entropy_every, cfg, "entropy_every");
  fill_from_json(f.output, cfg, "output");
  fill_from_json(f.entropy_output, cfg, "entropy_output");
  fill_from_json(f.seed, cfg, "seed");
  fill_from_json(f.solver, cfg, "solver");
  if (cfg.contains("params")) {
    // Command-line --param entries come later and therefore win.
    std::vector<std::string> merged;
    for (const auto& [k, v] : cfg.at("params").items()) merged.push_back(k + "=" + v.dump());
    merged.insert(merged.end(), f.params.begin(), f.params.end());
    f.params = merged;
  }
}

struct Resolved {
  Preset preset;
  SystemDescriptor sys;
  json params;
  std::uint64_t seed = 0;
  std::string output;
  std::string entropy_output;
};

Resolved resolve(RunFlags f, const char* default_output) {
  merge_config_file(f);
  Resolved r;
  if (!f.model && !f.preset) throw ConfigError("--model is required");
  const std::string preset_name = f.preset ? *f.preset : default_preset_for(*f.model);
  r.preset = make_preset(preset_name);
  if (f.model && *f.model != r.preset.model) {
    throw ConfigError("--init " + preset_name + " holds data for model '" + r.preset.model + "', not '" + *f.model +
                      "'");
  }
  r.params = r.preset.params;
  for (const std::string& kv : f.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--param expects key=value, got '" + kv + "'");
    try {
      r.params[kv.substr(0, eq)] = json::parse(kv.substr(eq + 1)).get<double>();
    } catch (const json::exception&) {
      throw ConfigError("--param " + kv.substr(0, eq) + ": value is not a number");
    }
  }
  r.sys = make_model(r.preset.model, r.params);

  Preset& p = r.preset;
  if (f.cells && *f.cells < 3) throw ConfigError("--cells must be >= 3 (got " + std::to_string(*f.cells) + ")");
  if (f.dx && !(*f.dx > 0.0)) throw ConfigError("--dx must be > 0");
  if (f.cells && !f.dx) p = p.with_cells(*f.cells);
  if (f.dx) {
    p.grid.dx = *f.dx;
    p.grid.cells = f.cells ? *f.cells : static_cast<int>(std::lround(p.grid.length() / *f.dx));
  }
  if (f.x0) p.grid.x0 = *f.x0;
  if (f.boundary) p.grid.boundary = parse_boundary(*f.boundary);
  p.grid.validate();

  RunConfig& rc = p.run;
  if (f.eps) {
    if (!(*f.eps > 0.0)) throw ConfigError("--epsilon must be > 0 (got " + format_double(*f.eps) + ")");
    rc.eps = *f.eps;
  }
  if (f.cfl) {
    if (!(*f.cfl > 0.0 && *f.cfl <= 1.0)) throw ConfigError("--cfl must lie in (0, 1] (got " + format_double(*f.cfl) + ")");
    rc.cfl = *f.cfl;
  }
  if (f.safety) {
    if (!(*f.safety >= 1.0)) throw ConfigError("--safety must be >= 1");
    rc.scheme.safety = *f.safety;
  }
  if (f.t_final) {
    if (!(*f.t_final >= 0.0)) throw ConfigError("--t-final must be >= 0 (got " + format_double(*f.t_final) + ")");
    rc.t_final = *f.t_final;
  }
  if (f.snapshot_times) rc.snapshot_times = *f.snapshot_times;
  if (f.entropy_every) {
    if (*f.entropy_every < 0) throw ConfigError("--entropy-every must be >= 0");
    rc.entropy_every = *f.entropy_every;
  }
  r.seed = f.seed.value_or(0);
  r.output = f.output.value_or(default_output);
  if (f.entropy_output) {
    r.entropy_output = *f.entropy_output;
  } else {
    fs::path out(r.output);
    r.entropy_output = (out.parent_path() / (out.stem().string() + "_entropy.csv")).string();
  }
  return r;
}

MetaList run_meta(const Resolved& r, const char* kind) {
  const RunConfig& rc = r.preset.run;
  return {{"kind", kind},
          {"model", r.sys.name},
          {"params", r.params.dump()},
          {"init", r.preset.name},
          {"epsilon", format_double(rc.eps)},
          {"cfl", format_double(rc.cfl)},
          {"safety", format_double(rc.scheme.safety)},
          {"t_final", format_double(rc.t_final)},
          {"seed", std::to_string(r.seed)}};
}

int cmd_run(const RunFlags& flags) {
  const Resolved r = resolve(flags, "run.csv");
  const SnapshotSeries s = run(r.sys, r.preset.grid, r.preset.initial_field(r.sys, r.preset.grid), r.preset.run);
  MetaList meta = run_meta(r, "state");
  meta.emplace_back("steps", std::to_string(s.steps));
  write_snapshots_csv(r.output, s, meta);
  std::cout << "wrote " << r.output << " (" << s.snapshots.size() << " snapshots, " << s.steps << " steps)\n";
  if (!s.entropy.empty()) {
    write_trace_csv(r.entropy_output, s.entropy, "S");
    std::cout << "wrote " << r.entropy_output << "\n";
  }
  return 0;
}

LimitSolver parse_solver(const std::optional<std::string>& name) {
  if (!name || *name == "reference") return LimitSolver::Reference;
  if (*name == "ap-limit") return LimitSolver::DiscreteApLimit;
  throw ConfigError("--solver must be reference or ap-limit (got '" + *name + "')");
}

DiffusionRunConfig diffusion_config(const Preset& p, LimitSolver solver) {
  DiffusionRunConfig dc;
  dc.t_final = p.run.t_final;
  dc.cfl = p.run.cfl;
  dc.snapshot_times = p.run.snapshot_times;
  dc.solver = solver;
  dc.scheme = p.run.scheme;
  return dc;
}

int cmd_reference(const RunFlags& flags) {
  const Resolved r = resolve(flags, "reference.csv");
  const LimitSolver solver = parse_solver(flags.solver);
  const SnapshotSeries s = run_diffusion(r.sys, r.preset.grid, r.preset.initial_reduced(r.sys, r.preset.grid),
                                         diffusion_config(r.preset, solver));
  MetaList meta = run_meta(r, "reduced");
  meta.emplace_back("solver", solver == LimitSolver::Reference ? "reference" : "ap-limit");
  meta.emplace_back("steps", std::to_string(s.steps));
  write_snapshots_csv(r.output, s, meta);
  std::cout << "wrote " << r.output << " (" << s.snapshots.size() << " snapshots, " << s.steps << " steps)\n";
  return 0;
}

// Snapshot series of the reduced variable u, whatever the file holds.
SnapshotSeries reduced_series(const CsvSeries& csv, const std::string& path) {
  const std::string* kind = csv.find("kind");
  if (kind && *kind == "reduced") return csv.series;
  const std::string* model = csv.find("model");
  if (!kind || !model) {
    return csv.series;  // plain table: compare the columns as they are
  }
  const std::string* params = csv.find("params");
  const SystemDescriptor sys = make_model(*model, params ? json::parse(*params) : json::object());
  if (csv.series.n_components != sys.N) throw ConfigError(path + ": component count does not match " + *model);
  SnapshotSeries out = csv.series;
  out.n_components = sys.n;
  for (Snapshot& s : out.snapshots) s.cells = reduce_field(sys, s.cells);
  return out;
}

json report_json(const std::vector<ErrorReport>& reports) {
  json arr = json::array();
  for (const ErrorReport& r : reports) {
    json comps = json::array();
    for (const ComponentNorms& c : r.components) {
      comps.push_back({{"l1", c.l1}, {"l2", c.l2}, {"linf", c.linf}, {"relative_l1", c.relative_l1()}});
    }
    arr.push_back({{"t", r.t}, {"cells", r.cells}, {"dx", r.dx}, {"refinement", r.refinement}, {"components", comps}});
  }
  return arr;
}

void print_reports(std::ostream& os, const std::vector<ErrorReport>& reports) {
  for (const ErrorReport& r : reports) {
    os << "t = " << format_double(r.t) << "  cells = " << r.cells << "  refinement = " << r.refinement << "\n";
    for (std::size_t c = 0; c < r.components.size(); ++c) {
      const ComponentNorms& n = r.components[c];
      os << "  u_" << c << ": L1 = " << n.l1 << "  L2 = " << n.l2 << "  Linf = " << n.linf
         << "  relative L1 = " << n.relative_l1() << "\n";
    }
  }
}

int cmd_compare(const std::string& a, const std::string& b, const std::string& format) {
  const auto reports = compare(reduced_series(read_snapshots_csv(a), a), reduced_series(read_snapshots_csv(b), b));
  if (format == "json") {
    std::cout << report_json(reports).dump(2) << "\n";
  } else {
    print_reports(std::cout, reports);
  }
  return 0;
}

int cmd_preset(const std::string& name, std::optional<int> cells, std::optional<double> t_final,
               std::optional<double> eps, const std::string& out_dir) {
  Preset p = make_preset(name);
  if (cells) p = p.with_cells(*cells);
  if (t_final) {
    if (!(*t_final >= 0.0)) throw ConfigError("--t-final must be >= 0");
    p.run.t_final = *t_final;
  }
  if (eps) {
    if (!(*eps > 0.0)) throw ConfigError("--epsilon must be > 0 (got " + format_double(*eps) + ")");
    p.run.eps = *eps;
  }
  const SystemDescriptor sys = make_model(p.model, p.params);
  fs::create_directories(out_dir);
  const auto path = [&](const std::string& suffix) { return (fs::path(out_dir) / (name + suffix)).string(); };

  // The two legs share nothing mutable.
  auto reference = std::async(std::launch::async, [&] {
    return run_diffusion(sys, p.reference_grid(), p.initial_reduced(sys, p.reference_grid()),
                         diffusion_config(p, LimitSolver::Reference));
  });
  const SnapshotSeries ap = run(sys, p.grid, p.initial_field(sys, p.grid), p.run);
  const SnapshotSeries ref = reference.get();

  Resolved r;
  r.preset = p;
  r.sys = sys;
  r.params = p.params;
  MetaList meta = run_meta(r, "state");
  meta.emplace_back("steps", std::to_string(ap.steps));
  write_snapshots_csv(path("_ap.csv"), ap, meta);
  MetaList ref_meta = run_meta(r, "reduced");
  ref_meta.emplace_back("solver", "reference");
  write_snapshots_csv(path("_reference.csv"), ref, ref_meta);
  if (!ap.entropy.empty()) write_trace_csv(path("_entropy.csv"), ap.entropy, "S");
  write_trace_csv(path("_momentum.csv"), ap.momentum, "momentum_max");

  SnapshotSeries ap_u = ap;
  ap_u.n_components = sys.n;
  for (Snapshot& s : ap_u.snapshots) s.cells = reduce_field(sys, s.cells);
  const auto reports = compare(ap_u, ref);
  std::ofstream(path("_compare.json")) << report_json(reports).dump(2) << "\n";

  std::cout << p.name << ": " << p.description << "\n";
  std::cout << "  AP run: " << p.grid.cells << " cells, eps = " << p.run.eps << ", " << ap.steps << " steps to t = "
            << p.run.t_final << "\n";
  std::cout << "  reference: " << p.reference_grid().cells << " cells, " << ref.steps << " steps\n";
  if (!ap.entropy.empty()) {
    std::cout << "  entropy: " << ap.entropy.front().second << " -> " << ap.entropy.back().second << "\n";
  }
  std::cout << "  final momentum_max: " << ap.momentum.back().second << "\n";
  print_reports(std::cout, {reports.back()});
  std::cout << "  files in " << out_dir << "\n";
  return 0;
}

int cmd_validate(const std::string& model, const std::vector<std::string>& params, int samples, std::uint64_t seed) {
  json pj = json::object();
  for (const std::string& kv : params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--param expects key=value, got '" + kv + "'");
    pj[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  const SystemDescriptor sys = make_model(model, pj);
  const ValidationReport rep =
      validate_descriptor(sys, random_reduced_states(sys, seed, samples), random_states(sys, seed + 1, samples));
  std::cout << "model " << sys.name << " (N = " << sys.N << ", n = " << sys.n << ", m = " << sys.m << "), "
            << samples << " samples\n"
            << "  max |Q R(U)|       " << rep.relax_in_kernel << "\n"
            << "  max |Q E(u) - u|   " << rep.equilibrium_reduces << "\n"
            << "  max |R(E(u))|      " << rep.equilibrium_at_rest << "\n"
            << "  max |Q F(E(u))|    " << rep.flux_constraint << "\n"
            << "  rank Q             " << rep.q_rank << (rep.q_full_rank ? "" : " (deficient)") << "\n"
            << (rep.passed() ? "PASS" : "FAIL") << " (tolerance " << rep.tolerance << ")\n";
  return rep.passed() ? 0 : 1;
}

void apply_thread_cap() {
  const char* env = std::getenv("RELAXSIM_THREADS");
  if (!env || !*env) return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) throw ConfigError(std::string("RELAXSIM_THREADS must be a positive integer, got '") + env + "'");
  omp_set_num_threads(static_cast<int>(n));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic-preserving finite-volume solver for stiff relaxation systems"};
  app.require_subcommand(1);

  RunFlags run_flags, ref_flags;
  auto* run_cmd = app.add_subcommand("run", "run the AP scheme and write snapshots");
  add_run_flags(run_cmd, run_flags, false);
  auto* ref_cmd = app.add_subcommand("reference", "solve the limit diffusion equation");
  add_run_flags(ref_cmd, ref_flags, true);

  std::string file_a, file_b, format = "text";
  auto* cmp_cmd = app.add_subcommand("compare", "norms of the difference between two snapshot files");
  cmp_cmd->add_option("file_a", file_a)->required();
  cmp_cmd->add_option("file_b", file_b, "reference; relative norms use this file")->required();
  cmp_cmd->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));

  std::string preset_name, out_dir = ".";
  std::optional<int> preset_cells;
  std::optional<double> preset_t, preset_eps;
  auto* preset_cmd = app.add_subcommand("preset", "run a named experiment end to end");
  preset_cmd->add_option("name", preset_name)->required();
  preset_cmd->add_option("--cells", preset_cells, "cells of the AP run (domain kept)");
  preset_cmd->add_option("--t-final", preset_t, "final time");
  preset_cmd->add_option("--epsilon", preset_eps, "relaxation scaling epsilon");
  preset_cmd->add_option("--output-dir", out_dir, "directory for the output files");

  std::string val_model;
  std::vector<std::string> val_params;
  int val_samples = 1000;
  std::uint64_t val_seed = 1;
  auto* val_cmd = app.add_subcommand("validate", "check the structural assumptions of a model");
  val_cmd->add_option("--model", val_model)->required();
  val_cmd->add_option("--param", val_params, "model parameter as key=value (repeatable)");
  val_cmd->add_option("--samples", val_samples, "random samples")->check(CLI::PositiveNumber);
  val_cmd->add_option("--seed", val_seed, "sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    apply_thread_cap();
    if (*run_cmd) return cmd_run(run_flags);
    if (*ref_cmd) return cmd_reference(ref_flags);
    if (*cmp_cmd) return cmd_compare(file_a, file_b, format);
    if (*preset_cmd) return cmd_preset(preset_name, preset_cells, preset_t, preset_eps, out_dir);
    if (*val_cmd) return cmd_validate(val_model, val_params, val_samples, val_seed);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
