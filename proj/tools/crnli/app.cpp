#include "app.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "crnli/catalog.hpp"
#include "crnli/io.hpp"

namespace crnli::cli {

namespace {

namespace fs = std::filesystem;

struct InputFileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct JsonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ComputationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ordered_json load_json(const std::string& path) {
  if (!fs::exists(path)) throw InputFileError("file not found: " + path);
  try {
    return load_json_file(path);
  } catch (const std::invalid_argument& e) {
    throw JsonError(e.what());
  } catch (const std::runtime_error& e) {
    throw InputFileError(e.what());
  }
}

CRNetwork load_network(const std::string& source) {
  const auto& names = catalog_network_names();
  if (std::find(names.begin(), names.end(), source) != names.end())
    return get_network(source);
  return network_from_json(load_json(source));
}

ModelParameters load_params(const std::string& path, int n) {
  ModelParameters params = params_from_json(load_json(path));
  params.validate(n);
  return params;
}

fs::path resolve_out(const std::string& out, const std::string& default_name) {
  if (!out.empty()) return out;
  if (const char* dir = std::getenv("CRNLI_OUT_DIR"))
    return fs::path(dir) / default_name;
  return default_name;
}

void write_artifact(const fs::path& path, const std::string& content) {
  try {
    atomic_write(path, content);
  } catch (const std::exception& e) {
    throw std::ios_base::failure(e.what());
  }
  std::cout << path.string() << "\n";
}

std::vector<int> parse_index_list(const std::string& token, char tag) {
  const std::string prefix = std::string(1, tag) + "=";
  if (token.rfind(prefix, 0) != 0)
    throw CLI::ValidationError("--support", "expected '" + prefix + "<comma list>', got '" + token + "'");
  std::vector<int> out;
  std::string rest = token.substr(2);
  std::stringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item) - 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SupportPattern parse_support(const std::vector<std::string>& tokens) {
  if (tokens.size() != 2)
    throw CLI::ValidationError("--support", "expected two tokens: I=<list> J=<list>");
  SupportPattern support;
  support.I = parse_index_list(tokens[0], 'I');
  support.J = parse_index_list(tokens[1], 'J');
  return support;
}

const char* kExitCodeFooter =
    "Exit codes:\n"
    "  0  success\n"
    "  2  command line usage error\n"
    "  3  input file missing or unreadable\n"
    "  4  input file failed to parse\n"
    "  5  model invariant violated (network/parameter validation)\n"
    "  6  computation failed (no fixed point, undefined Jacobian, ...)\n"
    "  7  output write error\n"
    "\n"
    "CRNLI_OUT_DIR selects the directory for default output file names.";

int dispatch(int argc, const char* const* argv) {
  CLI::App app{"cross-immunoreactivity network analysis toolkit"};
  app.footer(kExitCodeFooter);
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "integrate the evolution equations, write a trajectory CSV");
  std::string sim_net, sim_params, sim_init, sim_out;
  double sim_tend = 0.0, sim_rtol = 1e-8, sim_atol = 1e-10, sim_init_value = 0.1;
  int sim_stride = 1;
  sim->add_option("--network", sim_net, "named network or network JSON file")->required();
  sim->add_option("--params", sim_params, "parameters JSON file")->required();
  sim->add_option("--init", sim_init, "initial state JSON file (default: uniform populations)");
  sim->add_option("--init-value", sim_init_value, "uniform initial population when --init is absent");
  sim->add_option("--t-end", sim_tend, "integration horizon (default 1000/b)");
  sim->add_option("--stride", sim_stride, "keep every k-th sample in the CSV");
  sim->add_option("--rtol", sim_rtol, "relative tolerance");
  sim->add_option("--atol", sim_atol, "absolute tolerance");
  sim->add_option("--out", sim_out, "output CSV path (default trajectory.csv)");

  // fixed-points
  auto* fpc = app.add_subcommand("fixed-points", "enumerate fixed points with classification and stability");
  std::string fp_net, fp_params, fp_out;
  int fp_max_n = 12;
  fpc->add_option("--network", fp_net)->required();
  fpc->add_option("--params", fp_params)->required();
  fpc->add_option("--max-n", fp_max_n, "combinatorial safety limit");
  fpc->add_option("--out", fp_out, "output JSON path (default fixed_points.json)");

  // stability
  auto* stab = app.add_subcommand("stability", "Jacobian spectrum and verdict for a support or state");
  std::string st_net, st_params, st_state, st_out;
  std::vector<std::string> st_support;
  stab->add_option("--network", st_net)->required();
  stab->add_option("--params", st_params)->required();
  stab->add_option("--support", st_support, "support sets, e.g. --support I=1,3 J=1,2")->expected(2);
  stab->add_option("--state", st_state, "state JSON file (alternative to --support)");
  stab->add_option("--out", st_out, "output JSON path (default stability.json)");

  // sweep
  auto* sw = app.add_subcommand("sweep", "Monte Carlo parameter-robustness sweep around a nominal point");
  std::string sw_net, sw_params, sw_out, sw_csv;
  std::vector<std::string> sw_support;
  double sw_radius = 0.05;
  int sw_samples = 100;
  std::uint64_t sw_seed = 0;
  bool sw_no_records = false;
  sw->add_option("--network", sw_net)->required();
  sw->add_option("--params", sw_params)->required();
  sw->add_option("--support", sw_support, "tracked support, e.g. --support I=1,3 J=2,3")->required()->expected(2);
  sw->add_option("--radius", sw_radius, "relative box half-width");
  sw->add_option("--samples", sw_samples, "number of samples");
  sw->add_option("--seed", sw_seed, "RNG seed");
  sw->add_option("--out", sw_out, "output JSON path (default sweep.json)");
  sw->add_option("--csv", sw_csv, "also stream per-sample rows to this CSV");
  sw->add_flag("--no-records", sw_no_records, "omit per-sample records from the JSON");

  // catalog
  auto* cat = app.add_subcommand("catalog", "named networks and their fixed-point formula entries");
  auto* cat_list = cat->add_subcommand("list", "list named networks");
  auto* cat_show = cat->add_subcommand("show", "emit a network and its entries");
  std::string cat_name, cat_out;
  cat_show->add_option("name", cat_name, "network name")->required();
  cat_show->add_option("--out", cat_out, "write JSON here instead of stdout");
  cat->require_subcommand(1);

  // no-altruism feasibility (exposes the altruism-necessity test)
  auto* noalt = app.add_subcommand("no-altruism", "feasibility of LI without altruistic nodes");
  std::string na_net, na_params, na_out;
  noalt->add_option("--network", na_net)->required();
  noalt->add_option("--params", na_params)->required();
  noalt->add_option("--out", na_out, "output JSON path (default no_altruism.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsageError;
  }

  if (sim->parsed()) {
    const CRNetwork network = load_network(sim_net);
    const ModelParameters params = load_params(sim_params, network.size());
    SystemState initial;
    if (!sim_init.empty()) {
      initial = state_from_json(load_json(sim_init));
    } else {
      initial.x = Eigen::VectorXd::Constant(network.size(), sim_init_value);
      initial.r = Eigen::VectorXd::Constant(network.size(), sim_init_value);
    }
    const double t_end = sim_tend > 0.0 ? sim_tend : default_t_end(params);
    IntegratorOptions options;
    options.rtol = sim_rtol;
    options.atol = sim_atol;
    Trajectory traj;
    try {
      traj = integrate(initial, network, params, t_end, options);
    } catch (const StepSizeUnderflow& e) {
      throw ComputationError(e.what());
    }
    write_artifact(resolve_out(sim_out, "trajectory.csv"), trajectory_to_csv(traj, sim_stride));
    return kOk;
  }

  if (fpc->parsed()) {
    const CRNetwork network = load_network(fp_net);
    const ModelParameters params = load_params(fp_params, network.size());
    EnumerateOptions options;
    options.max_n = fp_max_n;
    const auto solutions = enumerate_fixed_points(network, params, options);
    ordered_json j;
    j["network"] = network_to_json(network);
    j["parameters"] = params_to_json(params);
    ordered_json arr = ordered_json::array();
    for (const auto& sol : solutions) {
      const StabilityReport report = analyze_stability(sol.state, network, params);
      arr.push_back(solution_to_json(sol, network, params, &report));
    }
    j["solutions"] = arr;
    write_artifact(resolve_out(fp_out, "fixed_points.json"), j.dump(2) + "\n");
    return kOk;
  }

  if (stab->parsed()) {
    const CRNetwork network = load_network(st_net);
    const ModelParameters params = load_params(st_params, network.size());
    ordered_json j;
    j["network"] = network_to_json(network);
    j["parameters"] = params_to_json(params);
    SystemState state;
    if (!st_support.empty()) {
      const SupportPattern support = parse_support(st_support);
      SolveDiagnostics diag;
      auto sol = solve_support(network, params, support, &diag);
      if (!sol) throw ComputationError("no fixed point for this support: " + diag.reason);
      state = sol->state;
      j["fixed_point"] = solution_to_json(*sol, network, params);
    } else if (!st_state.empty()) {
      state = state_from_json(load_json(st_state));
    } else {
      throw CLI::ValidationError("stability", "one of --support or --state is required");
    }
    StabilityReport report;
    try {
      report = analyze_stability(state, network, params);
    } catch (const JacobianUndefined& e) {
      throw ComputationError(e.what());
    }
    // The closed-form factor checks apply to the named networks they were
    // derived for; include them when the parameters admit the fixed point.
    if (st_net == "branch_cycle3") {
      FactorCheck check = check_branch_cycle_polynomial(params);
      if (check.applicable) report.factor_checks.push_back(std::move(check));
    } else if (st_net == "composed5") {
      FactorCheck check = check_five_node_polynomial(params);
      if (check.applicable) report.factor_checks.push_back(std::move(check));
    }
    j["stability"] = stability_report_to_json(report);
    write_artifact(resolve_out(st_out, "stability.json"), j.dump(2) + "\n");
    return kOk;
  }

  if (sw->parsed()) {
    const CRNetwork network = load_network(sw_net);
    SweepSpec spec;
    spec.nominal = load_params(sw_params, network.size());
    spec.relative_radius = sw_radius;
    spec.samples = sw_samples;
    spec.seed = sw_seed;
    spec.constraint = parse_support(sw_support);
    SweepResult result;
    try {
      result = sweep(spec, network);
    } catch (const std::runtime_error& e) {
      throw ComputationError(e.what());
    }
    write_artifact(resolve_out(sw_out, "sweep.json"),
                   sweep_result_to_json(result, !sw_no_records).dump(2) + "\n");
    if (!sw_csv.empty()) write_artifact(sw_csv, sweep_records_to_csv(result));
    return kOk;
  }

  if (cat->parsed()) {
    if (cat_list->parsed()) {
      for (const auto& name : catalog_network_names()) std::cout << name << "\n";
      return kOk;
    }
    const CRNetwork network = get_network(cat_name);
    ordered_json j;
    j["name"] = cat_name;
    j["network"] = network_to_json(network);
    ordered_json entries = ordered_json::array();
    for (const auto& entry : catalog_entries(cat_name)) {
      ordered_json e;
      e["index"] = entry.index;
      e["support"] = support_to_json(entry.support);
      e["conditions"] = entry.conditions_text;
      e["group"] = to_string(entry.group);
      e["family_dim"] = entry.family_dim;
      e["formulas"] = entry.formulas_text;
      entries.push_back(std::move(e));
    }
    j["entries"] = entries;
    const std::string text = j.dump(2) + "\n";
    if (cat_out.empty())
      std::cout << text;
    else
      write_artifact(cat_out, text);
    return kOk;
  }

  if (noalt->parsed()) {
    const CRNetwork network = load_network(na_net);
    const ModelParameters params = load_params(na_params, network.size());
    const NoAltruismReport report = no_altruism_feasibility(network, params);
    write_artifact(resolve_out(na_out, "no_altruism.json"),
                   no_altruism_report_to_json(report).dump(2) + "\n");
    return kOk;
  }

  return kUsageError;
}

void print_error(int code, const char* kind, const std::string& message) {
  ordered_json j;
  j["error"] = {{"code", code}, {"kind", kind}, {"message", message}};
  std::cerr << j.dump() << "\n";
}

}  // namespace

int run(int argc, const char* const* argv) {
  try {
    return dispatch(argc, argv);
  } catch (const InputFileError& e) {
    print_error(kFileMissing, "input_file", e.what());
    return kFileMissing;
  } catch (const JsonError& e) {
    print_error(kParseError, "parse", e.what());
    return kParseError;
  } catch (const ComputationError& e) {
    print_error(kComputationFailed, "computation", e.what());
    return kComputationFailed;
  } catch (const std::ios_base::failure& e) {
    print_error(kWriteError, "write", e.what());
    return kWriteError;
  } catch (const std::invalid_argument& e) {
    print_error(kInvariantViolation, "invariant", e.what());
    return kInvariantViolation;
  } catch (const std::exception& e) {
    print_error(kComputationFailed, "internal", e.what());
    return kComputationFailed;
  }
}

}  // namespace crnli::cli
