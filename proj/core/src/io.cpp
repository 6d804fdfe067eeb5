#include "crnli/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace crnli {

namespace {

ordered_json complex_to_json(const std::complex<double>& z) {
  return ordered_json::array({z.real(), z.imag()});
}

ordered_json vector_to_json(const Eigen::VectorXd& v) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Eigen::VectorXd vector_from_json(const ordered_json& j) {
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = j[i].get<double>();
  return v;
}

ordered_json condition_to_json(const ParamCondition& cond) {
  ordered_json j;
  j["relation"] = cond.is_equality ? "=" : ">";
  j["f_coefficients"] = vector_to_json(cond.f_coeff);
  j["pretty"] = cond.pretty();
  return j;
}

}  // namespace

ordered_json network_to_json(const CRNetwork& network) {
  ordered_json j;
  j["n"] = network.size();
  ordered_json edges = ordered_json::array();
  for (const auto& [from, to] : network.edges())
    edges.push_back(ordered_json::array({from + 1, to + 1}));
  j["edges"] = edges;
  return j;
}

CRNetwork network_from_json(const ordered_json& j) {
  if (!j.contains("n") || !j.contains("edges"))
    throw std::invalid_argument("network JSON must contain 'n' and 'edges'");
  const int n = j.at("n").get<int>();
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("network JSON edges must be [i, j] pairs");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return CRNetwork::from_edges_1based(n, edges);
}

ordered_json params_to_json(const ModelParameters& params) {
  ordered_json j;
  j["f"] = vector_to_json(params.f);
  j["p"] = params.p;
  j["c"] = params.c;
  j["b"] = params.b;
  j["alpha"] = params.alpha;
  j["beta"] = params.beta;
  return j;
}

ModelParameters params_from_json(const ordered_json& j) {
  for (const char* key : {"f", "p", "c", "b", "alpha", "beta"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("parameters JSON missing '") + key + "'");
  ModelParameters params;
  params.f = vector_from_json(j.at("f"));
  params.p = j.at("p").get<double>();
  params.c = j.at("c").get<double>();
  params.b = j.at("b").get<double>();
  params.alpha = j.at("alpha").get<double>();
  params.beta = j.at("beta").get<double>();
  return params;
}

ordered_json state_to_json(const SystemState& state) {
  ordered_json j;
  j["x"] = vector_to_json(state.x);
  j["r"] = vector_to_json(state.r);
  return j;
}

SystemState state_from_json(const ordered_json& j) {
  if (!j.contains("x") || !j.contains("r"))
    throw std::invalid_argument("state JSON must contain 'x' and 'r'");
  SystemState s;
  s.x = vector_from_json(j.at("x"));
  s.r = vector_from_json(j.at("r"));
  if (s.x.size() != s.r.size())
    throw std::invalid_argument("state JSON: x and r lengths differ");
  return s;
}

ordered_json support_to_json(const SupportPattern& support) {
  ordered_json j;
  ordered_json i_arr = ordered_json::array(), j_arr = ordered_json::array();
  for (int i : support.I) i_arr.push_back(i + 1);
  for (int i : support.J) j_arr.push_back(i + 1);
  j["I"] = i_arr;
  j["J"] = j_arr;
  return j;
}

SupportPattern support_from_json(const ordered_json& j) {
  SupportPattern s;
  for (const auto& v : j.at("I")) s.I.push_back(v.get<int>() - 1);
  for (const auto& v : j.at("J")) s.J.push_back(v.get<int>() - 1);
  return s;
}

ordered_json solution_to_json(const FixedPointSolution& solution,
                              const CRNetwork& network, const ModelParameters& params,
                              const StabilityReport* stability) {
  ordered_json j;
  j["x"] = vector_to_json(solution.state.x);
  j["r"] = vector_to_json(solution.state.r);
  j["support"] = support_to_json(solution.support);
  ordered_json labels = ordered_json::array();
  for (NodeRole role : solution.roles) labels.push_back(to_string(role));
  j["labels"] = labels;
  j["group"] = to_string(solution.group);
  ordered_json conds = ordered_json::array();
  for (const auto& cond : solution.conditions) conds.push_back(condition_to_json(cond));
  j["conditions"] = conds;
  j["residual"] = solution.residual;
  j["delta"] = vector_to_json(solution.delta);
  const StationarySpace space = stationary_space(solution, network, params);
  j["r_kernel_dim"] = space.r_kernel_dim;
  j["x_kernel_dim"] = space.x_kernel_dim;
  if (stability) j["stability"] = stability_report_to_json(*stability);
  return j;
}

ordered_json stability_report_to_json(const StabilityReport& report) {
  ordered_json j;
  ordered_json eigs = ordered_json::array();
  for (const auto& e : report.eigenvalues) eigs.push_back(complex_to_json(e));
  j["eigenvalues"] = eigs;
  j["verdict"] = to_string(report.verdict);
  j["eps_stab"] = report.eps_stab;
  ordered_json pw = ordered_json::array(), mw = ordered_json::array();
  for (const auto& e : report.positive_witnesses) pw.push_back(complex_to_json(e));
  for (const auto& e : report.marginal_witnesses) mw.push_back(complex_to_json(e));
  j["positive_witnesses"] = pw;
  j["marginal_witnesses"] = mw;
  j["eigensolver_converged"] = report.eigensolver_converged;
  if (!report.factor_checks.empty()) {
    ordered_json checks = ordered_json::array();
    for (const auto& check : report.factor_checks)
      checks.push_back(factor_check_to_json(check));
    j["factor_checks"] = checks;
  }
  return j;
}

ordered_json factor_check_to_json(const FactorCheck& check) {
  ordered_json j;
  j["name"] = check.name;
  j["applicable"] = check.applicable;
  if (!check.reason.empty()) j["reason"] = check.reason;
  j["linear_factors"] = check.linear_factors;
  j["closed_form_coefficients"] = vector_to_json(check.closed_coefficients);
  j["numeric_coefficients"] = vector_to_json(check.numeric_coefficients);
  j["max_coefficient_rel_error"] = check.max_coefficient_rel_error;
  j["all_coefficients_positive"] = check.all_coefficients_positive;
  j["max_root_mismatch"] = check.max_root_mismatch;
  j["ok"] = check.ok;
  return j;
}

ordered_json sweep_result_to_json(const SweepResult& result, bool include_records) {
  ordered_json j;
  j["rng"] = result.rng_name;
  j["spec"] = {
      {"nominal", params_to_json(result.spec.nominal)},
      {"relative_radius", result.spec.relative_radius},
      {"samples", result.spec.samples},
      {"seed", result.spec.seed},
      {"constraint", support_to_json(result.spec.constraint)},
  };
  j["stable_fraction"] = result.stable_fraction;
  j["li_preserved_fraction"] = result.li_preserved_fraction;
  j["rejected_draws"] = result.rejected_draws;
  if (include_records) {
    ordered_json records = ordered_json::array();
    for (const auto& rec : result.records) {
      ordered_json r;
      r["params"] = params_to_json(rec.params);
      r["fixed_point_found"] = rec.fixed_point_found;
      r["li_preserved"] = rec.li_preserved;
      r["verdict"] = rec.fixed_point_found ? to_string(rec.verdict) : "absent";
      records.push_back(std::move(r));
    }
    j["records"] = records;
  }
  return j;
}

ordered_json no_altruism_report_to_json(const NoAltruismReport& report) {
  ordered_json j;
  j["invertible"] = report.invertible;
  j["rank"] = report.rank;
  j["r"] = vector_to_json(report.r);
  j["has_zero_component"] = report.has_zero_component;
  j["has_negative_component"] = report.has_negative_component;
  ordered_json conds = ordered_json::array();
  for (const auto& cond : report.consistency_conditions)
    conds.push_back(condition_to_json(cond));
  j["consistency_conditions"] = conds;
  j["verdict"] = report.text;
  return j;
}

std::string trajectory_to_csv(const Trajectory& trajectory, int stride) {
  if (stride < 1) throw std::invalid_argument("trajectory_to_csv: stride must be >= 1");
  std::ostringstream os;
  os.precision(17);
  const int n = trajectory.states.empty() ? 0 : trajectory.states.front().size();
  os << "t";
  for (int i = 1; i <= n; ++i) os << ",x" << i;
  for (int i = 1; i <= n; ++i) os << ",r" << i;
  os << "\n";
  const std::size_t count = trajectory.times.size();
  for (std::size_t k = 0; k < count; ++k) {
    if (k % static_cast<std::size_t>(stride) != 0 && k != count - 1) continue;
    os << trajectory.times[k];
    for (int i = 0; i < n; ++i) os << "," << trajectory.states[k].x[i];
    for (int i = 0; i < n; ++i) os << "," << trajectory.states[k].r[i];
    os << "\n";
  }
  return os.str();
}

std::string sweep_records_to_csv(const SweepResult& result) {
  std::ostringstream os;
  os.precision(17);
  const int n = static_cast<int>(result.spec.nominal.f.size());
  os << "sample";
  for (int i = 1; i <= n; ++i) os << ",f" << i;
  os << ",p,c,b,alpha,beta,fixed_point_found,li_preserved,verdict\n";
  for (std::size_t k = 0; k < result.records.size(); ++k) {
    const auto& rec = result.records[k];
    os << k;
    for (int i = 0; i < n; ++i) os << "," << rec.params.f[i];
    os << "," << rec.params.p << "," << rec.params.c << "," << rec.params.b << ","
       << rec.params.alpha << "," << rec.params.beta << ","
       << (rec.fixed_point_found ? 1 : 0) << "," << (rec.li_preserved ? 1 : 0) << ","
       << (rec.fixed_point_found ? to_string(rec.verdict) : "absent") << "\n";
  }
  return os.str();
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  fs::create_directories(dir);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("atomic_write: cannot open " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("atomic_write: write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

ordered_json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("JSON parse error in " + path.string() + ": " + e.what());
  }
  return j;
}

}  // namespace crnli
