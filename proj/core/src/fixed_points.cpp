#include "crnli/fixed_points.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace crnli {

namespace {

constexpr double kPositivityTol = 1e-12;
constexpr double kConsistencyTol = 1e-9;
constexpr double kRankCutoffRel = 1e-10;
constexpr double kResidualTol = 1e-9;

// (alpha, beta) probe grid used to decide whether a positivity requirement
// is structural (holds for every admissible cross-reactivity strength) or a
// genuine condition. Straddles alpha = 1/2, where stimulation-weight signs
// are known to flip.
constexpr double kProbes[][2] = {{0.10, 0.04}, {0.25, 0.10}, {0.40, 0.18},
                                 {0.45, 0.20}, {0.48, 0.22}, {0.52, 0.26},
                                 {0.60, 0.33}, {0.70, 0.49}, {0.85, 0.60},
                                 {0.95, 0.82}};

struct ReducedSolve {
  Eigen::VectorXd solution;
  Eigen::MatrixXd pinv;
  Eigen::MatrixXd left_null;
  Eigen::MatrixXd kernel;
  int rank = 0;
  double residual = 0.0;
};

ReducedSolve solve_reduced(const Eigen::MatrixXd& m, const Eigen::VectorXd& rhs) {
  ReducedSolve out;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv[0] : 0.0;
  const double cutoff = kRankCutoffRel * std::max(smax, 1e-300);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff) ++rank;
  out.rank = rank;

  Eigen::MatrixXd sinv = Eigen::MatrixXd::Zero(m.cols(), m.rows());
  for (int i = 0; i < rank; ++i) sinv(i, i) = 1.0 / sv[i];
  out.pinv = svd.matrixV() * sinv * svd.matrixU().transpose();
  out.solution = out.pinv * rhs;
  out.left_null = svd.matrixU().rightCols(m.rows() - rank);
  out.kernel = svd.matrixV().rightCols(m.cols() - rank);
  out.residual = (m * out.solution - rhs).cwiseAbs().maxCoeff();

  // A one-dimensional family is reported at the midpoint of the interval on
  // which every component stays positive. The map from the family parameter
  // to the state is affine, so this matches the midpoint of any single free
  // component's range.
  if (out.kernel.cols() == 1) {
    const Eigen::VectorXd k = out.kernel.col(0);
    double t_lo = -std::numeric_limits<double>::infinity();
    double t_hi = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < k.size(); ++i) {
      if (std::abs(k[i]) <= 1e-12) continue;
      const double bound = -out.solution[i] / k[i];
      if (k[i] > 0.0)
        t_lo = std::max(t_lo, bound);
      else
        t_hi = std::min(t_hi, bound);
    }
    if (std::isfinite(t_lo) && std::isfinite(t_hi) && t_hi > t_lo)
      out.solution += (0.5 * (t_lo + t_hi)) * k;
  }
  return out;
}

bool component_in_family(const Eigen::MatrixXd& kernel, int comp) {
  for (Eigen::Index c = 0; c < kernel.cols(); ++c)
    if (std::abs(kernel(comp, c)) > 1e-9 * kernel.col(c).cwiseAbs().maxCoeff())
      return true;
  return false;
}

Eigen::MatrixXd r_system_matrix(const CRNetwork& network, double beta,
                                const std::vector<int>& is, const std::vector<int>& js) {
  Eigen::MatrixXd m(is.size(), js.size());
  for (std::size_t a = 0; a < is.size(); ++a)
    for (std::size_t b = 0; b < js.size(); ++b)
      m(a, b) = (is[a] == js[b] ? 1.0 : 0.0) + beta * network.adjacency()(is[a], js[b]);
  return m;
}

Eigen::MatrixXd x_system_matrix(const CRNetwork& network, double alpha,
                                const std::vector<int>& is, const std::vector<int>& js) {
  // Row per j in J, column per i in I, over stimulation weights y_i.
  Eigen::MatrixXd m(js.size(), is.size());
  for (std::size_t a = 0; a < js.size(); ++a)
    for (std::size_t b = 0; b < is.size(); ++b)
      m(a, b) = (js[a] == is[b] ? 1.0 : 0.0) + alpha * network.adjacency()(is[b], js[a]);
  return m;
}

// Coefficient rows of the solved antibody components as linear forms in f
// (positive scalings dropped): row j of the result maps f to r_j, rows off
// J are zero.
Eigen::MatrixXd r_coefficients(const Eigen::MatrixXd& pinv, int n,
                               const std::vector<int>& is, const std::vector<int>& js) {
  Eigen::MatrixXd coeff = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t b = 0; b < js.size(); ++b)
    for (std::size_t a = 0; a < is.size(); ++a)
      coeff(js[b], is[a]) = pinv(b, a);
  return coeff;
}

bool form_vacuous(const Eigen::VectorXd& w) {
  const double scale = w.cwiseAbs().maxCoeff();
  if (scale <= 0.0) return true;
  return (w.array() >= -1e-9 * scale).all();
}

void normalize_condition(ParamCondition& cond) {
  const double scale = cond.f_coeff.cwiseAbs().maxCoeff();
  if (scale > 0.0) cond.f_coeff /= scale;
  if (cond.is_equality) {
    for (Eigen::Index i = 0; i < cond.f_coeff.size(); ++i) {
      if (std::abs(cond.f_coeff[i]) > 1e-12) {
        if (cond.f_coeff[i] < 0.0) cond.f_coeff = -cond.f_coeff;
        break;
      }
    }
  }
}

void push_condition(std::vector<ParamCondition>& list, ParamCondition cond) {
  normalize_condition(cond);
  for (const auto& existing : list) {
    if (existing.is_equality == cond.is_equality &&
        (existing.f_coeff - cond.f_coeff).cwiseAbs().maxCoeff() < 1e-9)
      return;
  }
  list.push_back(std::move(cond));
}

bool valid_support_sets(int n, const SupportPattern& support) {
  auto ok = [n](const std::vector<int>& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] < 0 || s[i] >= n) return false;
      if (i > 0 && s[i] <= s[i - 1]) return false;
    }
    return true;
  };
  return ok(support.I) && ok(support.J);
}

std::optional<FixedPointSolution> fail(SolveDiagnostics* diag, const std::string& why) {
  if (diag) diag->reason = why;
  return std::nullopt;
}

}  // namespace

std::string ParamCondition::pretty() const {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](Eigen::Index i) {
    const double c = f_coeff[i];
    const double mag = std::abs(c);
    if (first) {
      if (c < 0.0) os << "-";
      first = false;
    } else {
      os << (c < 0.0 ? " - " : " + ");
    }
    if (std::abs(mag - 1.0) > 1e-9) {
      os.precision(9);
      os << mag << "*";
    }
    os << "f" << (i + 1);
  };
  for (Eigen::Index i = 0; i < f_coeff.size(); ++i)
    if (f_coeff[i] > 1e-12) emit(i);
  for (Eigen::Index i = 0; i < f_coeff.size(); ++i)
    if (f_coeff[i] < -1e-12) emit(i);
  if (first) os << "0";
  os << (is_equality ? " = 0" : " > 0");
  return os.str();
}

bool FixedPointSolution::has_li() const {
  return std::any_of(roles.begin(), roles.end(),
                     [](NodeRole r) { return r == NodeRole::Persistent; });
}

std::vector<NodeRole> classify_roles(const SystemState& state) {
  std::vector<NodeRole> roles(state.size());
  for (int i = 0; i < state.size(); ++i) {
    const bool xp = state.x[i] > kPositivityTol;
    const bool rp = state.r[i] > kPositivityTol;
    roles[i] = xp ? (rp ? NodeRole::NeutralActive : NodeRole::Persistent)
                  : (rp ? NodeRole::Altruistic : NodeRole::NeutralIdle);
  }
  return roles;
}

FixedPointGroup classify_group(const std::vector<NodeRole>& roles,
                               const std::vector<ParamCondition>& conditions) {
  const bool li = std::any_of(roles.begin(), roles.end(),
                              [](NodeRole r) { return r == NodeRole::Persistent; });
  if (!li) return FixedPointGroup::D;
  if (std::any_of(conditions.begin(), conditions.end(),
                  [](const ParamCondition& c) { return c.is_equality; }))
    return FixedPointGroup::C;
  return conditions.empty() ? FixedPointGroup::A : FixedPointGroup::B;
}

std::optional<FixedPointSolution> solve_support(const CRNetwork& network,
                                                const ModelParameters& params,
                                                const SupportPattern& support,
                                                SolveDiagnostics* diagnostics) {
  const int n = network.size();
  params.validate(n);
  if (!valid_support_sets(n, support))
    throw std::invalid_argument("solve_support: support sets must be sorted unique indices in range");
  if (support.I.empty())
    return fail(diagnostics, "empty antigen support: the all-zero state is excluded");

  const auto& is = support.I;
  const auto& js = support.J;

  // Antibody balance on the active-antigen rows.
  Eigen::VectorXd rhs_r(is.size());
  for (std::size_t a = 0; a < is.size(); ++a) rhs_r[a] = params.f[is[a]] / params.p;
  const Eigen::MatrixXd m1 = r_system_matrix(network, params.beta, is, js);
  const ReducedSolve rs = solve_reduced(m1, rhs_r);
  if (diagnostics) diagnostics->r_family_dim = static_cast<int>(rs.kernel.cols());
  if (rs.residual > kConsistencyTol)
    return fail(diagnostics, "antibody stationarity equations inconsistent at these parameters");
  for (Eigen::Index i = 0; i < rs.solution.size(); ++i)
    if (!(rs.solution[i] > kPositivityTol))
      return fail(diagnostics, "antibody component not strictly positive on its support");

  Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
  for (std::size_t b = 0; b < js.size(); ++b) r[js[b]] = rs.solution[b];

  // Stimulation denominators of the active variants; positive whenever the
  // antibody balance held, since f_i > 0 forces some response in sight of i.
  Eigen::VectorXd den_i(is.size());
  for (std::size_t a = 0; a < is.size(); ++a) {
    double d = r[is[a]];
    for (int k : network.out_neighbors(is[a])) d += params.alpha * r[k];
    den_i[a] = d;
    if (!(d > 0.0))
      return fail(diagnostics, "zero stimulation denominator on an active variant");
  }

  // Stimulation balance over the active-response rows, in the weights
  // y_i = x_i / den_i.
  const Eigen::MatrixXd m2 = x_system_matrix(network, params.alpha, is, js);
  const Eigen::VectorXd rhs_x =
      Eigen::VectorXd::Constant(js.size(), params.b / params.c);
  const ReducedSolve xs = solve_reduced(m2, rhs_x);
  if (diagnostics) diagnostics->x_family_dim = static_cast<int>(xs.kernel.cols());
  if (xs.residual > kConsistencyTol)
    return fail(diagnostics, "stimulation stationarity equations inconsistent for this support");

  FixedPointSolution sol;
  sol.state.x = Eigen::VectorXd::Zero(n);
  sol.state.r = r;
  for (std::size_t a = 0; a < is.size(); ++a) {
    const double x = xs.solution[a] * den_i[a];
    if (!(x > kPositivityTol))
      return fail(diagnostics, "antigen component not strictly positive on its support");
    sol.state.x[is[a]] = x;
  }

  // Condition ledger: equalities from the left-null space of the antibody
  // system, inequalities from positivity of the components that are linear
  // in f (family-free ones). A positivity form is dropped only when its
  // sign pattern is nonnegative at every (alpha, beta) probe.
  const bool r_has_family = rs.kernel.cols() > 0;
  for (Eigen::Index c = 0; c < rs.left_null.cols(); ++c) {
    ParamCondition cond;
    cond.f_coeff = Eigen::VectorXd::Zero(n);
    for (std::size_t a = 0; a < is.size(); ++a)
      cond.f_coeff[is[a]] = rs.left_null(a, c);
    cond.is_equality = true;
    push_condition(sol.conditions, cond);
  }

  if (!r_has_family) {
    const Eigen::MatrixXd coeff_now = r_coefficients(rs.pinv, n, is, js);

    // Re-derive the coefficient forms on the probe grid; structure (ranks)
    // must match for a probe to count.
    std::vector<Eigen::MatrixXd> probe_coeffs;
    std::vector<Eigen::VectorXd> probe_y;
    std::vector<double> probe_alpha;
    for (const auto& ab : kProbes) {
      const Eigen::MatrixXd pm1 = r_system_matrix(network, ab[1], is, js);
      const ReducedSolve prs = solve_reduced(pm1, rhs_r);
      if (prs.rank != rs.rank || prs.kernel.cols() != rs.kernel.cols()) continue;
      const Eigen::MatrixXd pm2 = x_system_matrix(network, ab[0], is, js);
      const ReducedSolve pxs = solve_reduced(pm2, rhs_x);
      if (pxs.rank != xs.rank || pxs.kernel.cols() != xs.kernel.cols()) continue;
      probe_coeffs.push_back(r_coefficients(prs.pinv, n, is, js));
      probe_y.push_back(pxs.solution);
      probe_alpha.push_back(ab[0]);
    }

    auto structurally_vacuous = [&](auto&& form_at) {
      if (!form_vacuous(form_at(coeff_now, xs.solution, params.alpha))) return false;
      for (std::size_t q = 0; q < probe_coeffs.size(); ++q)
        if (!form_vacuous(form_at(probe_coeffs[q], probe_y[q], probe_alpha[q])))
          return false;
      return true;
    };

    for (std::size_t b = 0; b < js.size(); ++b) {
      auto form = [&](const Eigen::MatrixXd& coeff, const Eigen::VectorXd&, double) {
        return Eigen::VectorXd(coeff.row(js[b]));
      };
      if (structurally_vacuous(form)) continue;
      ParamCondition cond;
      cond.f_coeff = form(coeff_now, xs.solution, params.alpha);
      cond.is_equality = false;
      push_condition(sol.conditions, cond);
    }

    const bool x_has_family = xs.kernel.cols() > 0;
    for (std::size_t a = 0; a < is.size(); ++a) {
      if (x_has_family && component_in_family(xs.kernel, static_cast<int>(a))) continue;
      auto form = [&](const Eigen::MatrixXd& coeff, const Eigen::VectorXd& y,
                      double alpha) {
        Eigen::VectorXd d = coeff.row(is[a]);
        for (int k : network.out_neighbors(is[a])) d += alpha * coeff.row(k);
        return Eigen::VectorXd(y[a] * d);
      };
      if (structurally_vacuous(form)) continue;
      ParamCondition cond;
      cond.f_coeff = form(coeff_now, xs.solution, params.alpha);
      cond.is_equality = false;
      push_condition(sol.conditions, cond);
    }
  }

  // Independent residual check, straight through the model right-hand side.
  sol.residual = CRNSystem(network, params).rhs_sup_norm(sol.state);
  if (!(sol.residual < kResidualTol))
    return fail(diagnostics, "solved state failed the rhs residual check");

  sol.support = support;
  sol.roles = classify_roles(sol.state);
  sol.group = classify_group(sol.roles, sol.conditions);

  sol.delta = stimulation_deltas(sol.state, network, params.alpha);
  return sol;
}

std::vector<FixedPointSolution> enumerate_fixed_points(const CRNetwork& network,
                                                       const ModelParameters& params,
                                                       const EnumerateOptions& options) {
  const int n = network.size();
  params.validate(n);
  if (n > options.max_n)
    throw std::invalid_argument("enumerate_fixed_points: n exceeds the combinatorial limit max_n");

  std::vector<unsigned> out_mask(n, 0);
  for (int i = 0; i < n; ++i)
    for (int k : network.out_neighbors(i)) out_mask[i] |= 1u << k;

  std::vector<std::pair<unsigned, unsigned>> patterns;
  const unsigned full = (n == 32) ? ~0u : ((1u << n) - 1u);
  for (unsigned mi = 1; mi <= full; ++mi) {
    unsigned closure = mi;
    for (int i = 0; i < n; ++i)
      if (mi & (1u << i)) closure |= out_mask[i];
    // Responses outside the closure of I can only decay; skip them.
    for (unsigned mj = closure; mj != 0; mj = (mj - 1) & closure)
      patterns.emplace_back(mi, mj);
  }
  if (options.shuffle_seed != 0) {
    std::mt19937 gen(options.shuffle_seed);
    std::shuffle(patterns.begin(), patterns.end(), gen);
  }

  auto to_set = [n](unsigned mask) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    return s;
  };

  std::vector<FixedPointSolution> found;
  for (const auto& [mi, mj] : patterns) {
    SupportPattern support{to_set(mi), to_set(mj)};
    if (auto sol = solve_support(network, params, support)) found.push_back(std::move(*sol));
  }

  std::sort(found.begin(), found.end(),
            [](const FixedPointSolution& a, const FixedPointSolution& b) {
              const std::size_t ca = a.support.I.size() + a.support.J.size();
              const std::size_t cb = b.support.I.size() + b.support.J.size();
              if (ca != cb) return ca < cb;
              if (a.support.I != b.support.I) return a.support.I < b.support.I;
              return a.support.J < b.support.J;
            });

  std::vector<FixedPointSolution> unique;
  for (auto& sol : found) {
    const bool dup = std::any_of(unique.begin(), unique.end(), [&](const FixedPointSolution& u) {
      return (u.state.x - sol.state.x).cwiseAbs().maxCoeff() <= options.dedup_tol &&
             (u.state.r - sol.state.r).cwiseAbs().maxCoeff() <= options.dedup_tol;
    });
    if (!dup) unique.push_back(std::move(sol));
  }
  return unique;
}

StationarySpace stationary_space(const FixedPointSolution& solution,
                                 const CRNetwork& network,
                                 const ModelParameters& params) {
  const int n = network.size();
  const ImmuneMatrices m = build_matrices(network, params);

  auto kernel_dim = [n](const Eigen::MatrixXd& rows) {
    if (rows.rows() == 0) return n;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows);
    const double smax = svd.singularValues()[0];
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()[i] > kRankCutoffRel * std::max(smax, 1e-300)) ++rank;
    return n - rank;
  };

  Eigen::MatrixXd ut_rows(solution.support.I.size(), n);
  for (std::size_t a = 0; a < solution.support.I.size(); ++a)
    ut_rows.row(a) = m.U.col(solution.support.I[a]).transpose();
  Eigen::MatrixXd vt_rows(solution.support.J.size(), n);
  for (std::size_t a = 0; a < solution.support.J.size(); ++a)
    vt_rows.row(a) = m.V.col(solution.support.J[a]).transpose();

  StationarySpace space;
  space.base = solution;
  space.r_kernel_dim = kernel_dim(ut_rows);
  space.x_kernel_dim = kernel_dim(vt_rows);
  return space;
}

NoAltruismReport no_altruism_feasibility(const CRNetwork& network,
                                         const ModelParameters& params) {
  const int n = network.size();
  params.validate(n);
  // With every antigen active, stationarity pins the responses through
  // U^T R = F / p, U^T = Id + beta*A.
  const Eigen::MatrixXd ut =
      Eigen::MatrixXd::Identity(n, n) + params.beta * network.adjacency();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(ut, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double smax = svd.singularValues()[0];

  NoAltruismReport report;
  report.rank = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (svd.singularValues()[i] > kRankCutoffRel * std::max(smax, 1e-300)) ++report.rank;
  report.invertible = (report.rank == n);

  Eigen::MatrixXd sinv = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < report.rank; ++i) sinv(i, i) = 1.0 / svd.singularValues()[i];
  report.r = svd.matrixV() * sinv * svd.matrixU().transpose() * (params.f / params.p);

  const double scale = std::max(1.0, report.r.cwiseAbs().maxCoeff());
  for (int i = 0; i < n; ++i) {
    if (std::abs(report.r[i]) <= 1e-12 * scale) report.has_zero_component = true;
    else if (report.r[i] < 0.0) report.has_negative_component = true;
  }

  if (!report.invertible) {
    for (Eigen::Index c = report.rank; c < n; ++c) {
      ParamCondition cond;
      cond.f_coeff = svd.matrixU().col(c);
      cond.is_equality = true;
      normalize_condition(cond);
      report.consistency_conditions.push_back(std::move(cond));
    }
    report.verdict = NoAltruismVerdict::SingularConsistencyRequired;
    report.text =
        "U^T is rank-deficient (rank " + std::to_string(report.rank) + " of " +
        std::to_string(n) +
        "): an altruism-free stationary state requires F on the listed "
        "measure-zero consistency set.";
  } else if (report.has_negative_component) {
    report.verdict = NoAltruismVerdict::NoPositiveSolution;
    report.text =
        "The altruism-free response solve has a negative component: no "
        "stationary state with every antigen active exists at these parameters.";
  } else if (report.has_zero_component) {
    report.verdict = NoAltruismVerdict::OnMeasureZeroSet;
    report.text =
        "A response component is exactly zero: these parameters lie on the "
        "measure-zero set where LI without altruistic nodes is possible.";
  } else {
    report.verdict = NoAltruismVerdict::RequiresMeasureZeroEqualities;
    report.text =
        "All solved responses are strictly positive: no LI without altruistic "
        "nodes at these parameters; a vanishing response would require exact "
        "parameter equalities (a measure-zero set).";
  }
  return report;
}

const char* to_string(NodeRole role) {
  switch (role) {
    case NodeRole::Persistent: return "persistent";
    case NodeRole::Altruistic: return "altruistic";
    case NodeRole::NeutralActive: return "neutral_active";
    case NodeRole::NeutralIdle: return "neutral_idle";
  }
  return "?";
}

const char* to_string(FixedPointGroup group) {
  switch (group) {
    case FixedPointGroup::A: return "A";
    case FixedPointGroup::B: return "B";
    case FixedPointGroup::C: return "C";
    case FixedPointGroup::D: return "D";
  }
  return "?";
}

}  // namespace crnli
