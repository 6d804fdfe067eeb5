#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crnli/model.hpp"

namespace crnli {

/// Index sets of strictly positive antigen (I) and antibody (J) populations
/// at a stationary state. 0-based, sorted, duplicate-free.
struct SupportPattern {
  std::vector<int> I;
  std::vector<int> J;

  bool operator==(const SupportPattern&) const = default;
};

enum class NodeRole { Persistent, Altruistic, NeutralActive, NeutralIdle };

/// Condition ledger grouping: unconditioned LI (A), inequality-conditioned
/// LI (B), equality-conditioned LI (C, measure zero), no LI (D).
enum class FixedPointGroup { A, B, C, D };

/// A parameter requirement extracted from the solved closed forms, as a
/// linear combination of the replication rates: coeff . f > 0 (inequality)
/// or coeff . f = 0 (equality). Coefficients may depend on alpha, beta and
/// are normalized to unit max magnitude.
struct ParamCondition {
  Eigen::VectorXd f_coeff;
  bool is_equality = false;

  std::string pretty() const;
  double evaluate(const Eigen::VectorXd& f) const { return f_coeff.dot(f); }
};

struct FixedPointSolution {
  SystemState state;
  SupportPattern support;
  std::vector<NodeRole> roles;
  FixedPointGroup group = FixedPointGroup::D;
  std::vector<ParamCondition> conditions;
  double residual = 0.0;        ///< ||rhs(state)||_inf, re-checked independently
  Eigen::VectorXd delta;        ///< delta_i = 1/(r_i + alpha sum_{i->k} r_k), 0 where undefined

  bool has_li() const;
};

/// Extra diagnostics from solve_support. Family dimensions are the kernel
/// dimensions of the reduced linear systems restricted to the support
/// unknowns; a positive value means a continuum of fixed points shares the
/// support and the returned state is its representative.
struct SolveDiagnostics {
  std::string reason;       ///< why none was returned (empty on success)
  int r_family_dim = 0;
  int x_family_dim = 0;
};

/// Solve the reduced stationarity system for a prescribed support pattern:
/// r on J from the neutralization balance over I, then x on I from the
/// stimulation balance over J. Square systems are solved directly,
/// degenerate ones by rank-revealing least squares; an absolute consistency
/// residual of 1e-9 is required and strict positivity (tolerance 1e-12) is
/// enforced on every support component. One-dimensional solution families
/// are reported at the midpoint of their positivity interval.
std::optional<FixedPointSolution> solve_support(const CRNetwork& network,
                                                const ModelParameters& params,
                                                const SupportPattern& support,
                                                SolveDiagnostics* diagnostics = nullptr);

struct EnumerateOptions {
  int max_n = 12;
  double dedup_tol = 1e-9;
  /// 0 visits supports in canonical order; any other value shuffles the
  /// visit order (the result set is invariant either way).
  unsigned shuffle_seed = 0;
};

/// All isolated fixed points (and family representatives) over every
/// admissible support pattern, deduplicated and sorted by support
/// cardinality. Support patterns whose antibody set contains a node that no
/// active variant can stimulate are pruned up front (such a response only
/// decays). Throws when n exceeds options.max_n.
std::vector<FixedPointSolution> enumerate_fixed_points(const CRNetwork& network,
                                                       const ModelParameters& params,
                                                       const EnumerateOptions& options = {});

/// Per-node role from the sign pattern of the state (positivity tolerance
/// 1e-12).
std::vector<NodeRole> classify_roles(const SystemState& state);

/// Group assignment: D when no node is persistent, C on any equality
/// condition, A on an empty condition list, B otherwise.
FixedPointGroup classify_group(const std::vector<NodeRole>& roles,
                               const std::vector<ParamCondition>& conditions);

/// Affine degeneracy of the stationary space at a fixed point: kernel
/// dimensions of the I-rows of U^T and the J-rows of V^T acting on R^n,
/// by SVD with cutoff 1e-10 * sigma_max.
struct StationarySpace {
  FixedPointSolution base;
  int r_kernel_dim = 0;
  int x_kernel_dim = 0;
};

StationarySpace stationary_space(const FixedPointSolution& solution,
                                 const CRNetwork& network,
                                 const ModelParameters& params);

enum class NoAltruismVerdict {
  RequiresMeasureZeroEqualities,  ///< R solvable, strictly positive: LI without altruism needs exact equalities
  OnMeasureZeroSet,               ///< some response component is exactly zero at these parameters
  NoPositiveSolution,             ///< R has a negative component: no altruism-free stationary state at all
  SingularConsistencyRequired,    ///< U^T singular: F must satisfy rank-deficiency conditions
};

/// Feasibility of local immunodeficiency without altruistic nodes: solves
/// U^T R = F / p under the assumption that every antigen population is
/// positive and inspects the sign pattern of R.
struct NoAltruismReport {
  bool invertible = false;
  int rank = 0;
  Eigen::VectorXd r;  ///< solved response vector (least squares when singular)
  bool has_zero_component = false;
  bool has_negative_component = false;
  std::vector<ParamCondition> consistency_conditions;  ///< on F, when singular
  NoAltruismVerdict verdict = NoAltruismVerdict::RequiresMeasureZeroEqualities;
  std::string text;
};

NoAltruismReport no_altruism_feasibility(const CRNetwork& network,
                                         const ModelParameters& params);

const char* to_string(NodeRole role);
const char* to_string(FixedPointGroup group);

}  // namespace crnli
