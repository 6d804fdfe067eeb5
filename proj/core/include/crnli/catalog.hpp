#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "crnli/fixed_points.hpp"
#include "crnli/model.hpp"

namespace crnli {

/// Names of the networks shipped with the toolkit: asym2, sym2,
/// chain_branch3, branch_cycle3, cycle3, t_shape4, composed5.
const std::vector<std::string>& catalog_network_names();

/// Exact edge set of a named network. Throws std::invalid_argument on an
/// unknown name.
CRNetwork get_network(const std::string& name);

/// Duplicate the base network, identify the two copies at the pivot node and
/// relabel: the original keeps its labels, mirrored nodes continue after
/// them in index order. Mirroring the three-node branch-cycle motif about
/// its source reproduces the composed five-node network.
CRNetwork compose_mirror(const CRNetwork& base, int pivot);

/// One closed-form fixed point of a named network. Family entries carry
/// their free directions instantiated at the midpoint of the positivity
/// interval (the centroid weighting for the one two-dimensional family).
struct CatalogEntry {
  std::string network;
  int index = 0;  ///< 1-based position within the network's list
  SupportPattern support;
  std::string conditions_text;
  std::string formulas_text;  ///< closed forms, human readable
  FixedPointGroup group = FixedPointGroup::D;
  bool is_family = false;
  int family_dim = 0;

  /// Closed-form state, or nothing when the entry's conditions fail at
  /// these parameters (inequalities strictly, equalities to 1e-12).
  std::function<std::optional<SystemState>(const ModelParameters&)> evaluate;

  /// Constraints a random parameter draw must satisfy for this entry;
  /// equalities are enforced by construction, inequalities by rejection.
  std::function<void(ModelParameters&, std::mt19937_64&)> adjust;
};

/// Every stored entry for a named network.
const std::vector<CatalogEntry>& catalog_entries(const std::string& name);

/// All entries across all named networks.
const std::vector<CatalogEntry>& all_catalog_entries();

/// Evaluate every entry of the named network whose conditions hold at the
/// given parameters; each returned solution is re-verified through the
/// model right-hand side (residual < 1e-10) before being returned.
std::vector<FixedPointSolution> evaluate_catalog(const std::string& name,
                                                 const ModelParameters& params);

/// Draw parameters valid for the entry: positive rates in moderate ranges,
/// 0 < beta < alpha < 1, equalities imposed exactly, inequalities satisfied
/// by rejection. Throws if no valid draw is found within the retry budget.
ModelParameters sample_entry_params(const CatalogEntry& entry, std::mt19937_64& rng);

}  // namespace crnli
