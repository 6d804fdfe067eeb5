#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crnli/fixed_points.hpp"
#include "crnli/stability.hpp"

namespace crnli {

/// Monte Carlo neighborhood of a nominal parameter point: each coordinate is
/// drawn uniformly in its relative box, and the stability of the fixed point
/// with the constrained support is re-established per sample.
struct SweepSpec {
  ModelParameters nominal;
  double relative_radius = 0.05;  ///< in (0, 0.5)
  int samples = 100;
  std::uint64_t seed = 0;
  SupportPattern constraint;
};

struct SweepRecord {
  ModelParameters params;
  bool fixed_point_found = false;
  bool li_preserved = false;
  StabilityVerdict verdict = StabilityVerdict::Marginal;  ///< meaningful when found
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRecord> records;
  double stable_fraction = 0.0;        ///< found, LI-classified-or-not, verdict stable
  double li_preserved_fraction = 0.0;  ///< found with a persistent node
  long rejected_draws = 0;             ///< (alpha, beta) ordering rejections
  std::string rng_name;
};

/// Deterministic given the spec. Draws violating 0 < beta < alpha < 1 after
/// perturbation are rejected and redrawn, capped at 10x oversampling.
SweepResult sweep(const SweepSpec& spec, const CRNetwork& network);

}  // namespace crnli
