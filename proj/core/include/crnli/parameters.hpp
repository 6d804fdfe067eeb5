#pragma once

#include <Eigen/Core>

namespace crnli {

/// Scalar rates and per-variant replication rates of the evolution model.
///
/// Validity requires f, p, c, b strictly positive and 0 < beta < alpha < 1.
/// The power-law tie beta = alpha^k seen in typical parameter choices is
/// deliberately not enforced; only the strict ordering matters for the
/// analysis.
struct ModelParameters {
  Eigen::VectorXd f;  ///< replication rates, one per variant (1/time)
  double p = 0.0;     ///< neutralization rate
  double c = 0.0;     ///< stimulation rate
  double b = 0.0;     ///< antibody decay rate
  double alpha = 0.0; ///< stimulation cross-reactivity strength
  double beta = 0.0;  ///< neutralization cross-reactivity strength

  /// Throws std::invalid_argument unless all invariants hold and f has
  /// length n.
  void validate(int n) const;

  bool valid(int n) const;
};

}  // namespace crnli
