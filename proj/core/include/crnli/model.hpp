#pragma once

#include <Eigen/Core>

#include "crnli/network.hpp"
#include "crnli/parameters.hpp"

namespace crnli {

/// Immune neutralization (U) and stimulation (V) matrices,
/// U = Id + beta*A^T and V = Id + alpha*A for adjacency A.
struct ImmuneMatrices {
  Eigen::MatrixXd U;
  Eigen::MatrixXd V;
};

/// Pure function of (A, alpha, beta). Throws if params are invalid for the
/// network dimension.
ImmuneMatrices build_matrices(const CRNetwork& network, const ModelParameters& params);

/// Paired antigen (x) and antibody (r) population vectors.
struct SystemState {
  Eigen::VectorXd x;
  Eigen::VectorXd r;

  int size() const { return static_cast<int>(x.size()); }

  /// Componentwise nonnegativity; does not check the not-all-zero rule
  /// required of initial conditions.
  bool nonnegative() const;
};

/// Stimulation probability matrix G with G(j, i) = v_ji r_i / sum_k v_jk r_k.
/// Rows whose denominator vanishes are all-zero: a variant facing no
/// standing response stimulates nothing.
Eigen::MatrixXd stimulation_probabilities(const SystemState& state,
                                          const ImmuneMatrices& matrices);

/// Time derivatives (xdot, rdot) of the evolution equations, stacked as a
/// 2n vector [xdot; rdot].
Eigen::VectorXd rhs(const SystemState& state, const CRNetwork& network,
                    const ModelParameters& params);

/// delta_i = 1 / (r_i + alpha * sum_{i->k} r_k), or 0 where the denominator
/// vanishes.
Eigen::VectorXd stimulation_deltas(const SystemState& state, const CRNetwork& network,
                                   double alpha);

/// Network + parameters with cached immune matrices; the form every hot
/// loop (integration, Jacobians, solves) works against.
class CRNSystem {
 public:
  CRNSystem(CRNetwork network, ModelParameters params);

  const CRNetwork& network() const { return network_; }
  const ModelParameters& params() const { return params_; }
  const ImmuneMatrices& matrices() const { return matrices_; }
  int size() const { return network_.size(); }

  /// rhs evaluated without touching the x/r split; y = [x; r].
  void rhs_flat(const Eigen::VectorXd& y, Eigen::VectorXd& dydt) const;

  Eigen::VectorXd rhs_state(const SystemState& state) const;

  double rhs_sup_norm(const SystemState& state) const;

 private:
  CRNetwork network_;
  ModelParameters params_;
  ImmuneMatrices matrices_;
};

}  // namespace crnli
