#include "crnli/model.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace crnli {

ImmuneMatrices build_matrices(const CRNetwork& network, const ModelParameters& params) {
  params.validate(network.size());
  const int n = network.size();
  const Eigen::MatrixXd& a = network.adjacency();
  ImmuneMatrices m;
  m.U = Eigen::MatrixXd::Identity(n, n) + params.beta * a.transpose();
  m.V = Eigen::MatrixXd::Identity(n, n) + params.alpha * a;
  return m;
}

bool SystemState::nonnegative() const {
  return (x.array() >= 0.0).all() && (r.array() >= 0.0).all();
}

Eigen::MatrixXd stimulation_probabilities(const SystemState& state,
                                          const ImmuneMatrices& matrices) {
  const int n = static_cast<int>(state.r.size());
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  const Eigen::VectorXd den = matrices.V * state.r;  // den_j = sum_k v_jk r_k
  for (int j = 0; j < n; ++j) {
    if (den[j] <= 0.0) continue;
    for (int i = 0; i < n; ++i) {
      const double vji = matrices.V(j, i);
      if (vji != 0.0 && state.r[i] != 0.0) g(j, i) = vji * state.r[i] / den[j];
    }
  }
  return g;
}

Eigen::VectorXd rhs(const SystemState& state, const CRNetwork& network,
                    const ModelParameters& params) {
  CRNSystem system(network, params);
  return system.rhs_state(state);
}

Eigen::VectorXd stimulation_deltas(const SystemState& state, const CRNetwork& network,
                                   double alpha) {
  const int n = network.size();
  Eigen::VectorXd deltas = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    double den = state.r[i];
    for (int k : network.out_neighbors(i)) den += alpha * state.r[k];
    if (den > 0.0) deltas[i] = 1.0 / den;
  }
  return deltas;
}

CRNSystem::CRNSystem(CRNetwork network, ModelParameters params)
    : network_(std::move(network)), params_(std::move(params)) {
  matrices_ = build_matrices(network_, params_);
}

void CRNSystem::rhs_flat(const Eigen::VectorXd& y, Eigen::VectorXd& dydt) const {
  const int n = network_.size();
  dydt.resize(2 * n);
  const auto x = y.head(n);
  const auto r = y.tail(n);

  // xdot_i = f_i x_i - p x_i (U^T r)_i
  const Eigen::VectorXd kill = matrices_.U.transpose() * r;
  for (int i = 0; i < n; ++i)
    dydt[i] = x[i] * (params_.f[i] - params_.p * kill[i]);

  // rdot_i = c sum_j x_j g_ji - b r_i, with g-rows of zero denominator
  // contributing nothing.
  const Eigen::VectorXd den = matrices_.V * r;
  for (int i = 0; i < n; ++i) dydt[n + i] = -params_.b * r[i];
  for (int j = 0; j < n; ++j) {
    if (den[j] <= 0.0 || x[j] == 0.0) continue;
    const double scale = params_.c * x[j] / den[j];
    dydt[n + j] += scale * r[j];  // v_jj = 1
    for (int i : network_.out_neighbors(j))
      dydt[n + i] += scale * params_.alpha * r[i];
  }
}

Eigen::VectorXd CRNSystem::rhs_state(const SystemState& state) const {
  Eigen::VectorXd y(2 * network_.size());
  y << state.x, state.r;
  Eigen::VectorXd dydt;
  rhs_flat(y, dydt);
  return dydt;
}

double CRNSystem::rhs_sup_norm(const SystemState& state) const {
  return rhs_state(state).cwiseAbs().maxCoeff();
}

}  // namespace crnli
