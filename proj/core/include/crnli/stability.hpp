#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "crnli/model.hpp"

namespace crnli {

/// Raised when the analytic Jacobian is requested at a state where a
/// stimulation denominator vanishes under a nonzero numerator; the one-sided
/// limits disagree there, so no value is assigned.
struct JacobianUndefined : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Block Jacobian of the evolution equations at a state:
/// [ A  B ]   A diagonal, A_ii = f_i - p (U^T r)_i;  B_ij = -p x_i u_ji;
/// [ C  D ]   C_ij = c g_ji;  D the response-response couplings.
struct JacobianMatrix {
  int n = 0;
  Eigen::MatrixXd a_block;
  Eigen::MatrixXd b_block;
  Eigen::MatrixXd c_block;
  Eigen::MatrixXd d_block;

  Eigen::MatrixXd assembled() const;
};

JacobianMatrix jacobian_at(const SystemState& state, const CRNetwork& network,
                           const ModelParameters& params);
JacobianMatrix jacobian_at(const SystemState& state, const CRNSystem& system);

/// Dense eigensolve through Hessenberg reduction and the shifted QR
/// iteration, capped at 100 * n sweeps. Non-convergence is reported, never
/// silently truncated.
struct SpectrumResult {
  std::vector<std::complex<double>> eigenvalues;  ///< sorted by real part, descending
  bool converged = true;
  Eigen::MatrixXd partial_reduction;  ///< quasi-triangular factor on failure
};

SpectrumResult spectrum(const Eigen::MatrixXd& matrix);

/// Eigenpairs with per-pair residuals ||Av - lambda v|| / ||v||.
struct EigenPairs {
  std::vector<std::complex<double>> eigenvalues;
  Eigen::MatrixXcd vectors;  ///< column k pairs with eigenvalues[k]
  Eigen::VectorXd residuals;
  bool converged = true;
};

EigenPairs spectrum_with_vectors(const Eigen::MatrixXd& matrix);

enum class StabilityVerdict { Stable, Unstable, Marginal };

/// Marginal band half-width: 1e-7 relative to the spectral radius. Genuine
/// zero eigenvalues of stationary families land in the band and are never
/// called stable.
double default_eps_stab(const std::vector<std::complex<double>>& eigenvalues);

StabilityVerdict stability_verdict(const std::vector<std::complex<double>>& eigenvalues,
                                   double eps_stab);

/// Comparison of polynomial factors of det(lambda I - J) against their
/// closed forms: explicit linear factors plus the residual polynomial's
/// coefficient vector computed both ways.
struct FactorCheck {
  std::string name;
  bool applicable = false;
  std::string reason;                      ///< why not applicable / what failed
  std::vector<double> linear_factors;      ///< closed-form real eigenvalues
  Eigen::VectorXd closed_coefficients;     ///< highest degree first, monic
  Eigen::VectorXd numeric_coefficients;    ///< same layout
  double max_coefficient_rel_error = 0.0;
  bool all_coefficients_positive = false;
  double max_root_mismatch = 0.0;          ///< predicted vs computed spectrum
  bool ok = false;
};

struct StabilityReport {
  JacobianMatrix jacobian;
  std::vector<std::complex<double>> eigenvalues;  ///< sorted by real part, descending
  double eps_stab = 0.0;
  StabilityVerdict verdict = StabilityVerdict::Marginal;
  std::vector<std::complex<double>> positive_witnesses;
  std::vector<std::complex<double>> marginal_witnesses;
  std::vector<FactorCheck> factor_checks;
  bool eigensolver_converged = true;
};

/// Jacobian, spectrum and verdict in one pass; eps_stab <= 0 selects the
/// default band.
StabilityReport analyze_stability(const SystemState& state, const CRNetwork& network,
                                  const ModelParameters& params, double eps_stab = 0.0);

/// Degree-4 residual factor of the branch-cycle network's stable-LI
/// Jacobian, coefficients evaluated from the closed forms and recovered
/// numerically by deflating the two explicit linear factors out of
/// det(lambda I - J). The branch is chosen by the sign of f3 - f1.
FactorCheck check_branch_cycle_polynomial(const ModelParameters& params);

/// Spectrum factorization check for the composed five-node network:
/// {lambda1, lambda2, lambda3 (x2)} plus the six roots of the closed-form
/// degree-6 factor must reproduce the computed spectrum.
FactorCheck check_five_node_polynomial(const ModelParameters& params);

/// Roots of a polynomial given monic coefficients (highest first) via the
/// companion matrix.
std::vector<std::complex<double>> polynomial_roots(const Eigen::VectorXd& monic_coefficients);

const char* to_string(StabilityVerdict verdict);

}  // namespace crnli
