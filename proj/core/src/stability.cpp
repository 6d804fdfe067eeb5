#include "crnli/stability.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "crnli/fixed_points.hpp"

namespace crnli {

namespace {

void sort_by_real_desc(std::vector<std::complex<double>>& eigs) {
  std::sort(eigs.begin(), eigs.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
}

// Recover the monic degree-d factor of det(s I - J) left after dividing out
// the listed real linear factors. det is sampled on a circle through the
// complex plane and the coefficients come out of a plain DFT, exact for
// degree < sample count and well conditioned when the radius sits near the
// geometric mean of the remaining root magnitudes.
Eigen::VectorXd deflated_monic_fit(const Eigen::MatrixXd& j,
                                   const std::vector<double>& deflate, int degree) {
  const int n = static_cast<int>(j.rows());
  std::vector<std::complex<double>> eigs = spectrum(j).eigenvalues;
  for (double mu : deflate) {
    auto it = std::min_element(eigs.begin(), eigs.end(), [&](const auto& a, const auto& b) {
      return std::abs(a - std::complex<double>(mu, 0.0)) <
             std::abs(b - std::complex<double>(mu, 0.0));
    });
    if (it != eigs.end()) eigs.erase(it);
  }
  double log_sum = 0.0;
  double radius_max = 1.0;
  for (const auto& e : eigs) {
    log_sum += std::log(std::max(std::abs(e), 1e-6));
    radius_max = std::max(radius_max, std::abs(e));
  }
  const double rho =
      eigs.empty() ? 1.0
                   : std::clamp(std::exp(log_sum / static_cast<double>(eigs.size())),
                                1e-3 * radius_max, radius_max);

  const int samples = degree + 3;
  const Eigen::MatrixXcd jc = j.cast<std::complex<double>>();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  std::vector<std::complex<double>> q(samples);
  for (int k = 0; k < samples; ++k) {
    const double angle = 2.0 * M_PI * k / samples;
    const std::complex<double> s = rho * std::complex<double>(std::cos(angle), std::sin(angle));
    std::complex<double> value = (s * id - jc).determinant();
    for (double mu : deflate) value /= (s - mu);
    q[k] = value;
  }
  Eigen::VectorXd coeffs(degree + 1);
  for (int m = 0; m <= degree; ++m) {
    std::complex<double> acc = 0.0;
    for (int k = 0; k < samples; ++k) {
      const double angle = -2.0 * M_PI * k * m / samples;
      acc += q[k] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    coeffs[degree - m] = (acc / static_cast<double>(samples)).real() / std::pow(rho, m);
  }
  return coeffs;
}

double coefficient_rel_error(const Eigen::VectorXd& closed, const Eigen::VectorXd& numeric) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < closed.size(); ++i)
    worst = std::max(worst, std::abs(closed[i] - numeric[i]) /
                                std::max(std::abs(closed[i]), 1e-300));
  return worst;
}

// Greedy nearest matching of predicted roots against a computed spectrum;
// returns the largest pairing distance.
double match_roots(std::vector<std::complex<double>> predicted,
                   std::vector<std::complex<double>> computed) {
  double worst = 0.0;
  std::vector<bool> used(computed.size(), false);
  for (const auto& p : predicted) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_k = 0;
    for (std::size_t k = 0; k < computed.size(); ++k) {
      if (used[k]) continue;
      const double d = std::abs(p - computed[k]);
      if (d < best) {
        best = d;
        best_k = k;
      }
    }
    used[best_k] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

Eigen::MatrixXd JacobianMatrix::assembled() const {
  Eigen::MatrixXd full(2 * n, 2 * n);
  full.topLeftCorner(n, n) = a_block;
  full.topRightCorner(n, n) = b_block;
  full.bottomLeftCorner(n, n) = c_block;
  full.bottomRightCorner(n, n) = d_block;
  return full;
}

JacobianMatrix jacobian_at(const SystemState& state, const CRNetwork& network,
                           const ModelParameters& params) {
  return jacobian_at(state, CRNSystem(network, params));
}

JacobianMatrix jacobian_at(const SystemState& state, const CRNSystem& system) {
  const int n = system.size();
  if (state.size() != n) throw std::invalid_argument("jacobian_at: state dimension mismatch");
  const auto& p = system.params();
  const auto& u = system.matrices().U;
  const auto& v = system.matrices().V;
  const auto& net = system.network();
  const Eigen::VectorXd& x = state.x;
  const Eigen::VectorXd& r = state.r;
  const Eigen::VectorXd den = v * r;

  JacobianMatrix jac;
  jac.n = n;
  jac.a_block = Eigen::MatrixXd::Zero(n, n);
  jac.b_block = Eigen::MatrixXd::Zero(n, n);
  jac.c_block = Eigen::MatrixXd::Zero(n, n);
  jac.d_block = Eigen::MatrixXd::Zero(n, n);

  const Eigen::VectorXd kill = u.transpose() * r;
  for (int i = 0; i < n; ++i) {
    jac.a_block(i, i) = p.f[i] - p.p * kill[i];
    for (int j = 0; j < n; ++j)
      if (u(j, i) != 0.0) jac.b_block(i, j) = -p.p * x[i] * u(j, i);
  }

  for (int i = 0; i < n; ++i) jac.d_block(i, i) = -p.b;

  // Variant j contributes to the response rows it can stimulate. A vanishing
  // denominator with x_j > 0 leaves the diagonal D terms without a value:
  // the one-sided limits disagree, so this is refused rather than extended.
  for (int j = 0; j < n; ++j) {
    if (den[j] <= 0.0) {
      if (x[j] > 0.0)
        throw JacobianUndefined(
            "jacobian_at: variant " + std::to_string(j + 1) +
            " is active but faces a zero stimulation denominator");
      continue;
    }
    const double inv = 1.0 / den[j];
    const double inv2 = inv * inv;
    auto touches = [&](int i) { return v(j, i) != 0.0; };
    for (int i = 0; i < n; ++i) {
      if (!touches(i)) continue;
      jac.c_block(i, j) = p.c * v(j, i) * r[i] * inv;
      jac.d_block(i, i) += p.c * v(j, i) * x[j] * inv;
      for (int l = 0; l < n; ++l)
        if (touches(l))
          jac.d_block(i, l) -= p.c * r[i] * v(j, i) * v(j, l) * x[j] * inv2;
    }
  }
  return jac;
}

SpectrumResult spectrum(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != matrix.cols())
    throw std::invalid_argument("spectrum: matrix must be square");
  if (!matrix.allFinite())
    throw std::invalid_argument("spectrum: matrix must be finite");
  const int n = static_cast<int>(matrix.rows());
  SpectrumResult out;
  if (n == 0) return out;

  Eigen::RealSchur<Eigen::MatrixXd> schur;
  schur.setMaxIterations(100 * n);
  schur.compute(matrix, /*computeU=*/false);
  if (schur.info() != Eigen::Success) {
    out.converged = false;
    out.partial_reduction = schur.matrixT();
    return out;
  }
  const Eigen::MatrixXd& t = schur.matrixT();
  int i = 0;
  while (i < n) {
    if (i == n - 1 || t(i + 1, i) == 0.0) {
      out.eigenvalues.emplace_back(t(i, i), 0.0);
      ++i;
    } else {
      const double a = t(i, i), bb = t(i, i + 1);
      const double cc = t(i + 1, i), d = t(i + 1, i + 1);
      const double tr2 = 0.5 * (a + d);
      const double disc = 0.25 * (a - d) * (a - d) + bb * cc;
      if (disc < 0.0) {
        const double im = std::sqrt(-disc);
        out.eigenvalues.emplace_back(tr2, im);
        out.eigenvalues.emplace_back(tr2, -im);
      } else {
        const double s = std::sqrt(disc);
        out.eigenvalues.emplace_back(tr2 + s, 0.0);
        out.eigenvalues.emplace_back(tr2 - s, 0.0);
      }
      i += 2;
    }
  }
  sort_by_real_desc(out.eigenvalues);
  return out;
}

EigenPairs spectrum_with_vectors(const Eigen::MatrixXd& matrix) {
  EigenPairs out;
  Eigen::EigenSolver<Eigen::MatrixXd> es(matrix, /*computeEigenvectors=*/true);
  if (es.info() != Eigen::Success) {
    out.converged = false;
    return out;
  }
  const int n = static_cast<int>(matrix.rows());
  out.vectors = es.eigenvectors();
  out.residuals.resize(n);
  const Eigen::MatrixXcd mc = matrix.cast<std::complex<double>>();
  for (int k = 0; k < n; ++k) {
    out.eigenvalues.push_back(es.eigenvalues()[k]);
    const Eigen::VectorXcd v = out.vectors.col(k);
    out.residuals[k] = (mc * v - es.eigenvalues()[k] * v).norm() / v.norm();
  }
  return out;
}

double default_eps_stab(const std::vector<std::complex<double>>& eigenvalues) {
  double radius = 0.0;
  for (const auto& e : eigenvalues) radius = std::max(radius, std::abs(e));
  return 1e-7 * std::max(1.0, radius);
}

StabilityVerdict stability_verdict(const std::vector<std::complex<double>>& eigenvalues,
                                   double eps_stab) {
  bool any_positive = false;
  bool all_negative = true;
  for (const auto& e : eigenvalues) {
    if (e.real() > eps_stab) any_positive = true;
    if (!(e.real() < -eps_stab)) all_negative = false;
  }
  if (any_positive) return StabilityVerdict::Unstable;
  if (all_negative) return StabilityVerdict::Stable;
  return StabilityVerdict::Marginal;
}

StabilityReport analyze_stability(const SystemState& state, const CRNetwork& network,
                                  const ModelParameters& params, double eps_stab) {
  StabilityReport report;
  report.jacobian = jacobian_at(state, network, params);
  SpectrumResult spec = spectrum(report.jacobian.assembled());
  report.eigensolver_converged = spec.converged;
  report.eigenvalues = std::move(spec.eigenvalues);
  report.eps_stab = eps_stab > 0.0 ? eps_stab : default_eps_stab(report.eigenvalues);
  report.verdict = stability_verdict(report.eigenvalues, report.eps_stab);
  for (const auto& e : report.eigenvalues) {
    if (e.real() > report.eps_stab) report.positive_witnesses.push_back(e);
    if (std::abs(e.real()) <= report.eps_stab) report.marginal_witnesses.push_back(e);
  }
  return report;
}

std::vector<std::complex<double>> polynomial_roots(const Eigen::VectorXd& monic_coefficients) {
  const int degree = static_cast<int>(monic_coefficients.size()) - 1;
  if (degree < 1) return {};
  Eigen::VectorXd c = monic_coefficients / monic_coefficients[0];
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -c[degree - i];
  return spectrum(companion).eigenvalues;
}

FactorCheck check_branch_cycle_polynomial(const ModelParameters& params) {
  FactorCheck chk;
  chk.name = "branch_cycle_quartic";
  params.validate(3);
  const double f1 = params.f[0], f2 = params.f[1], f3 = params.f[2];
  const double b = params.b, al = params.alpha, be = params.beta;
  const CRNetwork net(3, {{0, 1}, {1, 2}, {2, 1}});

  SupportPattern support;
  double lam1 = 0.0;
  const double lam2 = b / al - 2.0 * b;
  chk.closed_coefficients.resize(5);
  if (f3 > f1) {
    support = SupportPattern{{0, 2}, {1, 2}};
    const double d = f3 - f1 + (al / be) * f1;
    lam1 = f2 - f1 / be - be * (f3 - f1);
    chk.closed_coefficients << 1.0, b * (1.0 + (1.0 - al) * (f3 - f1) / d),
        b * f3 + b * b * (1.0 - al) * (f3 - f1) / d,
        b * b * (1.0 - al) * (f3 - f1) * (1.0 + f1 / d),
        b * b * (1.0 - al) * f1 * (f3 - f1);
  } else if (f1 > f3) {
    support = SupportPattern{{0, 2}, {0, 1}};
    const double d = f1 - f3 + (al / be) * f3;
    lam1 = f2 - f3 / be;
    chk.closed_coefficients << 1.0, b * (1.0 + (1.0 - al) * (f1 - f3) / d),
        b * f1 + b * b * (1.0 - al) * (f1 - f3) / d,
        b * b * (1.0 - al) * (f1 - f3) * (1.0 + f3 / d),
        b * b * (1.0 - al) * f3 * (f1 - f3);
  } else {
    chk.reason = "f1 == f3: the strict branch inequality fails";
    return chk;
  }
  chk.linear_factors = {lam1, lam2};

  const auto sol = solve_support(net, params, support);
  if (!sol) {
    chk.reason = "stable-LI fixed point absent at these parameters";
    return chk;
  }
  chk.applicable = true;

  const Eigen::MatrixXd j = jacobian_at(sol->state, net, params).assembled();
  chk.numeric_coefficients = deflated_monic_fit(j, chk.linear_factors, 4);
  chk.max_coefficient_rel_error =
      coefficient_rel_error(chk.closed_coefficients, chk.numeric_coefficients);
  chk.all_coefficients_positive = (chk.closed_coefficients.array() > 0.0).all();

  const auto eigs = spectrum(j).eigenvalues;
  chk.max_root_mismatch = match_roots({{lam1, 0.0}, {lam2, 0.0}}, eigs);
  chk.ok = chk.all_coefficients_positive && chk.max_coefficient_rel_error <= 1e-8;
  if (!chk.ok) chk.reason = "coefficient comparison failed";
  return chk;
}

FactorCheck check_five_node_polynomial(const ModelParameters& params) {
  FactorCheck chk;
  chk.name = "composed5_sextic";
  params.validate(5);
  const double f1 = params.f[0], f2 = params.f[1], f3 = params.f[2];
  const double f4 = params.f[3], f5 = params.f[4];
  const double b = params.b, c = params.c, p = params.p;
  const double al = params.alpha, be = params.beta;
  const CRNetwork net(5, {{0, 1}, {1, 2}, {2, 1}, {0, 3}, {4, 3}, {3, 4}});

  if (!(f1 > f3 + f5)) {
    chk.reason = "support condition f1 > f3 + f5 fails";
    return chk;
  }
  const SupportPattern support{{0, 2, 4}, {0, 1, 3}};
  const auto sol = solve_support(net, params, support);
  if (!sol) {
    chk.reason = "composed fixed point absent at these parameters";
    return chk;
  }
  chk.applicable = true;

  const double r1 = sol->state.r[0];
  const double r4 = sol->state.r[3];
  const double x1 = sol->state.x[0];

  const double lam1 = f2 - f3 / be;
  const double lam2 = f4 - f5 / be;
  const double lam3 = b / al - 2.0 * b;
  chk.linear_factors = {lam1, lam2, lam3, lam3};

  const double g = b * r1 / (c * x1);
  const double om = 1.0 - al;
  Eigen::VectorXd t(7);
  t << 1.0,
      b * g * om + b * (2.0 - al),
      b * (f1 + om * (b * g * (2.0 - al) + b)),
      b * b * om * (2.0 * f1 - f3 - f5 +
                    (b / (c * x1)) * (r1 * (b * om + f3 + f5) + 2.0 * al * al * f3 * r4)),
      b * b * om * (b * b * r1 * om * (f3 + f5) / (c * x1) +
                    p * r1 * (f3 + f5 + b * om) + f3 * f5 * (1.0 + al)),
      b * b * b * om * om * (g * f3 * f5 + p * r1 * (f3 + f5)),
      p * b * b * b * r1 * f3 * f5 * om * om;
  chk.closed_coefficients = t;
  chk.all_coefficients_positive = (t.array() > 0.0).all();

  const Eigen::MatrixXd j = jacobian_at(sol->state, net, params).assembled();
  chk.numeric_coefficients = deflated_monic_fit(j, chk.linear_factors, 6);
  chk.max_coefficient_rel_error =
      coefficient_rel_error(chk.closed_coefficients, chk.numeric_coefficients);

  std::vector<std::complex<double>> predicted = {
      {lam1, 0.0}, {lam2, 0.0}, {lam3, 0.0}, {lam3, 0.0}};
  for (const auto& root : polynomial_roots(t)) predicted.push_back(root);
  chk.max_root_mismatch = match_roots(predicted, spectrum(j).eigenvalues);
  chk.ok = chk.all_coefficients_positive && chk.max_root_mismatch <= 1e-7;
  if (!chk.ok) chk.reason = "spectrum factorization failed";
  return chk;
}

const char* to_string(StabilityVerdict verdict) {
  switch (verdict) {
    case StabilityVerdict::Stable: return "stable";
    case StabilityVerdict::Unstable: return "unstable";
    case StabilityVerdict::Marginal: return "marginal";
  }
  return "?";
}

}  // namespace crnli
