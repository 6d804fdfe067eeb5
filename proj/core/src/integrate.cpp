#include "crnli/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace crnli {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
// 5th-order weights equal the last A row (FSAL); 4th-order weights below.
constexpr double kB4[7] = {5179.0 / 57600, 0.0,           7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

double error_norm(const Eigen::VectorXd& err, const Eigen::VectorXd& y0,
                  const Eigen::VectorXd& y1, double rtol, double atol) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const double scale = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double q = err[i] / scale;
    acc += q * q;
  }
  return std::sqrt(acc / static_cast<double>(err.size()));
}

double initial_step_guess(const CRNSystem& system, const Eigen::VectorXd& y0,
                          double t_end, const IntegratorOptions& opt) {
  Eigen::VectorXd f0;
  system.rhs_flat(y0, f0);
  const double ny = y0.cwiseAbs().maxCoeff();
  const double nf = f0.cwiseAbs().maxCoeff();
  double h = (nf > 0.0) ? 0.01 * std::max(ny, opt.atol) / nf : 1e-3 * t_end;
  h = std::min(h, 0.1 * t_end);
  return std::max(h, 1e-10);
}

SystemState split_state(const Eigen::VectorXd& y, int n) {
  return SystemState{y.head(n), y.tail(n)};
}

}  // namespace

Trajectory integrate(const SystemState& initial, const CRNetwork& network,
                     const ModelParameters& params, double t_end,
                     const IntegratorOptions& options) {
  return integrate(initial, CRNSystem(network, params), t_end, options);
}

Trajectory integrate(const SystemState& initial, const CRNSystem& system,
                     double t_end, const IntegratorOptions& options) {
  const int n = system.size();
  if (static_cast<int>(initial.x.size()) != n || static_cast<int>(initial.r.size()) != n)
    throw std::invalid_argument("integrate: state dimension mismatch");
  if (!initial.nonnegative())
    throw std::invalid_argument("integrate: initial state must be nonnegative");
  if (initial.x.maxCoeff() == 0.0 && initial.r.maxCoeff() == 0.0)
    throw std::invalid_argument("integrate: initial populations cannot all be zero");
  if (!(t_end > 0.0)) throw std::invalid_argument("integrate: t_end must be > 0");

  Eigen::VectorXd y(2 * n);
  y << initial.x, initial.r;

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(initial);

  double t = 0.0;
  double h = options.initial_step > 0.0 ? options.initial_step
                                        : initial_step_guess(system, y, t_end, options);
  if (options.max_step > 0.0) h = std::min(h, options.max_step);

  std::vector<Eigen::VectorXd> k(7);
  Eigen::VectorXd ytmp(2 * n), y5(2 * n), err(2 * n);
  system.rhs_flat(y, k[0]);
  bool k0_valid = true;

  while (t < t_end) {
    h = std::min(h, t_end - t);
    if (h <= std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)) * 16.0)
      throw StepSizeUnderflow("integrate: step size underflow at t=" + std::to_string(t));

    if (!k0_valid) {
      system.rhs_flat(y, k[0]);
      k0_valid = true;
    }
    for (int s = 1; s < 7; ++s) {
      ytmp = y;
      for (int j = 0; j < s; ++j)
        if (kA[s][j] != 0.0) ytmp += (h * kA[s][j]) * k[j];
      system.rhs_flat(ytmp, k[s]);
    }
    y5 = ytmp;  // stage 7 input is the 5th-order solution (FSAL)
    err.setZero();
    for (int s = 0; s < 7; ++s) {
      const double w5 = (s < 6) ? kA[6][s] : 0.0;
      err += (h * (w5 - kB4[s])) * k[s];
    }

    if (!y5.allFinite()) {
      traj.terminal_reason = TerminalReason::NonFinite;
      return traj;
    }

    const double enorm = error_norm(err, y, y5, options.rtol, options.atol);
    if (enorm > 1.0) {
      h *= std::max(0.2, 0.9 * std::pow(enorm, -0.2));
      continue;
    }

    // Negative undershoot: truncation error only, since coordinate planes
    // are invariant. Clip tiny dips, retry larger ones at half the step.
    double undershoot = 0.0;
    for (Eigen::Index i = 0; i < y5.size(); ++i)
      if (y5[i] < 0.0) undershoot = std::max(undershoot, -y5[i]);
    if (undershoot > options.clip_tol) {
      h *= 0.5;
      continue;
    }
    bool clipped = false;
    for (Eigen::Index i = 0; i < y5.size(); ++i)
      if (y5[i] < 0.0) {
        y5[i] = 0.0;
        clipped = true;
      }
    traj.max_undershoot = std::max(traj.max_undershoot, undershoot);

    t += h;
    y = y5;
    traj.times.push_back(t);
    traj.states.push_back(split_state(y, n));

    if (clipped) {
      k0_valid = false;
    } else {
      k[0] = k[6];  // FSAL
    }

    if (y.cwiseAbs().maxCoeff() > options.divergence_bound) {
      traj.terminal_reason = TerminalReason::Diverged;
      return traj;
    }
    if (options.convergence_tol > 0.0) {
      Eigen::VectorXd f;
      system.rhs_flat(y, f);
      if (f.cwiseAbs().maxCoeff() < options.convergence_tol) {
        traj.terminal_reason = TerminalReason::Converged;
        return traj;
      }
    }

    h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(enorm, 1e-10), -0.2)));
    if (options.max_step > 0.0) h = std::min(h, options.max_step);
  }
  traj.terminal_reason = TerminalReason::TEndReached;
  return traj;
}

std::optional<SystemState> detect_convergence(const Trajectory& trajectory,
                                              const CRNetwork& network,
                                              const ModelParameters& params,
                                              double window, double tol) {
  if (trajectory.states.empty()) throw std::invalid_argument("detect_convergence: empty trajectory");
  const CRNSystem system(network, params);
  const double t_last = trajectory.times.back();
  for (std::size_t i = trajectory.times.size(); i-- > 0;) {
    if (trajectory.times[i] < t_last - window) break;
    if (system.rhs_sup_norm(trajectory.states[i]) >= tol) return std::nullopt;
  }
  return trajectory.states.back();
}

}  // namespace crnli
