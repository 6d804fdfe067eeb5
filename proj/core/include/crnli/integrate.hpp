#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "crnli/model.hpp"

namespace crnli {

/// Raised when step-size control shrinks the step below the representable
/// resolution at the current time.
struct StepSizeUnderflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class TerminalReason { TEndReached, Converged, Diverged, NonFinite };

struct IntegratorOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  /// Stop early once ||rhs||_inf stays below this value; 0 disables the check.
  double convergence_tol = 0.0;
  /// Declare divergence once ||state||_inf exceeds this bound.
  double divergence_bound = 1e12;
  /// Components undershooting zero by less than this are clipped to zero;
  /// larger undershoots force a retry at half the step.
  double clip_tol = 1e-12;
  double initial_step = 0.0;  ///< 0 = choose automatically
  double max_step = 0.0;      ///< 0 = no cap
};

struct Trajectory {
  std::vector<double> times;
  std::vector<SystemState> states;
  TerminalReason terminal_reason = TerminalReason::TEndReached;
  /// Largest pre-clip undershoot below zero seen on accepted steps.
  double max_undershoot = 0.0;

  const SystemState& back() const { return states.back(); }
  double t_end() const { return times.back(); }
};

/// Default horizon: several decay time constants at any parameter scale.
inline double default_t_end(const ModelParameters& params) { return 1000.0 / params.b; }

/// Integrate the evolution equations with an embedded Dormand-Prince 5(4)
/// pair. Every accepted step is recorded. Non-finite states and divergence
/// are reported through Trajectory::terminal_reason; step-size underflow
/// throws StepSizeUnderflow.
Trajectory integrate(const SystemState& initial, const CRNetwork& network,
                     const ModelParameters& params, double t_end,
                     const IntegratorOptions& options = {});

Trajectory integrate(const SystemState& initial, const CRNSystem& system,
                     double t_end, const IntegratorOptions& options = {});

/// Returns the terminal state if ||rhs||_inf < tol on every sample in the
/// trailing time window, otherwise nothing.
std::optional<SystemState> detect_convergence(const Trajectory& trajectory,
                                              const CRNetwork& network,
                                              const ModelParameters& params,
                                              double window, double tol);

}  // namespace crnli
