#include "crnli/sweep.hpp"

#include <algorithm>
#include <stdexcept>

#include "crnli/rng.hpp"

namespace crnli {

namespace {

double boxed(CounterRng& rng, double nominal, double radius) {
  return rng.uniform(nominal * (1.0 - radius), nominal * (1.0 + radius));
}

}  // namespace

SweepResult sweep(const SweepSpec& spec, const CRNetwork& network) {
  const int n = network.size();
  spec.nominal.validate(n);
  if (!(spec.relative_radius > 0.0 && spec.relative_radius < 0.5))
    throw std::invalid_argument("sweep: relative_radius must be in (0, 0.5)");
  if (spec.samples < 1) throw std::invalid_argument("sweep: samples must be >= 1");
  if (!solve_support(network, spec.nominal, spec.constraint))
    throw std::invalid_argument("sweep: nominal parameters do not admit the constrained fixed point");

  SweepResult result;
  result.spec = spec;
  result.rng_name = counter_rng_name();
  result.records.reserve(spec.samples);

  const double radius = spec.relative_radius;
  const long budget = 10L * spec.samples;
  long ab_draws = 0;
  int stable = 0, li = 0;

  for (int s = 0; s < spec.samples; ++s) {
    CounterRng rng(spec.seed, static_cast<std::uint64_t>(s));
    SweepRecord rec;
    rec.params.f.resize(n);
    for (int i = 0; i < n; ++i) rec.params.f[i] = boxed(rng, spec.nominal.f[i], radius);
    rec.params.p = boxed(rng, spec.nominal.p, radius);
    rec.params.c = boxed(rng, spec.nominal.c, radius);
    rec.params.b = boxed(rng, spec.nominal.b, radius);

    // alpha/beta boxes clamped into (0, 1); draws breaking the ordering are
    // rejected and redrawn.
    const double a_lo = std::max(spec.nominal.alpha * (1.0 - radius), 1e-9);
    const double a_hi = std::min(spec.nominal.alpha * (1.0 + radius), 1.0 - 1e-9);
    const double b_lo = std::max(spec.nominal.beta * (1.0 - radius), 1e-9);
    const double b_hi = std::min(spec.nominal.beta * (1.0 + radius), 1.0 - 1e-9);
    for (;;) {
      if (++ab_draws + spec.samples > budget)
        throw std::runtime_error("sweep: alpha/beta resampling exceeded the 10x budget");
      rec.params.alpha = rng.uniform(a_lo, a_hi);
      rec.params.beta = rng.uniform(b_lo, b_hi);
      if (rec.params.beta < rec.params.alpha) break;
      ++result.rejected_draws;
    }

    if (auto sol = solve_support(network, rec.params, spec.constraint)) {
      rec.fixed_point_found = true;
      rec.li_preserved = sol->has_li();
      const StabilityReport report =
          analyze_stability(sol->state, network, rec.params);
      rec.verdict = report.verdict;
      if (rec.verdict == StabilityVerdict::Stable) ++stable;
      if (rec.li_preserved) ++li;
    }
    result.records.push_back(std::move(rec));
  }

  result.stable_fraction = static_cast<double>(stable) / spec.samples;
  result.li_preserved_fraction = static_cast<double>(li) / spec.samples;
  return result;
}

}  // namespace crnli
