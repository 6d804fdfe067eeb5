#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "crnli/catalog.hpp"
#include "crnli/fixed_points.hpp"
#include "support/oracles.hpp"

using namespace crnli;
using namespace crnli::testing;

namespace {

bool has_equality(const FixedPointSolution& sol) {
  return std::any_of(sol.conditions.begin(), sol.conditions.end(),
                     [](const ParamCondition& c) { return c.is_equality; });
}

}  // namespace

TEST_CASE("two-node LI point solves in closed form") {
  const CRNetwork net = get_network("asym2");
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const ModelParameters p = random_params(rng, 2);
    const auto sol = solve_support(net, p, SupportPattern{{0}, {1}});
    REQUIRE(sol.has_value());
    CHECK(sol->state.x[0] ==
          doctest::Approx(p.b * p.f[0] / (p.c * p.p * p.beta)).epsilon(1e-12));
    CHECK(sol->state.x[1] == 0.0);
    CHECK(sol->state.r[0] == 0.0);
    CHECK(sol->state.r[1] == doctest::Approx(p.f[0] / (p.p * p.beta)).epsilon(1e-12));
    CHECK(sol->conditions.empty());
    CHECK(sol->group == FixedPointGroup::A);
    CHECK(sol->roles[0] == NodeRole::Persistent);
    CHECK(sol->roles[1] == NodeRole::Altruistic);
    CHECK(sol->residual < 1e-9);
    // delta on the active response
    CHECK(sol->delta[1] == doctest::Approx(p.p * p.beta / p.f[0]).epsilon(1e-12));
  }
}

TEST_CASE("branch-cycle mirror point carries its inequality condition") {
  const CRNetwork net = get_network("branch_cycle3");
  const ModelParameters p = params3(4, 2, 1, 1, 2.0 / 3.0, 4.0 / 9.0);
  const auto sol = solve_support(net, p, SupportPattern{{0, 2}, {0, 1}});
  REQUIRE(sol.has_value());
  const double d = p.f[0] - p.f[2] + p.alpha / p.beta * p.f[2];
  CHECK(sol->state.x[0] == doctest::Approx(p.b * d / (p.c * p.p)).epsilon(1e-12));
  CHECK(sol->state.x[2] ==
        doctest::Approx(p.b * p.f[2] * (1 - p.alpha) / (p.c * p.p * p.beta)).epsilon(1e-12));
  CHECK(sol->state.r[0] == doctest::Approx((p.f[0] - p.f[2]) / p.p).epsilon(1e-12));
  CHECK(sol->state.r[1] == doctest::Approx(p.f[2] / (p.p * p.beta)).epsilon(1e-12));
  CHECK(sol->group == FixedPointGroup::B);
  REQUIRE(sol->conditions.size() == 1);
  CHECK(!sol->conditions[0].is_equality);
  CHECK(sol->conditions[0].pretty() == "f1 - f3 > 0");
}

TEST_CASE("composed five-node point") {
  const CRNetwork net = get_network("composed5");
  const ModelParameters p = params5(3, 2, 1, 2, 1, 1, 2.0 / 3.0, 4.0 / 9.0);
  const auto sol = solve_support(net, p, SupportPattern{{0, 2, 4}, {0, 1, 3}});
  REQUIRE(sol.has_value());
  CHECK(sol->state.r[0] == doctest::Approx((p.f[0] - p.f[2] - p.f[4]) / p.p));
  CHECK(sol->state.r[1] == doctest::Approx(p.f[2] / (p.p * p.beta)));
  CHECK(sol->state.r[3] == doctest::Approx(p.f[4] / (p.p * p.beta)));
  CHECK(sol->group == FixedPointGroup::B);
  REQUIRE(sol->conditions.size() == 1);
  CHECK(sol->conditions[0].pretty() == "f1 - f3 - f5 > 0");
  // two persistent, two altruistic, one neutral active
  CHECK(sol->roles[2] == NodeRole::Persistent);
  CHECK(sol->roles[4] == NodeRole::Persistent);
  CHECK(sol->roles[1] == NodeRole::Altruistic);
  CHECK(sol->roles[3] == NodeRole::Altruistic);
  CHECK(sol->roles[0] == NodeRole::NeutralActive);
}

TEST_CASE("t-shaped point records the alpha-dependent requirement") {
  const CRNetwork net = get_network("t_shape4");
  ModelParameters p;
  p.f.resize(4);
  p.f << 1, 1, 2, 2;
  p.p = p.c = p.b = 1.0;
  p.alpha = 0.4;
  p.beta = 0.16;
  const auto sol = solve_support(net, p, SupportPattern{{1, 2, 3}, {0, 2, 3}});
  REQUIRE(sol.has_value());
  CHECK(sol->state.r[0] == doctest::Approx(p.f[1] / (p.p * p.beta)));
  CHECK(sol->state.x[1] ==
        doctest::Approx(p.b * p.f[1] * (1 - 2 * p.alpha) / (p.c * p.p * p.beta)));
  CHECK(sol->group == FixedPointGroup::B);
  // f3 - f2 > 0, f4 - f2 > 0, and the (1 - 2 alpha) f2 > 0 requirement
  CHECK(sol->conditions.size() == 3);
  // at alpha > 1/2 the same support has no valid point
  ModelParameters bad = p;
  bad.alpha = 0.6;
  bad.beta = 0.3;
  CHECK(!solve_support(net, bad, SupportPattern{{1, 2, 3}, {0, 2, 3}}).has_value());
}

TEST_CASE("unsupported responses make the support infeasible") {
  const CRNetwork net = get_network("asym2");
  std::mt19937_64 rng(5);
  const ModelParameters p = random_params(rng, 2);
  // J = {1} with I = {2}: nothing stimulates response 1
  SolveDiagnostics diag;
  CHECK(!solve_support(net, p, SupportPattern{{1}, {0}}, &diag).has_value());
  CHECK(!diag.reason.empty());
  // the all-zero state is excluded
  CHECK(!solve_support(net, p, SupportPattern{{}, {}}, &diag).has_value());
}

TEST_CASE("enumeration on the asymmetric pair at generic parameters") {
  const CRNetwork net = get_network("asym2");
  ModelParameters p;
  p.f.resize(2);
  p.f << 2.0, 1.0;  // f1 > beta f2
  p.p = 0.8;
  p.c = 1.2;
  p.b = 1.1;
  p.alpha = 0.55;
  p.beta = 0.3;
  const auto sols = enumerate_fixed_points(net, p);
  // catalog entries 1, 2, 3, 5; entry 4 needs the exact equality
  CHECK(sols.size() == 4);
  int li_count = 0;
  for (const auto& sol : sols) li_count += sol.has_li() ? 1 : 0;
  CHECK(li_count == 1);
}

TEST_CASE("enumeration on a single node") {
  CRNetwork net(1, {});
  ModelParameters p;
  p.f.resize(1);
  p.f << 1.3;
  p.p = 1.0;
  p.c = 0.7;
  p.b = 0.9;
  p.alpha = 0.5;
  p.beta = 0.2;
  const auto sols = enumerate_fixed_points(net, p);
  REQUIRE(sols.size() == 1);
  CHECK(sols[0].state.x[0] == doctest::Approx(p.b * p.f[0] / (p.c * p.p)));
  CHECK(sols[0].state.r[0] == doctest::Approx(p.f[0] / p.p));
}

TEST_CASE("enumeration on the 3-cycle includes the LI points and the interior point") {
  const CRNetwork net = get_network("cycle3");
  ModelParameters p = params3(1.1, 1.0, 0.9, 1.0, 0.5, 0.2);
  // all three interior numerators positive at these values
  const auto sols = enumerate_fixed_points(net, p);
  const CRNSystem system(net, p);
  int li_points = 0;
  bool interior_found = false;
  for (const auto& sol : sols) {
    CHECK(system.rhs_sup_norm(sol.state) < 1e-10);
    if (sol.has_li()) ++li_points;
    if (sol.support.I.size() == 3 && sol.support.J.size() == 3) interior_found = true;
  }
  CHECK(li_points == 3);
  REQUIRE(interior_found);
}

TEST_CASE("enumeration order does not change the result set") {
  const CRNetwork net = get_network("branch_cycle3");
  const ModelParameters p = params3(1, 3, 4, 1, 2.0 / 3.0, 4.0 / 9.0);
  const auto canonical = enumerate_fixed_points(net, p);
  EnumerateOptions shuffled;
  shuffled.shuffle_seed = 1234;
  const auto other = enumerate_fixed_points(net, p, shuffled);
  REQUIRE(canonical.size() == other.size());
  for (std::size_t k = 0; k < canonical.size(); ++k) {
    CHECK((canonical[k].state.x - other[k].state.x).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((canonical[k].state.r - other[k].state.r).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("enumeration refuses oversized networks") {
  std::mt19937_64 rng(3);
  const CRNetwork net = random_network(rng, 5);
  const ModelParameters p = random_params(rng, 5);
  EnumerateOptions opts;
  opts.max_n = 4;
  CHECK_THROWS_AS(enumerate_fixed_points(net, p, opts), std::invalid_argument);
}

TEST_CASE("classification follows the sign pattern and relabeling") {
  SystemState s;
  s.x.resize(4);
  s.x << 1.0, 0.0, 2.0, 0.0;
  s.r.resize(4);
  s.r << 0.0, 3.0, 1.0, 0.0;
  const auto roles = classify_roles(s);
  CHECK(roles[0] == NodeRole::Persistent);
  CHECK(roles[1] == NodeRole::Altruistic);
  CHECK(roles[2] == NodeRole::NeutralActive);
  CHECK(roles[3] == NodeRole::NeutralIdle);

  // permuting node indices permutes labels identically
  std::mt19937_64 rng(31);
  std::vector<int> perm = {0, 1, 2, 3};
  std::shuffle(perm.begin(), perm.end(), rng);
  SystemState permuted;
  permuted.x.resize(4);
  permuted.r.resize(4);
  for (int i = 0; i < 4; ++i) {
    permuted.x[perm[i]] = s.x[i];
    permuted.r[perm[i]] = s.r[i];
  }
  const auto permuted_roles = classify_roles(permuted);
  for (int i = 0; i < 4; ++i) CHECK(permuted_roles[perm[i]] == roles[i]);
}

TEST_CASE("group assignment") {
  std::vector<NodeRole> li = {NodeRole::Persistent, NodeRole::Altruistic};
  std::vector<NodeRole> no_li = {NodeRole::NeutralActive, NodeRole::NeutralIdle};
  ParamCondition ineq;
  ineq.f_coeff = Eigen::VectorXd::Zero(2);
  ineq.f_coeff << 1, -1;
  ParamCondition eq = ineq;
  eq.is_equality = true;
  CHECK(classify_group(li, {}) == FixedPointGroup::A);
  CHECK(classify_group(li, {ineq}) == FixedPointGroup::B);
  CHECK(classify_group(li, {ineq, eq}) == FixedPointGroup::C);
  CHECK(classify_group(no_li, {ineq}) == FixedPointGroup::D);
  CHECK(classify_group(no_li, {}) == FixedPointGroup::D);
}

TEST_CASE("stationary space kernel dimensions") {
  SUBCASE("two-node LI point has a free response direction") {
    const CRNetwork net = get_network("asym2");
    std::mt19937_64 rng(7);
    const ModelParameters p = random_params(rng, 2);
    const auto sol = solve_support(net, p, SupportPattern{{0}, {1}});
    REQUIRE(sol.has_value());
    const StationarySpace space = stationary_space(*sol, net, p);
    // direct rank computation: the single row (1, beta) has rank 1 in R^2
    CHECK(space.r_kernel_dim == 1);
  }
  SUBCASE("single node is isolated") {
    CRNetwork net(1, {});
    ModelParameters p;
    p.f.resize(1);
    p.f << 1.0;
    p.p = p.c = p.b = 1.0;
    p.alpha = 0.5;
    p.beta = 0.25;
    const auto sol = solve_support(net, p, SupportPattern{{0}, {0}});
    REQUIRE(sol.has_value());
    const StationarySpace space = stationary_space(*sol, net, p);
    CHECK(space.r_kernel_dim == 0);
    CHECK(space.x_kernel_dim == 0);
  }
  SUBCASE("branch-cycle stable point: two independent rows over three components") {
    // ker(U^T_I) and ker(V^T_J) live in R^n; with |I| = |J| = 2 independent
    // rows each kernel has dimension 1.
    const CRNetwork net = get_network("branch_cycle3");
    const ModelParameters p = params3(1, 3, 4, 1, 2.0 / 3.0, 4.0 / 9.0);
    const auto sol = solve_support(net, p, SupportPattern{{0, 2}, {1, 2}});
    REQUIRE(sol.has_value());
    const StationarySpace space = stationary_space(*sol, net, p);
    CHECK(space.r_kernel_dim == 1);
    CHECK(space.x_kernel_dim == 1);
  }
}

TEST_CASE("equality-conditioned points are measure-zero fragile") {
  const CRNetwork net = get_network("asym2");
  ModelParameters p;
  p.f.resize(2);
  p.f << 0.0, 2.0;
  p.p = 1.0;
  p.c = 1.0;
  p.b = 1.0;
  p.alpha = 0.6;
  p.beta = 0.35;
  p.f[0] = p.beta * p.f[1];
  const SupportPattern support{{0, 1}, {1}};
  const auto sol = solve_support(net, p, support);
  REQUIRE(sol.has_value());
  CHECK(sol->group == FixedPointGroup::C);
  CHECK(has_equality(*sol));
  // family representative sits at the midpoint
  CHECK(sol->state.x[0] == doctest::Approx(0.5 * p.b * p.f[1] / (p.c * p.p)));
  CHECK(sol->state.x[1] == doctest::Approx(0.5 * p.b * p.f[1] / (p.c * p.p)));

  for (int i = 0; i < 2; ++i) {
    for (double sign : {+1.0, -1.0}) {
      ModelParameters nudged = p;
      nudged.f[i] += sign * 1e-6;
      CHECK(!solve_support(net, nudged, support).has_value());
    }
  }
}

TEST_CASE("no-altruism feasibility") {
  SUBCASE("single node") {
    CRNetwork net(1, {});
    ModelParameters p;
    p.f.resize(1);
    p.f << 2.0;
    p.p = 0.5;
    p.c = p.b = 1.0;
    p.alpha = 0.5;
    p.beta = 0.25;
    const auto report = no_altruism_feasibility(net, p);
    CHECK(report.invertible);
    CHECK(report.r[0] == doctest::Approx(p.f[0] / p.p));
    CHECK(report.verdict == NoAltruismVerdict::RequiresMeasureZeroEqualities);
  }
  SUBCASE("two-node closed form via the hand-inverted matrix") {
    const CRNetwork net = get_network("asym2");
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
      ModelParameters p = random_params(rng, 2);
      const auto report = no_altruism_feasibility(net, p);
      REQUIRE(report.invertible);
      // U^T = [[1, beta], [0, 1]]: R = ((f1 - beta f2)/p, f2/p)
      CHECK(report.r[0] == doctest::Approx((p.f[0] - p.beta * p.f[1]) / p.p).epsilon(1e-12));
      CHECK(report.r[1] == doctest::Approx(p.f[1] / p.p).epsilon(1e-12));
      if (p.f[0] > p.beta * p.f[1]) {
        CHECK(report.verdict == NoAltruismVerdict::RequiresMeasureZeroEqualities);
      }
    }
    // exactly on the equality: zero component
    ModelParameters p = random_params(rng, 2);
    p.f[0] = p.beta * p.f[1];
    const auto on_set = no_altruism_feasibility(net, p);
    CHECK(on_set.has_zero_component);
    CHECK(on_set.verdict == NoAltruismVerdict::OnMeasureZeroSet);
    // below it: negative component, no valid altruism-free state
    p.f[0] = 0.5 * p.beta * p.f[1];
    CHECK(no_altruism_feasibility(net, p).verdict == NoAltruismVerdict::NoPositiveSolution);
  }
  SUBCASE("3-cycle with positive interior numerators") {
    const CRNetwork net = get_network("cycle3");
    const ModelParameters p = params3(1.1, 1.0, 0.9, 1.0, 0.5, 0.2);
    const auto report = no_altruism_feasibility(net, p);
    REQUIRE(report.invertible);
    const double den = p.p * (1 + std::pow(p.beta, 3));
    CHECK(report.r[0] ==
          doctest::Approx((p.f[0] - p.beta * p.f[1] + p.beta * p.beta * p.f[2]) / den));
    CHECK(!report.has_zero_component);
    CHECK(!report.has_negative_component);
    CHECK(report.verdict == NoAltruismVerdict::RequiresMeasureZeroEqualities);
  }
  SUBCASE("singular neutralization matrix reports consistency conditions") {
    // bidirectional star: Id + beta*A is singular at beta = 1/sqrt(3)
    const CRNetwork star(4, {{0, 1}, {1, 0}, {0, 2}, {2, 0}, {0, 3}, {3, 0}});
    ModelParameters p;
    p.f = Eigen::VectorXd::Constant(4, 1.0);
    p.p = p.c = p.b = 1.0;
    p.alpha = 0.7;
    p.beta = 1.0 / std::sqrt(3.0);
    const auto report = no_altruism_feasibility(star, p);
    CHECK(!report.invertible);
    CHECK(report.rank == 3);
    CHECK(report.consistency_conditions.size() == 1);
    CHECK(report.verdict == NoAltruismVerdict::SingularConsistencyRequired);
  }
}

TEST_CASE("solved states always pass an independent residual check") {
  std::mt19937_64 rng(41);
  for (const char* name : {"asym2", "chain_branch3", "branch_cycle3", "cycle3"}) {
    const CRNetwork net = get_network(name);
    for (int trial = 0; trial < 10; ++trial) {
      const ModelParameters p = random_params(rng, net.size());
      const CRNSystem system(net, p);
      for (const auto& sol : enumerate_fixed_points(net, p))
        CHECK(system.rhs_sup_norm(sol.state) < 1e-9);
    }
  }
}
