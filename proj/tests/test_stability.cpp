#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <random>

#include "crnli/catalog.hpp"
#include "crnli/stability.hpp"
#include "support/oracles.hpp"

using namespace crnli;
using namespace crnli::testing;

namespace {

bool spectrum_contains(const std::vector<std::complex<double>>& eigs, double value,
                       double tol) {
  return std::any_of(eigs.begin(), eigs.end(), [&](const std::complex<double>& e) {
    return std::abs(e - std::complex<double>(value, 0.0)) < tol;
  });
}

}  // namespace

TEST_CASE("two-node Jacobian matches the closed 4x4 matrix") {
  const CRNetwork net = get_network("asym2");
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const ModelParameters p = random_params(rng, 2);
    const auto sol = solve_support(net, p, SupportPattern{{0}, {1}});
    REQUIRE(sol.has_value());
    const Eigen::MatrixXd j = jacobian_at(sol->state, net, p).assembled();

    Eigen::MatrixXd expected(4, 4);
    const double f1 = p.f[0], f2 = p.f[1];
    expected << 0, 0, -p.b * f1 / (p.c * p.beta), -p.b * f1 / p.c,
        0, f2 - f1 / p.beta, 0, 0,
        0, 0, p.b / p.alpha - p.b, 0,
        p.c, p.c, -p.b / p.alpha, -p.b;
    CHECK((j - expected).cwiseAbs().maxCoeff() < 1e-10 * std::max(1.0, expected.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("single-node Jacobian at unit parameters") {
  CRNetwork net(1, {});
  ModelParameters p;
  p.f.resize(1);
  p.f << 1.0;
  p.p = p.c = p.b = 1.0;
  p.alpha = 0.5;
  p.beta = 0.25;
  SystemState s{Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1)};
  const Eigen::MatrixXd j = jacobian_at(s, net, p).assembled();
  Eigen::MatrixXd expected(2, 2);
  expected << 0, -1, 1, -1;
  CHECK((j - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("analytic Jacobian agrees with central finite differences") {
  std::mt19937_64 rng(11);
  for (const char* name : {"asym2", "sym2", "chain_branch3", "branch_cycle3", "cycle3",
                           "t_shape4", "composed5"}) {
    const CRNetwork net = get_network(name);
    for (int trial = 0; trial < 15; ++trial) {
      const ModelParameters p = random_params(rng, net.size());
      const CRNSystem system(net, p);
      const SystemState s = random_positive_state(rng, net.size());
      const Eigen::MatrixXd analytic = jacobian_at(s, system).assembled();
      const Eigen::MatrixXd numeric = finite_difference_jacobian(s, system);
      const double scale = std::max(1.0, analytic.cwiseAbs().maxCoeff());
      INFO(name, " trial ", trial);
      CHECK((analytic - numeric).cwiseAbs().maxCoeff() / scale < 1e-6);
    }
  }
}

TEST_CASE("Jacobian is refused where a stimulated variant faces no response") {
  const CRNetwork net = get_network("asym2");
  ModelParameters p;
  p.f.resize(2);
  p.f << 1.0, 1.0;
  p.p = p.c = p.b = 1.0;
  p.alpha = 0.5;
  p.beta = 0.25;
  SystemState s;
  s.x.resize(2);
  s.x << 1.0, 1.0;  // variant 1 active
  s.r.resize(2);
  s.r << 0.0, 0.0;  // no responses anywhere
  CHECK_THROWS_AS(jacobian_at(s, net, p), JacobianUndefined);

  // all-idle antigens are fine: pure decay block
  s.x << 0.0, 0.0;
  const Eigen::MatrixXd j = jacobian_at(s, net, p).assembled();
  CHECK(j(2, 2) == doctest::Approx(-p.b));
  CHECK(j(3, 3) == doctest::Approx(-p.b));
}

TEST_CASE("spectrum of a diagonal matrix") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
  m.diagonal() << 1.0, -2.0, 0.0;
  const auto eigs = spectrum(m).eigenvalues;
  REQUIRE(eigs.size() == 3);
  CHECK(spectrum_contains(eigs, 1.0, 1e-12));
  CHECK(spectrum_contains(eigs, -2.0, 1e-12));
  CHECK(spectrum_contains(eigs, 0.0, 1e-12));
  // sorted by real part, descending
  CHECK(eigs[0].real() == doctest::Approx(1.0));
  CHECK(eigs[2].real() == doctest::Approx(-2.0));
}

TEST_CASE("two-node LI point carries the b/alpha - b eigenvalue") {
  const CRNetwork net = get_network("asym2");
  ModelParameters p;
  p.f.resize(2);
  p.f << 1.0, 1.0;
  p.p = p.c = 1.0;
  p.b = 1.0;
  p.alpha = 2.0 / 3.0;
  p.beta = 4.0 / 9.0;
  const auto sol = solve_support(net, p, SupportPattern{{0}, {1}});
  REQUIRE(sol.has_value());
  const auto eigs = spectrum(jacobian_at(sol->state, net, p).assembled()).eigenvalues;
  CHECK(spectrum_contains(eigs, 0.5, 1e-12));
}

TEST_CASE("branch-cycle stable example spectrum") {
  const CRNetwork net = get_network("branch_cycle3");
  const ModelParameters p = params3(1, 3, 4, 1, 2.0 / 3.0, 4.0 / 9.0);
  const auto sol = solve_support(net, p, SupportPattern{{0, 2}, {1, 2}});
  REQUIRE(sol.has_value());
  const auto eigs = spectrum(jacobian_at(sol->state, net, p).assembled()).eigenvalues;
  REQUIRE(eigs.size() == 6);
  CHECK(spectrum_contains(eigs, -7.0 / 12.0, 1e-9));
  CHECK(spectrum_contains(eigs, -0.5, 1e-9));
  int complex_count = 0;
  for (const auto& e : eigs) {
    CHECK(e.real() < 0.0);
    if (std::abs(e.imag()) > 1e-9) ++complex_count;
  }
  CHECK(complex_count == 4);  // two conjugate pairs
}

TEST_CASE("spectra are conjugate-closed and consistent with trace and determinant") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = uniform(rng, -2.0, 2.0);
    const auto eigs = spectrum(m).eigenvalues;
    REQUIRE(static_cast<int>(eigs.size()) == n);

    std::complex<double> sum = 0.0, prod = 1.0;
    for (const auto& e : eigs) {
      sum += e;
      prod *= e;
      // conjugate present
      const bool conj_found = std::any_of(eigs.begin(), eigs.end(), [&](const auto& o) {
        return std::abs(o - std::conj(e)) < 1e-9 * std::max(1.0, std::abs(e));
      });
      CHECK(conj_found);
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff() * n);
    CHECK(std::abs(sum.real() - m.trace()) < 1e-7 * scale);
    CHECK(std::abs(sum.imag()) < 1e-9 * scale);
    const double det = m.determinant();
    CHECK(std::abs(prod.real() - det) < 1e-7 * std::max(1.0, std::abs(det)) * 100);
    CHECK(std::abs(prod.imag()) < 1e-7 * std::max(1.0, std::abs(det)) * 100);
  }
}

TEST_CASE("eigenpairs carry small residuals") {
  std::mt19937_64 rng(31);
  Eigen::MatrixXd m(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) m(i, j) = uniform(rng, -1.0, 1.0);
  const EigenPairs pairs = spectrum_with_vectors(m);
  REQUIRE(pairs.converged);
  for (int k = 0; k < 6; ++k) CHECK(pairs.residuals[k] < 1e-8);
}

TEST_CASE("verdict classification") {
  using C = std::complex<double>;
  CHECK(stability_verdict({C(-0.5, 1.0), C(-0.2, 0.0)}, 1e-7) == StabilityVerdict::Stable);
  CHECK(stability_verdict({C(0.5, 0.0), C(-0.2, 0.0)}, 1e-7) == StabilityVerdict::Unstable);
  CHECK(stability_verdict({C(0.0, 1.0), C(-0.2, 0.0)}, 1e-7) == StabilityVerdict::Marginal);
  // default band scales with the spectral radius
  CHECK(default_eps_stab({C(100.0, 0.0)}) == doctest::Approx(1e-5));
  CHECK(default_eps_stab({C(0.1, 0.0)}) == doctest::Approx(1e-7));
}

TEST_CASE("named instability witnesses over random draws") {
  std::mt19937_64 rng(37);
  SUBCASE("asymmetric and symmetric pairs: b/alpha - b") {
    for (const char* name : {"asym2", "sym2"}) {
      const CRNetwork net = get_network(name);
      for (int trial = 0; trial < 15; ++trial) {
        const ModelParameters p = random_params(rng, 2);
        const auto sol = solve_support(net, p, SupportPattern{{0}, {1}});
        REQUIRE(sol.has_value());
        const auto report = analyze_stability(sol->state, net, p);
        CHECK(report.verdict == StabilityVerdict::Unstable);
        CHECK(spectrum_contains(report.eigenvalues, p.b / p.alpha - p.b, 1e-9));
      }
    }
  }
  SUBCASE("3-cycle LI points: b/alpha + alpha*b - b") {
    const CRNetwork net = get_network("cycle3");
    for (const auto& entry : catalog_entries("cycle3")) {
      if (entry.group != FixedPointGroup::A) continue;
      for (int trial = 0; trial < 10; ++trial) {
        const ModelParameters p = sample_entry_params(entry, rng);
        const auto state = entry.evaluate(p);
        REQUIRE(state.has_value());
        const auto report = analyze_stability(*state, net, p);
        CHECK(report.verdict == StabilityVerdict::Unstable);
        CHECK(spectrum_contains(report.eigenvalues,
                                p.b / p.alpha + p.alpha * p.b - p.b, 1e-9));
      }
    }
  }
}

TEST_CASE("branch-cycle quartic factor check") {
  SUBCASE("example coefficients") {
    const ModelParameters p = params3(1, 3, 4, 1, 2.0 / 3.0, 4.0 / 9.0);
    const FactorCheck chk = check_branch_cycle_polynomial(p);
    REQUIRE(chk.applicable);
    CHECK(chk.ok);
    CHECK(chk.closed_coefficients[0] == doctest::Approx(1.0));
    CHECK(chk.closed_coefficients[1] == doctest::Approx(11.0 / 9.0).epsilon(1e-12));
    CHECK(chk.closed_coefficients[2] == doctest::Approx(38.0 / 9.0).epsilon(1e-12));
    CHECK(chk.closed_coefficients[3] == doctest::Approx(11.0 / 9.0).epsilon(1e-12));
    CHECK(chk.closed_coefficients[4] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(chk.linear_factors[0] == doctest::Approx(-7.0 / 12.0).epsilon(1e-12));
    CHECK(chk.linear_factors[1] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(chk.max_coefficient_rel_error <= 1e-8);
  }
  SUBCASE("mirror branch factors") {
    const ModelParameters p = params3(4, 2, 1, 1, 2.0 / 3.0, 4.0 / 9.0);
    const FactorCheck chk = check_branch_cycle_polynomial(p);
    REQUIRE(chk.applicable);
    CHECK(chk.ok);
    CHECK(chk.linear_factors[0] == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(chk.linear_factors[1] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(chk.max_root_mismatch < 1e-9);
  }
  SUBCASE("boundary is rejected") {
    const ModelParameters p = params3(2, 3, 2, 1, 2.0 / 3.0, 4.0 / 9.0);
    const FactorCheck chk = check_branch_cycle_polynomial(p);
    CHECK(!chk.applicable);
  }
  SUBCASE("positive coefficients over random draws on both branches") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 50; ++trial) {
      ModelParameters p = random_params(rng, 3);
      if (trial % 2 == 0)
        p.f[2] = p.f[0] + uniform(rng, 0.1, 2.0);
      else
        p.f[0] = p.f[2] + uniform(rng, 0.1, 2.0);
      const FactorCheck chk = check_branch_cycle_polynomial(p);
      REQUIRE(chk.applicable);
      INFO("trial ", trial, " rel err ", chk.max_coefficient_rel_error);
      CHECK(chk.all_coefficients_positive);
      CHECK(chk.max_coefficient_rel_error <= 1e-8);
    }
  }
}

TEST_CASE("composed five-node factor check") {
  SUBCASE("first example: equal lambda1, lambda2 and a double lambda3") {
    const ModelParameters p = params5(3, 2, 1, 2, 1, 1, 2.0 / 3.0, 4.0 / 9.0);
    const FactorCheck chk = check_five_node_polynomial(p);
    REQUIRE(chk.applicable);
    CHECK(chk.ok);
    CHECK(chk.linear_factors[0] == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(chk.linear_factors[1] == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(chk.linear_factors[2] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(chk.all_coefficients_positive);
    CHECK(chk.max_root_mismatch <= 1e-7);
  }
  SUBCASE("second example: distinct negative factors") {
    const ModelParameters p = params5(4, 1, 2, 1, 1, 2, 3.0 / 4.0, 9.0 / 16.0);
    const FactorCheck chk = check_five_node_polynomial(p);
    REQUIRE(chk.applicable);
    CHECK(chk.ok);
    CHECK(chk.linear_factors[0] == doctest::Approx(-23.0 / 9.0).epsilon(1e-12));
    CHECK(chk.linear_factors[1] == doctest::Approx(-7.0 / 9.0).epsilon(1e-12));
    CHECK(chk.linear_factors[2] == doctest::Approx(-4.0 / 3.0).epsilon(1e-12));
  }
  SUBCASE("boundary is rejected") {
    const ModelParameters p = params5(3, 2, 2, 2, 1, 1, 2.0 / 3.0, 4.0 / 9.0);
    CHECK(!check_five_node_polynomial(p).applicable);
  }
}

TEST_CASE("stable spectra move continuously under small parameter changes") {
  const CRNetwork net = get_network("branch_cycle3");
  const ModelParameters p = params3(1, 3, 4, 1, 2.0 / 3.0, 4.0 / 9.0);
  const auto base = solve_support(net, p, SupportPattern{{0, 2}, {1, 2}});
  REQUIRE(base.has_value());
  const auto base_eigs = spectrum(jacobian_at(base->state, net, p).assembled()).eigenvalues;

  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    ModelParameters q = p;
    for (int i = 0; i < 3; ++i) q.f[i] *= 1.0 + uniform(rng, -0.01, 0.01);
    q.b *= 1.0 + uniform(rng, -0.01, 0.01);
    const auto moved = solve_support(net, q, SupportPattern{{0, 2}, {1, 2}});
    REQUIRE(moved.has_value());
    const auto moved_eigs = spectrum(jacobian_at(moved->state, net, q).assembled()).eigenvalues;
    for (const auto& e : base_eigs) {
      double nearest = 1e300;
      for (const auto& o : moved_eigs) nearest = std::min(nearest, std::abs(e - o));
      CHECK(nearest < 0.1);  // 1% parameter motion moves eigenvalues a little
    }
  }
}

TEST_CASE("polynomial roots via the companion matrix") {
  // (x - 1)(x + 2)(x - 3) = x^3 - 2x^2 - 5x + 6
  Eigen::VectorXd coeffs(4);
  coeffs << 1, -2, -5, 6;
  const auto roots = polynomial_roots(coeffs);
  REQUIRE(roots.size() == 3);
  CHECK(spectrum_contains(roots, 1.0, 1e-9));
  CHECK(spectrum_contains(roots, -2.0, 1e-9));
  CHECK(spectrum_contains(roots, 3.0, 1e-9));
}
