#include "crnli/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace crnli {

namespace {

using Params = ModelParameters;
using Rng = std::mt19937_64;
using StateOpt = std::optional<SystemState>;

bool eq(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

SystemState st(std::vector<double> x, std::vector<double> r) {
  SystemState s;
  s.x = Eigen::Map<Eigen::VectorXd>(x.data(), x.size());
  s.r = Eigen::Map<Eigen::VectorXd>(r.data(), r.size());
  return s;
}

double uni(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

struct EntrySpec {
  int index;
  std::vector<int> i_set;  // 1-based
  std::vector<int> j_set;  // 1-based
  std::string conditions;
  FixedPointGroup group;
  int family_dim;
  std::function<StateOpt(const Params&)> eval;
  std::function<void(Params&, Rng&)> adjust;
};

// Human-readable closed forms for `catalog show`; zero components omitted.
// Family entries state the family relation and the stored representative.
std::string formula_text(const std::string& network, int index) {
  static const std::map<std::pair<std::string, int>, std::string> table = {
      {{"asym2", 1}, "x2 = b f2/(c p); r2 = f2/p"},
      {{"asym2", 2}, "x1 = b f1/(c p beta); r2 = f1/(p beta)"},
      {{"asym2", 3}, "x1 = b f1/(c p); r1 = f1/p"},
      {{"asym2", 4},
       "family x1 + x2 = b f2/(c p), representative x1 = x2 = b f2/(2 c p); r2 = f2/p"},
      {{"asym2", 5},
       "x1 = b (f1 + (alpha-beta) f2)/(c p); x2 = b f2 (1-alpha)/(c p); "
       "r1 = (f1 - beta f2)/p; r2 = f2/p"},
      {{"sym2", 1}, "x1 = b f1/(c p beta); r2 = f1/(p beta)"},
      {{"chain_branch3", 1}, "x2 = b f2/(c p); r2 = f2/p"},
      {{"chain_branch3", 2},
       "x2 = b (f2 + (alpha-beta) f3)/(c p); x3 = b f3 (1-alpha)/(c p); "
       "r2 = (f2 - beta f3)/p; r3 = f3/p"},
      {{"chain_branch3", 3}, "x1 = b f1/(c p beta); r2 = f1/(p beta)"},
      {{"chain_branch3", 4}, "x1 = b f1/(c p); x3 = b f3/(c p); r1 = f1/p; r3 = f3/p"},
      {{"chain_branch3", 5},
       "x1 = b f1/(c p beta); x3 = b f3/(c p); r2 = f1/(p beta); r3 = f3/p"},
      {{"chain_branch3", 6},
       "family x1 + x2 = b f2/(c p), representative x1 = x2 = b f2/(2 c p); r2 = f2/p"},
      {{"chain_branch3", 7},
       "x1 = b f1/(c p); x2 = b f2/(c p beta); r1 = f1/p; r3 = f2/(p beta)"},
      {{"chain_branch3", 8},
       "x1 = b (f1 + (alpha-beta) f2)/(c p); x2 = b f2 (1-alpha)/(c p); "
       "r1 = (f1 - beta f2)/p; r2 = f2/p"},
      {{"chain_branch3", 9},
       "family over x1 in (0, b (f2 - beta f3)/(c p)), representative "
       "x1 = b r2/(2 c), x2 = b (r2 + alpha r3)/(2 c), x3 = b (2-alpha) r3/(2 c); "
       "r2 = (f2 - beta f3)/p; r3 = f3/p"},
      {{"chain_branch3", 10},
       "x1 = b f1/(c p); family x2 + x3 = b f3/(c p), representative "
       "x2 = x3 = b f3/(2 c p); r1 = f1/p; r3 = f3/p"},
      {{"chain_branch3", 11},
       "x1 = b (f1 + (alpha-beta)(f2 - beta f3))/(c p); "
       "x2 = b (1-alpha)(f2 + (alpha-beta) f3)/(c p); "
       "x3 = b f3 (1 - alpha(1-alpha))/(c p); "
       "r1 = (f1 - beta f2 + beta^2 f3)/p; r2 = (f2 - beta f3)/p; r3 = f3/p"},
      {{"branch_cycle3", 1}, "x3 = b f3/(c p beta); r2 = f3/(p beta)"},
      {{"branch_cycle3", 2}, "x2 = b f2/(c p); r2 = f2/p"},
      {{"branch_cycle3", 3},
       "x2 = b (r2 + alpha r3)/(c (1+alpha)); x3 = b (alpha r2 + r3)/(c (1+alpha)); "
       "r2 = (f2 - beta f3)/(p (1-beta^2)); r3 = (f3 - beta f2)/(p (1-beta^2))"},
      {{"branch_cycle3", 4},
       "family x2 + x3 = b f2/(c p), representative x2 = x3 = b f2/(2 c p); r2 = f2/p"},
      {{"branch_cycle3", 5}, "x1 = b f1/(c p beta); r2 = f1/(p beta)"},
      {{"branch_cycle3", 6},
       "family x1 + x3 = b f1/(c p beta), representative x1 = x3 = b f1/(2 c p beta); "
       "r2 = f1/(p beta)"},
      {{"branch_cycle3", 7},
       "x1 = b f1 (1-alpha)/(c p beta); x3 = b (f3 - f1 + (alpha/beta) f1)/(c p); "
       "r2 = f1/(p beta); r3 = (f3 - f1)/p"},
      {{"branch_cycle3", 8},
       "x1 = b (f1 - f3 + (alpha/beta) f3)/(c p); x3 = b f3 (1-alpha)/(c p beta); "
       "r1 = (f1 - f3)/p; r2 = f3/(p beta)"},
      {{"branch_cycle3", 9}, "x1 = b f1/(c p); x3 = b f3/(c p); r1 = f1/p; r3 = f3/p"},
      {{"branch_cycle3", 10},
       "family x1 + x2 = b f2/(c p), representative x1 = x2 = b f2/(2 c p); r2 = f2/p"},
      {{"branch_cycle3", 11},
       "x1 = b (f1 + (alpha-beta) f2)/(c p); x2 = b f2 (1-alpha)/(c p); "
       "r1 = (f1 - beta f2)/p; r2 = f2/p"},
      {{"branch_cycle3", 12},
       "x1 = b f1/(c p); x2 = b f2/(c p beta); r1 = f1/p; r3 = f2/(p beta)"},
      {{"branch_cycle3", 13},
       "two-dim family x1 + x2 + x3 = b f2/(c p), representative "
       "(alpha^2, 1, alpha^2) * b f2/((c p)(1 + 2 alpha^2)); r2 = f2/p"},
      {{"branch_cycle3", 14},
       "family, representative x1 = b (1-alpha) r2/(2 c), "
       "x2 = b (r2 + alpha r3)/(2 c (1+alpha)), "
       "x3 = b (2+alpha)(alpha r2 + r3)/(2 c (1+alpha)); "
       "r2 = (f2 - beta f3)/(p (1-beta^2)); r3 = (f3 - beta f2)/(p (1-beta^2))"},
      {{"branch_cycle3", 15},
       "x1 = b f1/(c p); family x2 + x3 = b f3/(c p), representative "
       "x2 = x3 = b f3/(2 c p); r1 = f1/p; r3 = f3/p"},
      {{"branch_cycle3", 16},
       "x1 = b (f1 + (alpha-beta) f2)/(c p); family x2 + x3 = b f2 (1-alpha)/(c p), "
       "representative x2 = x3 = b f2 (1-alpha)/(2 c p); "
       "r1 = (f1 - beta f2)/p; r2 = f2/p"},
      {{"branch_cycle3", 17},
       "x1 = b (r1 + alpha r2)/c; x2 = b (1-2 alpha)(r2 + alpha r3)/(c (1-alpha^2)); "
       "x3 = b (1-alpha+alpha^2)(alpha r2 + r3)/(c (1-alpha^2)); "
       "r1 = f1/p - beta r2; r2 = (f2 - beta f3)/(p (1-beta^2)); "
       "r3 = (f3 - beta f2)/(p (1-beta^2))"},
      {{"cycle3", 1},
       "x2 = b (f2 + (alpha-beta) f3)/(c p); x3 = b f3 (1-alpha)/(c p); "
       "r2 = (f2 - beta f3)/p; r3 = f3/p"},
      {{"cycle3", 2},
       "x2 = b f2/(c p); x3 = b f3/(c p beta); r1 = f3/(p beta); r2 = f2/p"},
      {{"cycle3", 3},
       "x1 = b f1/(c p beta); x3 = b f3/(c p); r2 = f1/(p beta); r3 = f3/p"},
      {{"cycle3", 4},
       "x1 = b f1 (1-alpha)/(c p); x3 = b (f3 + (alpha-beta) f1)/(c p); "
       "r1 = f1/p; r3 = (f3 - beta f1)/p"},
      {{"cycle3", 5},
       "x1 = b f1/(c p); x2 = b f2/(c p beta); r1 = f1/p; r3 = f2/(p beta)"},
      {{"cycle3", 6},
       "x1 = b (f1 + (alpha-beta) f2)/(c p); x2 = b f2 (1-alpha)/(c p); "
       "r1 = (f1 - beta f2)/p; r2 = f2/p"},
      {{"cycle3", 7},
       "family, representative x1 = b r2/(2 c), x2 = b (r2 + alpha r3)/(2 c), "
       "x3 = b (2-alpha) r3/(2 c); r2 = f1/(p beta); r3 = f3/p"},
      {{"cycle3", 8},
       "family, representative x1 = b (2-alpha) r1/(2 c), x2 = b r3/(2 c), "
       "x3 = b (r3 + alpha r1)/(2 c); r1 = f1/p; r3 = f2/(p beta)"},
      {{"cycle3", 9},
       "family, representative x1 = b (r1 + alpha r2)/(2 c), "
       "x2 = b (2-alpha) r2/(2 c), x3 = b r1/(2 c); r1 = f3/(p beta); r2 = f2/p"},
      {{"cycle3", 10},
       "x_i = b (r_i + alpha r_{i+1})/(c (1+alpha)); "
       "r_i = (f_i - beta f_{i+1} + beta^2 f_{i+2})/(p (1+beta^3)), indices cyclic"},
      {{"t_shape4", 1},
       "x2 = b f2 (1-2 alpha)/(c p beta); x3 = b ((alpha/beta) f2 + f3 - f2)/(c p); "
       "x4 = b ((alpha/beta) f2 + f4 - f2)/(c p); r1 = f2/(p beta); "
       "r3 = (f3 - f2)/p; r4 = (f4 - f2)/p"},
      {{"composed5", 1},
       "x1 = b (f1 - f3 - f5 + (alpha/beta)(f3 + f5))/(c p); "
       "x3 = b f3 (1-alpha)/(c p beta); x5 = b f5 (1-alpha)/(c p beta); "
       "r1 = (f1 - f3 - f5)/p; r2 = f3/(p beta); r4 = f5/(p beta)"},
  };
  auto it = table.find({network, index});
  return it == table.end() ? std::string() : it->second;
}

CatalogEntry make_entry(const std::string& network, EntrySpec spec) {
  CatalogEntry e;
  e.network = network;
  e.index = spec.index;
  for (int i : spec.i_set) e.support.I.push_back(i - 1);
  for (int j : spec.j_set) e.support.J.push_back(j - 1);
  e.conditions_text = std::move(spec.conditions);
  e.formulas_text = formula_text(network, spec.index);
  e.group = spec.group;
  e.family_dim = spec.family_dim;
  e.is_family = spec.family_dim > 0;
  e.adjust = std::move(spec.adjust);

  // Wrap the raw formula so the returned state always matches the declared
  // sign pattern; implicit positivity conditions (e.g. on alpha) surface as
  // a nullopt instead of a bogus state.
  const SupportPattern support = e.support;
  auto raw = std::move(spec.eval);
  e.evaluate = [raw, support](const Params& params) -> StateOpt {
    auto s = raw(params);
    if (!s) return std::nullopt;
    const int n = static_cast<int>(s->x.size());
    for (int i = 0; i < n; ++i) {
      const bool in_i = std::binary_search(support.I.begin(), support.I.end(), i);
      const bool in_j = std::binary_search(support.J.begin(), support.J.end(), i);
      if (in_i ? !(s->x[i] > 1e-12) : s->x[i] != 0.0) return std::nullopt;
      if (in_j ? !(s->r[i] > 1e-12) : s->r[i] != 0.0) return std::nullopt;
    }
    return s;
  };
  return e;
}

std::vector<CatalogEntry> asym2_entries() {
  std::vector<CatalogEntry> v;
  const std::string net = "asym2";
  v.push_back(make_entry(net, {1, {2}, {2}, "", FixedPointGroup::D, 0,
      [](const Params& q) -> StateOpt {
        return st({0, q.b * q.f[1] / (q.c * q.p)}, {0, q.f[1] / q.p});
      }, nullptr}));
  v.push_back(make_entry(net, {2, {1}, {2}, "", FixedPointGroup::A, 0,
      [](const Params& q) -> StateOpt {
        return st({q.b * q.f[0] / (q.c * q.p * q.beta), 0}, {0, q.f[0] / (q.p * q.beta)});
      }, nullptr}));
  v.push_back(make_entry(net, {3, {1}, {1}, "", FixedPointGroup::D, 0,
      [](const Params& q) -> StateOpt {
        return st({q.b * q.f[0] / (q.c * q.p), 0}, {q.f[0] / q.p, 0});
      }, nullptr}));
  v.push_back(make_entry(net, {4, {1, 2}, {2}, "f1 = beta*f2", FixedPointGroup::C, 1,
      [](const Params& q) -> StateOpt {
        if (!eq(q.f[0], q.beta * q.f[1])) return std::nullopt;
        const double s = q.b * q.f[1] / (q.c * q.p);
        return st({0.5 * s, 0.5 * s}, {0, q.f[1] / q.p});
      },
      [](Params& q, Rng&) { q.f[0] = q.beta * q.f[1]; }}));
  v.push_back(make_entry(net, {5, {1, 2}, {1, 2}, "f1 > beta*f2", FixedPointGroup::D, 0,
      [](const Params& q) -> StateOpt {
        if (!(q.f[0] > q.beta * q.f[1])) return std::nullopt;
        return st({q.b * (q.f[0] + (q.alpha - q.beta) * q.f[1]) / (q.c * q.p),
                   q.b * q.f[1] * (1 - q.alpha) / (q.c * q.p)},
                  {(q.f[0] - q.beta * q.f[1]) / q.p, q.f[1] / q.p});
      },
      [](Params& q, Rng& rng) { q.f[0] = q.beta * q.f[1] + uni(rng, 0.1, 2.0); }}));
  return v;
}

std::vector<CatalogEntry> sym2_entries() {
  std::vector<CatalogEntry> v;
  v.push_back(make_entry("sym2", {1, {1}, {2}, "", FixedPointGroup::A, 0,
      [](const Params& q) -> StateOpt {
        return st({q.b * q.f[0] / (q.c * q.p * q.beta), 0}, {0, q.f[0] / (q.p * q.beta)});
      }, nullptr}));
  return v;
}

std::vector<CatalogEntry> chain_branch3_entries() {
  std::vector<CatalogEntry> v;
  const std::string net = "chain_branch3";
  v.push_back(make_entry(net, {1, {2}, {2}, "", FixedPointGroup::D, 0,
      [](const Params& q) -> StateOpt {
        return st({0, q.b * q.f[1] / (q.c * q.p), 0}, {0, q.f[1] / q.p, 0});
      }, nullptr}));
  v.push_back(make_entry(net, {2, {2, 3}, {2, 3}, "f2 > beta*f3", FixedPointGroup::D, 0,
      [](const Params& q) -> StateOpt {
        if (!(q.f[1] > q.beta * q.f[2])) return std::nullopt;
        return st({0, q.b * (q.f[1] + (q.alpha - q.beta) * q.f[2]) / (q.c * q.p),
                   q.b * q.f[2] * (1 - q.alpha) / (q.c * q.p)},
                  {0, (q.f[1] - q.beta * q.f[2]) / q.p, q.f[2] / q.p});
      },
      [](Params& q, Rng& rng) { q.f[1] = q.beta * q.f[2] + uni(rng, 0.1, 2.0); }}));
  v.push_back(make_entry(net, {3, {1}, {2}, "", FixedPointGroup::A, 0,
      [](const Params& q) -> StateOpt {
        return st({q.b * q.f[0] / (q.c * q.p * q.beta), 0, 0},
                  {0, q.f[0] / (q.p * q.beta), 0});
      }, nullptr}));
  v.push_back(make_entry(net, {4, {1, 3}, {1, 3}, "", FixedPointGroup::D, 0,
      [](const Params& q) -> StateOpt {
        return st({q.b * q.f[0] / (q.c * q.p), 0, q.b * q.f[2] / (q.c * q.p)},
                  {q.f[0] / q.p, 0, q.f[2] / q.p});
      }, nullptr}));
  v.push_back(make_entry(net, {5, {1, 3}, {2, 3}, "", FixedPointGroup::A, 0,
      [](const Params& q) -> StateOpt {
        return st({q.b * q.f[0] / (q.c * q.p * q.beta), 0, q.b * q.f[2] / (q.c * q.p)},
                  {0, q.f[0] / (q.p * q.beta), q.f[2] / q.p});
      }, nullptr}));
  v.push_back(make_entry(net, {6, {1, 2}, {2}, "f1 = beta*f2", FixedPointGroup::C, 1,
      [](const Params& q) -> StateOpt {
        if (!eq(q.f[0], q.beta * q.f[1])) return std::nullopt;
        const double s = q.b * q.f[1] / (q.c * q.p);
        return st({0.5 * s, 0.5 * s, 0}, {0, q.f[1] / q.p, 0});
      },
      [](Params& q, Rng&) { q.f[0] = q.beta * q.f[1]; }}));
  v.push_back(make_entry(net, {7, {1, 2}, {1, 3}, "", FixedPointGroup::A, 0,
      [](const Params& q) -> StateOpt {
        return st({q.b * q.f[0] / (q.c * q.p), q.b * q.f[1] / (q.c * q.p * q.beta), 0},
                  {q.f[0] / q.p, 0, q.f[1] / (q.p * q.beta)});
      }, nullptr}));
  v.push_back(make_entry(net, {8, {1, 2}, {1, 2}, "f1 > beta*f2", FixedPointGroup::D, 0,
      [](const Params& q) -> StateOpt {
        if (!(q.f[0] > q.beta * q.f[1])) return std::nullopt;
        return st({q.b * (q.f[0] + (q.alpha - q.beta) * q.f[1]) / (q.c * q.p),
                   q.b * q.f[1] * (1 - q.alpha) / (q.c * q.p), 0},
                  {(q.f[0] - q.beta * q.f[1]) / q.p, q.f[1] / q.p, 0});
      },
      [](Params& q, Rng& rng) { q.f[0] = q.beta * q.f[1] + uni(rng, 0.1, 2.0); }}));
  v.push_back(make_entry(net, {9, {1, 2, 3}, {2, 3},
      "f1 = beta*(f2 - beta*f3), f2 > beta*f3", FixedPointGroup::C, 1,
      [](const Params& q) -> StateOpt {
        if (!(q.f[1] > q.beta * q.f[2])) return std::nullopt;
        if (!eq(q.f[0], q.beta * (q.f[1] - q.beta * q.f[2]))) return std::nullopt;
        const double r2 = (q.f[1] - q.beta * q.f[2]) / q.p;
        const double r3 = q.f[2] / q.p;
        return st({0.5 * q.b * r2 / q.c, 0.5 * q.b * (r2 + q.alpha * r3) / q.c,
                   0.5 * q.b * (2 - q.alpha) * r3 / q.c},
                  {0, r2, r3});
      },
      [](Params& q, Rng& rng) {
        q.f[1] = q.beta * q.f[2] + uni(rng, 0.1, 2.0);
        q.f[0] = q.beta * (q.f[1] - q.beta * q.f[2]);
      }}));
  v.push_back(make_entry(net, {10, {1, 2, 3}, {1, 3}, "f2 = beta*f3", FixedPointGroup::C, 1,
      [](const Params& q) -> StateOpt {
        if (!eq(q.f[1], q.beta * q.f[2])) return std::nullopt;
        const double s = q.b * q.f[2] / (q.c * q.p);
        return st({q.b * q.f[0] / (q.c * q.p), 0.5 * s, 0.5 * s},
                  {q.f[0] / q.p, 0, q.f[2] / q.p});
      },
      [](Params& q, Rng&) { q.f[1] = q.beta * q.f[2]; }}));
  v.push_back(make_entry(net, {11, {1, 2, 3}, {1, 2, 3},
      "f1 > beta*(f2 - beta*f3) > 0", FixedPointGroup::D, 0,
      [](const Params& q) -> StateOpt {
        const double g = q.f[1] - q.beta * q.f[2];
        if (!(g > 0) || !(q.f[0] > q.beta * g)) return std::nullopt;
        return st({q.b * (q.f[0] + (q.alpha - q.beta) * g) / (q.c * q.p),
                   q.b * (1 - q.alpha) * (q.f[1] + (q.alpha - q.beta) * q.f[2]) / (q.c * q.p),
                   q.b * q.f[2] * (1 - q.alpha * (1 - q.alpha)) / (q.c * q.p)},
                  {(q.f[0] - q.beta * q.f[1] + q.beta * q.beta * q.f[2]) / q.p,
                   g / q.p, q.f[2] / q.p});
      },
      [](Params& q, Rng& rng) {
        q.f[1] = q.beta * q.f[2] + uni(rng, 0.1, 2.0);
        q.f[0] = q.beta * (q.f[1] - q.beta * q.f[2]) + uni(rng, 0.1, 2.0);
      }}));
  return v;
}

std::vector<CatalogEntry> branch_cycle3_entries() {
  std::vector<CatalogEntry> v;
  const std::string net = "branch_cycle3";
  v.push_back(make_entry(net, {1, {3}, {2}, "", FixedPointGroup::A, 0,
      [](const Params& q) -> StateOpt {
        return st({0, 0, q.b * q.f[2] / (q.c * q.p * q.beta)},
                  {0, q.f[2] / (q.p * q.beta), 0});
      }, nullptr}));
  v.push_back(make_entry(net, {2, {2}, {2}, "", FixedPointGroup::D, 0,
      [](const Params& q) -> StateOpt {
        return st({0, q.b * q.f[1] / (q.c * q.p), 0}, {0, q.f[1] / q.p, 0});
      }, nullptr}));
  v.push_back(make_entry(net, {3, {2, 3}, {2, 3}, "f3 > beta*f2 > beta^2*f3",
      FixedPointGroup::D, 0,
      [](const Params& q) -> StateOpt {
        if (!(q.f[2] > q.beta * q.f[1]) || !(q.f[1] > q.beta * q.f[2])) return std::nullopt;
        const double den = q.p * (1 - q.beta * q.beta);
        const double r2 = (q.f[1] - q.beta * q.f[2]) / den;
        const double r3 = (q.f[2] - q.beta * q.f[1]) / den;
        const double y = q.b / (q.c * (1 + q.alpha));
        return st({0, y * (r2 + q.alpha * r3), y * (q.alpha * r2 + r3)}, {0, r2, r3});
      },
      [](Params& q, Rng& rng) {
        const double t = q.beta + (1.0 / q.beta - q.beta) * uni(rng, 0.1, 0.9);
        q.f[2] = q.f[1] * t;
      }}));
  v.push_back(make_entry(net, {4, {2, 3}, {2}, "f3 = beta*f2", FixedPointGroup::C, 1,
      [](const Params& q) -> StateOpt {
        if (!eq(q.f[2], q.beta * q.f[1])) return std::nullopt;
        const double s = q.b * q.f[1] / (q.c * q.p);
        return st({0, 0.5 * s, 0.5 * s}, {0, q.f[1] / q.p, 0});
      },
      [](Params& q, Rng&) { q.f[2] = q.beta * q.f[1]; }}));
  v.push_back(make_entry(net, {5, {1}, {2}, "", FixedPointGroup::A, 0,
      [](const Params& q) -> StateOpt {
        return st({q.b * q.f[0] / (q.c * q.p * q.beta), 0, 0},
                  {0, q.f[0] / (q.p * q.beta), 0});
      }, nullptr}));
  v.push_back(make_entry(net, {6, {1, 3}, {2}, "f3 = f1", FixedPointGroup::C, 1,
      [](const Params& q) -> StateOpt {
        if (!eq(q.f[2], q.f[0])) return std::nullopt;
        const double s = q.b * q.f[0] / (q.c * q.p * q.beta);
        return st({0.5 * s, 0, 0.5 * s}, {0, q.f[0] / (q.p * q.beta), 0});
      },
      [](Params& q, Rng&) { q.f[2] = q.f[0]; }}));
  v.push_back(make_entry(net, {7, {1, 3}, {2, 3}, "f3 > f1", FixedPointGroup::B, 0,
      [](const Params& q) -> StateOpt {
        if (!(q.f[2] > q.f[0])) return std::nullopt;
        return st({q.b * q.f[0] * (1 - q.alpha) / (q.c * q.p * q.beta), 0,
                   q.b * (q.f[2] - q.f[0] + q.alpha / q.beta * q.f[0]) / (q.c * q.p)},
                  {0, q.f[0] / (q.p * q.beta), (q.f[2] - q.f[0]) / q.p});
      },
      [](Params& q, Rng& rng) { q.f[2] = q.f[0] + uni(rng, 0.1, 2.0); }}));
  v.push_back(make_entry(net, {8, {1, 3}, {1, 2}, "f1 > f3", FixedPointGroup::B, 0,
      [](const Params& q) -> StateOpt {
        if (!(q.f[0] > q.f[2])) return std::nullopt;
        return st({q.b * (q.f[0] - q.f[2] + q.alpha / q.beta * q.f[2]) / (q.c * q.p), 0,
                   q.b * q.f[2] * (1 - q.alpha) / (q.c * q.p * q.beta)},
                  {(q.f[0] - q.f[2]) / q.p, q.f[2] / (q.p * q.beta), 0});
      },
      [](Params& q, Rng& rng) { q.f[0] = q.f[2] + uni(rng, 0.1, 2.0); }}));
  v.push_back(make_entry(net, {9, {1, 3}, {1, 3}, "", FixedPointGroup::D, 0,
      [](const Params& q) -> StateOpt {
        return st({q.b * q.f[0] / (q.c * q.p), 0, q.b * q.f[2] / (q.c * q.p)},
                  {q.f[0] / q.p, 0, q.f[2] / q.p});
      }, nullptr}));
  v.push_back(make_entry(net, {10, {1, 2}, {2}, "f1 = beta*f2", FixedPointGroup::C, 1,
      [](const Params& q) -> StateOpt {
        if (!eq(q.f[0], q.beta * q.f[1])) return std::nullopt;
        const double s = q.b * q.f[1] / (q.c * q.p);
        return st({0.5 * s, 0.5 * s, 0}, {0, q.f[1] / q.p, 0});
      },
      [](Params& q, Rng&) { q.f[0] = q.beta * q.f[1]; }}));
  v.push_back(make_entry(net, {11, {1, 2}, {1, 2}, "f1 > beta*f2", FixedPointGroup::D, 0,
      [](const Params& q) -> StateOpt {
        if (!(q.f[0] > q.beta * q.f[1])) return std::nullopt;
        return st({q.b * (q.f[0] + (q.alpha - q.beta) * q.f[1]) / (q.c * q.p),
                   q.b * q.f[1] * (1 - q.alpha) / (q.c * q.p), 0},
                  {(q.f[0] - q.beta * q.f[1]) / q.p, q.f[1] / q.p, 0});
      },
      [](Params& q, Rng& rng) { q.f[0] = q.beta * q.f[1] + uni(rng, 0.1, 2.0); }}));
  v.push_back(make_entry(net, {12, {1, 2}, {1, 3}, "", FixedPointGroup::A, 0,
      [](const Params& q) -> StateOpt {
        return st({q.b * q.f[0] / (q.c * q.p), q.b * q.f[1] / (q.c * q.p * q.beta), 0},
                  {q.f[0] / q.p, 0, q.f[1] / (q.p * q.beta)});
      }, nullptr}));
  v.push_back(make_entry(net, {13, {1, 2, 3}, {2}, "f1 = f3 = beta*f2",
      FixedPointGroup::C, 2,
      [](const Params& q) -> StateOpt {
        if (!eq(q.f[0], q.beta * q.f[1]) || !eq(q.f[2], q.beta * q.f[1])) return std::nullopt;
        // Two-dimensional family; the stored representative is the
        // minimum-norm stimulation-weight point, matching the solver.
        const double s = q.b * q.f[1] / (q.c * q.p);
        const double a2 = q.alpha * q.alpha;
        const double w = s / (1 + 2 * a2);
        return st({a2 * w, w, a2 * w}, {0, q.f[1] / q.p, 0});
      },
      [](Params& q, Rng&) {
        q.f[0] = q.beta * q.f[1];
        q.f[2] = q.beta * q.f[1];
      }}));
  v.push_back(make_entry(net, {14, {1, 2, 3}, {2, 3},
      "(1 - beta^2)*f1 = beta*(f2 - beta*f3), f2 > beta*f3, f3 > beta*f2",
      FixedPointGroup::C, 1,
      [](const Params& q) -> StateOpt {
        if (!(q.f[1] > q.beta * q.f[2]) || !(q.f[2] > q.beta * q.f[1])) return std::nullopt;
        const double b2 = 1 - q.beta * q.beta;
        if (!eq(b2 * q.f[0], q.beta * (q.f[1] - q.beta * q.f[2]))) return std::nullopt;
        const double r2 = (q.f[1] - q.beta * q.f[2]) / (q.p * b2);
        const double r3 = (q.f[2] - q.beta * q.f[1]) / (q.p * b2);
        return st({0.5 * q.b * (1 - q.alpha) * r2 / q.c,
                   0.5 * q.b * (r2 + q.alpha * r3) / (q.c * (1 + q.alpha)),
                   0.5 * q.b * (2 + q.alpha) * (q.alpha * r2 + r3) / (q.c * (1 + q.alpha))},
                  {0, r2, r3});
      },
      [](Params& q, Rng& rng) {
        const double t = q.beta + (1.0 / q.beta - q.beta) * uni(rng, 0.1, 0.9);
        q.f[2] = q.f[1] * t;
        q.f[0] = q.beta * (q.f[1] - q.beta * q.f[2]) / (1 - q.beta * q.beta);
      }}));
  v.push_back(make_entry(net, {15, {1, 2, 3}, {1, 3}, "f2 = beta*f3",
      FixedPointGroup::C, 1,
      [](const Params& q) -> StateOpt {
        if (!eq(q.f[1], q.beta * q.f[2])) return std::nullopt;
        const double s = q.b * q.f[2] / (q.c * q.p);
        return st({q.b * q.f[0] / (q.c * q.p), 0.5 * s, 0.5 * s},
                  {q.f[0] / q.p, 0, q.f[2] / q.p});
      },
      [](Params& q, Rng&) { q.f[1] = q.beta * q.f[2]; }}));
  v.push_back(make_entry(net, {16, {1, 2, 3}, {1, 2}, "f3 = beta*f2, f1 > beta*f2",
      FixedPointGroup::C, 1,
      [](const Params& q) -> StateOpt {
        if (!eq(q.f[2], q.beta * q.f[1]) || !(q.f[0] > q.beta * q.f[1])) return std::nullopt;
        const double s = 0.5 * q.b * q.f[1] * (1 - q.alpha) / (q.c * q.p);
        return st({q.b * (q.f[0] + (q.alpha - q.beta) * q.f[1]) / (q.c * q.p), s, s},
                  {(q.f[0] - q.beta * q.f[1]) / q.p, q.f[1] / q.p, 0});
      },
      [](Params& q, Rng& rng) {
        q.f[2] = q.beta * q.f[1];
        q.f[0] = q.beta * q.f[1] + uni(rng, 0.1, 2.0);
      }}));
  v.push_back(make_entry(net, {17, {1, 2, 3}, {1, 2, 3},
      "(1 - beta^2)*f1 > beta*(f2 - beta*f3) > 0, f3 > beta*f2, alpha < 1/2",
      FixedPointGroup::D, 0,
      [](const Params& q) -> StateOpt {
        if (!(q.f[1] > q.beta * q.f[2]) || !(q.f[2] > q.beta * q.f[1])) return std::nullopt;
        const double b2 = 1 - q.beta * q.beta;
        const double r2 = (q.f[1] - q.beta * q.f[2]) / (q.p * b2);
        const double r3 = (q.f[2] - q.beta * q.f[1]) / (q.p * b2);
        const double r1 = q.f[0] / q.p - q.beta * r2;
        if (!(r1 > 0)) return std::nullopt;
        const double a2 = 1 - q.alpha * q.alpha;
        return st({q.b * (r1 + q.alpha * r2) / q.c,
                   q.b * (1 - 2 * q.alpha) * (r2 + q.alpha * r3) / (q.c * a2),
                   q.b * (1 - q.alpha + q.alpha * q.alpha) * (q.alpha * r2 + r3) / (q.c * a2)},
                  {r1, r2, r3});
      },
      [](Params& q, Rng& rng) {
        q.alpha = uni(rng, 0.15, 0.45);
        q.beta = q.alpha * uni(rng, 0.25, 0.9);
        const double t = q.beta + (1.0 / q.beta - q.beta) * uni(rng, 0.1, 0.9);
        q.f[2] = q.f[1] * t;
        q.f[0] = q.beta * (q.f[1] - q.beta * q.f[2]) / (1 - q.beta * q.beta) + uni(rng, 0.1, 2.0);
      }}));
  return v;
}

std::vector<CatalogEntry> cycle3_entries() {
  std::vector<CatalogEntry> v;
  const std::string net = "cycle3";
  v.push_back(make_entry(net, {1, {2, 3}, {2, 3}, "f2 > beta*f3", FixedPointGroup::D, 0,
      [](const Params& q) -> StateOpt {
        if (!(q.f[1] > q.beta * q.f[2])) return std::nullopt;
        return st({0, q.b * (q.f[1] + (q.alpha - q.beta) * q.f[2]) / (q.c * q.p),
                   q.b * q.f[2] * (1 - q.alpha) / (q.c * q.p)},
                  {0, (q.f[1] - q.beta * q.f[2]) / q.p, q.f[2] / q.p});
      },
      [](Params& q, Rng& rng) { q.f[1] = q.beta * q.f[2] + uni(rng, 0.1, 2.0); }}));
  v.push_back(make_entry(net, {2, {2, 3}, {1, 2}, "", FixedPointGroup::A, 0,
      [](const Params& q) -> StateOpt {
        return st({0, q.b * q.f[1] / (q.c * q.p), q.b * q.f[2] / (q.c * q.p * q.beta)},
                  {q.f[2] / (q.p * q.beta), q.f[1] / q.p, 0});
      }, nullptr}));
  v.push_back(make_entry(net, {3, {1, 3}, {2, 3}, "", FixedPointGroup::A, 0,
      [](const Params& q) -> StateOpt {
        return st({q.b * q.f[0] / (q.c * q.p * q.beta), 0, q.b * q.f[2] / (q.c * q.p)},
                  {0, q.f[0] / (q.p * q.beta), q.f[2] / q.p});
      }, nullptr}));
  v.push_back(make_entry(net, {4, {1, 3}, {1, 3}, "f3 > beta*f1", FixedPointGroup::D, 0,
      [](const Params& q) -> StateOpt {
        if (!(q.f[2] > q.beta * q.f[0])) return std::nullopt;
        return st({q.b * q.f[0] * (1 - q.alpha) / (q.c * q.p), 0,
                   q.b * (q.f[2] + (q.alpha - q.beta) * q.f[0]) / (q.c * q.p)},
                  {q.f[0] / q.p, 0, (q.f[2] - q.beta * q.f[0]) / q.p});
      },
      [](Params& q, Rng& rng) { q.f[2] = q.beta * q.f[0] + uni(rng, 0.1, 2.0); }}));
  v.push_back(make_entry(net, {5, {1, 2}, {1, 3}, "", FixedPointGroup::A, 0,
      [](const Params& q) -> StateOpt {
        return st({q.b * q.f[0] / (q.c * q.p), q.b * q.f[1] / (q.c * q.p * q.beta), 0},
                  {q.f[0] / q.p, 0, q.f[1] / (q.p * q.beta)});
      }, nullptr}));
  v.push_back(make_entry(net, {6, {1, 2}, {1, 2}, "f1 > beta*f2", FixedPointGroup::D, 0,
      [](const Params& q) -> StateOpt {
        if (!(q.f[0] > q.beta * q.f[1])) return std::nullopt;
        return st({q.b * (q.f[0] + (q.alpha - q.beta) * q.f[1]) / (q.c * q.p),
                   q.b * q.f[1] * (1 - q.alpha) / (q.c * q.p), 0},
                  {(q.f[0] - q.beta * q.f[1]) / q.p, q.f[1] / q.p, 0});
      },
      [](Params& q, Rng& rng) { q.f[0] = q.beta * q.f[1] + uni(rng, 0.1, 2.0); }}));
  v.push_back(make_entry(net, {7, {1, 2, 3}, {2, 3}, "f2 = f1/beta + beta*f3",
      FixedPointGroup::C, 1,
      [](const Params& q) -> StateOpt {
        if (!eq(q.f[1], q.f[0] / q.beta + q.beta * q.f[2])) return std::nullopt;
        const double r2 = q.f[0] / (q.p * q.beta);
        const double r3 = q.f[2] / q.p;
        return st({0.5 * q.b * r2 / q.c, 0.5 * q.b * (r2 + q.alpha * r3) / q.c,
                   0.5 * q.b * (2 - q.alpha) * r3 / q.c},
                  {0, r2, r3});
      },
      [](Params& q, Rng&) { q.f[1] = q.f[0] / q.beta + q.beta * q.f[2]; }}));
  v.push_back(make_entry(net, {8, {1, 2, 3}, {1, 3}, "f3 = beta*f1 + f2/beta",
      FixedPointGroup::C, 1,
      [](const Params& q) -> StateOpt {
        if (!eq(q.f[2], q.beta * q.f[0] + q.f[1] / q.beta)) return std::nullopt;
        const double r1 = q.f[0] / q.p;
        const double r3 = q.f[1] / (q.p * q.beta);
        return st({0.5 * q.b * (2 - q.alpha) * r1 / q.c, 0.5 * q.b * r3 / q.c,
                   0.5 * q.b * (r3 + q.alpha * r1) / q.c},
                  {r1, 0, r3});
      },
      [](Params& q, Rng&) { q.f[2] = q.beta * q.f[0] + q.f[1] / q.beta; }}));
  v.push_back(make_entry(net, {9, {1, 2, 3}, {1, 2}, "f1 = beta*f2 + f3/beta",
      FixedPointGroup::C, 1,
      [](const Params& q) -> StateOpt {
        if (!eq(q.f[0], q.beta * q.f[1] + q.f[2] / q.beta)) return std::nullopt;
        const double r1 = q.f[2] / (q.p * q.beta);
        const double r2 = q.f[1] / q.p;
        return st({0.5 * q.b * (r1 + q.alpha * r2) / q.c,
                   0.5 * q.b * (2 - q.alpha) * r2 / q.c, 0.5 * q.b * r1 / q.c},
                  {r1, r2, 0});
      },
      [](Params& q, Rng&) { q.f[0] = q.beta * q.f[1] + q.f[2] / q.beta; }}));
  v.push_back(make_entry(net, {10, {1, 2, 3}, {1, 2, 3},
      "f1 - beta*f2 + beta^2*f3 > 0 (cyclically for all three)",
      FixedPointGroup::D, 0,
      [](const Params& q) -> StateOpt {
        const double den = q.p * (1 + q.beta * q.beta * q.beta);
        const double r1 = (q.f[0] - q.beta * q.f[1] + q.beta * q.beta * q.f[2]) / den;
        const double r2 = (q.f[1] - q.beta * q.f[2] + q.beta * q.beta * q.f[0]) / den;
        const double r3 = (q.f[2] - q.beta * q.f[0] + q.beta * q.beta * q.f[1]) / den;
        if (!(r1 > 0) || !(r2 > 0) || !(r3 > 0)) return std::nullopt;
        const double y = q.b / (q.c * (1 + q.alpha));
        return st({y * (r1 + q.alpha * r2), y * (r2 + q.alpha * r3), y * (r3 + q.alpha * r1)},
                  {r1, r2, r3});
      },
      [](Params& q, Rng& rng) {
        const double base = uni(rng, 0.5, 3.0);
        for (int i = 0; i < 3; ++i) q.f[i] = base * uni(rng, 0.9, 1.1);
      }}));
  return v;
}

std::vector<CatalogEntry> t_shape4_entries() {
  std::vector<CatalogEntry> v;
  v.push_back(make_entry("t_shape4", {1, {2, 3, 4}, {1, 3, 4},
      "f2 < f3, f2 < f4, alpha < 1/2", FixedPointGroup::B, 0,
      [](const Params& q) -> StateOpt {
        if (!(q.f[1] < q.f[2]) || !(q.f[1] < q.f[3])) return std::nullopt;
        if (!(q.alpha < 0.5)) return std::nullopt;
        const double ab = q.alpha / q.beta;
        return st({0, q.b * q.f[1] * (1 - 2 * q.alpha) / (q.c * q.p * q.beta),
                   q.b * (ab * q.f[1] + q.f[2] - q.f[1]) / (q.c * q.p),
                   q.b * (ab * q.f[1] + q.f[3] - q.f[1]) / (q.c * q.p)},
                  {q.f[1] / (q.p * q.beta), 0, (q.f[2] - q.f[1]) / q.p,
                   (q.f[3] - q.f[1]) / q.p});
      },
      [](Params& q, Rng& rng) {
        q.alpha = uni(rng, 0.15, 0.45);
        q.beta = q.alpha * uni(rng, 0.25, 0.9);
        q.f[2] = q.f[1] + uni(rng, 0.1, 2.0);
        q.f[3] = q.f[1] + uni(rng, 0.1, 2.0);
      }}));
  return v;
}

std::vector<CatalogEntry> composed5_entries() {
  std::vector<CatalogEntry> v;
  v.push_back(make_entry("composed5", {1, {1, 3, 5}, {1, 2, 4},
      "f1 > f3 + f5", FixedPointGroup::B, 0,
      [](const Params& q) -> StateOpt {
        if (!(q.f[0] > q.f[2] + q.f[4])) return std::nullopt;
        const double ab = q.alpha / q.beta;
        return st({q.b * (q.f[0] - q.f[2] - q.f[4] + ab * (q.f[2] + q.f[4])) / (q.c * q.p),
                   0, q.b * q.f[2] * (1 - q.alpha) / (q.c * q.p * q.beta), 0,
                   q.b * q.f[4] * (1 - q.alpha) / (q.c * q.p * q.beta)},
                  {(q.f[0] - q.f[2] - q.f[4]) / q.p, q.f[2] / (q.p * q.beta), 0,
                   q.f[4] / (q.p * q.beta), 0});
      },
      [](Params& q, Rng& rng) { q.f[0] = q.f[2] + q.f[4] + uni(rng, 0.1, 2.0); }}));
  return v;
}

std::map<std::string, std::vector<CatalogEntry>> build_catalog() {
  std::map<std::string, std::vector<CatalogEntry>> catalog;
  catalog["asym2"] = asym2_entries();
  catalog["sym2"] = sym2_entries();
  catalog["chain_branch3"] = chain_branch3_entries();
  catalog["branch_cycle3"] = branch_cycle3_entries();
  catalog["cycle3"] = cycle3_entries();
  catalog["t_shape4"] = t_shape4_entries();
  catalog["composed5"] = composed5_entries();
  return catalog;
}

const std::map<std::string, std::vector<CatalogEntry>>& catalog_map() {
  static const auto catalog = build_catalog();
  return catalog;
}

}  // namespace

const std::vector<std::string>& catalog_network_names() {
  static const std::vector<std::string> names = {
      "asym2", "sym2", "chain_branch3", "branch_cycle3",
      "cycle3", "t_shape4", "composed5"};
  return names;
}

CRNetwork get_network(const std::string& name) {
  if (name == "asym2") return CRNetwork::from_edges_1based(2, {{1, 2}});
  if (name == "sym2") return CRNetwork::from_edges_1based(2, {{1, 2}, {2, 1}});
  if (name == "chain_branch3") return CRNetwork::from_edges_1based(3, {{1, 2}, {2, 3}});
  if (name == "branch_cycle3")
    return CRNetwork::from_edges_1based(3, {{1, 2}, {2, 3}, {3, 2}});
  if (name == "cycle3") return CRNetwork::from_edges_1based(3, {{1, 2}, {2, 3}, {3, 1}});
  if (name == "t_shape4")
    return CRNetwork::from_edges_1based(4, {{2, 1}, {3, 1}, {4, 1}});
  if (name == "composed5")
    return CRNetwork::from_edges_1based(5, {{1, 2}, {2, 3}, {3, 2}, {1, 4}, {5, 4}, {4, 5}});
  throw std::invalid_argument("get_network: unknown network name '" + name + "'");
}

CRNetwork compose_mirror(const CRNetwork& base, int pivot) {
  const int n = base.size();
  if (pivot < 0 || pivot >= n)
    throw std::invalid_argument("compose_mirror: pivot out of range");
  std::vector<int> mirror(n);
  int next = n;
  for (int i = 0; i < n; ++i) mirror[i] = (i == pivot) ? pivot : next++;
  std::vector<std::pair<int, int>> edges = base.edges();
  for (const auto& [from, to] : base.edges())
    edges.emplace_back(mirror[from], mirror[to]);
  return CRNetwork(2 * n - 1, std::move(edges));
}

const std::vector<CatalogEntry>& catalog_entries(const std::string& name) {
  const auto& catalog = catalog_map();
  auto it = catalog.find(name);
  if (it == catalog.end())
    throw std::invalid_argument("catalog_entries: unknown network name '" + name + "'");
  return it->second;
}

const std::vector<CatalogEntry>& all_catalog_entries() {
  static const std::vector<CatalogEntry> all = [] {
    std::vector<CatalogEntry> out;
    for (const auto& name : catalog_network_names())
      for (const auto& entry : catalog_entries(name)) out.push_back(entry);
    return out;
  }();
  return all;
}

std::vector<FixedPointSolution> evaluate_catalog(const std::string& name,
                                                 const ModelParameters& params) {
  const CRNetwork network = get_network(name);
  params.validate(network.size());
  const CRNSystem system(network, params);

  std::vector<FixedPointSolution> out;
  for (const auto& entry : catalog_entries(name)) {
    auto state = entry.evaluate(params);
    if (!state) continue;
    FixedPointSolution sol;
    sol.state = std::move(*state);
    sol.support = entry.support;
    sol.roles = classify_roles(sol.state);
    sol.group = entry.group;
    sol.residual = system.rhs_sup_norm(sol.state);
    sol.delta = stimulation_deltas(sol.state, network, params.alpha);
    if (!(sol.residual < 1e-10))
      throw std::logic_error("catalog entry " + name + "/" + std::to_string(entry.index) +
                             " failed rhs re-verification, residual " +
                             std::to_string(sol.residual));
    out.push_back(std::move(sol));
  }
  return out;
}

ModelParameters sample_entry_params(const CatalogEntry& entry, std::mt19937_64& rng) {
  const CRNetwork network = get_network(entry.network);
  const int n = network.size();
  for (int attempt = 0; attempt < 500; ++attempt) {
    ModelParameters params;
    params.f.resize(n);
    for (int i = 0; i < n; ++i) params.f[i] = uni(rng, 0.25, 3.0);
    params.p = uni(rng, 0.5, 2.0);
    params.c = uni(rng, 0.5, 2.0);
    params.b = uni(rng, 0.5, 2.0);
    params.alpha = uni(rng, 0.15, 0.92);
    params.beta = params.alpha * uni(rng, 0.3, 0.92);
    if (entry.adjust) entry.adjust(params, rng);
    if (!params.valid(n)) continue;
    if (entry.evaluate(params)) return params;
  }
  throw std::runtime_error("sample_entry_params: no valid draw for " + entry.network +
                           "/" + std::to_string(entry.index));
}

}  // namespace crnli
