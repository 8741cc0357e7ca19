#include "doctest.h"
#include "infext/vladimirov.hpp"

#include <random>

using namespace infext;

namespace {

CylFunction random_function(const SpacePtr& S, std::mt19937_64& rng) {
  std::normal_distribution<double> N;
  CylFunction f = CylFunction::constant(S, 0.0);
  for (auto& v : f.values) v = {N(rng), N(rng)};
  return f;
}

double dev(const CylFunction& a, const CylFunction& b) {
  double d = 0;
  for (size_t i = 0; i < a.values.size(); ++i) d = std::max(d, std::abs(a.values[i] - b.values[i]));
  return d;
}

FieldPtr q2() { return TowerField::realize(build_unramified_tower(2, {1})); }

}  // namespace

TEST_CASE("spectral definition") {
  auto F = q2();
  auto S = CylinderSpace::make(F, 1, 4);
  CHECK(apply_spectral(1.0, CylFunction::constant(S, 3.0)).sup_norm() < 1e-12);
  // a = 1/2: ||a|| = 2.
  std::uint64_t a = S->locate_dual(ExtElement::from_rational(F, 1, mpq_class(1, 2)));
  auto phi = CylFunction::character(S, a);
  auto out = apply_spectral(2.0, phi);
  for (size_t z = 0; z < out.values.size(); ++z) CHECK(std::abs(out.values[z] - 4.0 * phi.values[z]) < 1e-12);
  // Matrix application of the same operator.
  auto M = operator_matrix(2.0, S);
  const std::uint64_t n = S->size();
  for (std::uint64_t z = 0; z < n; ++z) {
    Complex acc = 0;
    for (std::uint64_t w = 0; w < n; ++w) acc += M[z * n + w] * phi.values[w];
    CHECK(std::abs(acc - 4.0 * phi.values[z]) < 1e-12);
  }
  std::mt19937_64 rng(1);
  auto f = random_function(S, rng);
  MultiplierSpec A{0.7}, B{1.6}, AB{2.3};
  auto twice = apply_multiplier(apply_spectral(0.7, f), [&](std::uint64_t xi) { return B.on_coset(*S, xi); });
  CHECK(dev(twice, apply_spectral(2.3, f)) < 1e-10);
  CHECK(A(0.5) == 0.0);
  CHECK(AB(2.0) == doctest::Approx(std::pow(2.0, 2.3)));
}

TEST_CASE("hypersingular form") {
  auto F = q2();
  auto S = CylinderSpace::make(F, 1, 5);
  CHECK(apply_hypersingular(1.0, CylFunction::constant(S, 1.0)).sup_norm() < 1e-13);
  auto ind = CylFunction::ball_indicator(S, 1);
  CHECK(dev(apply_hypersingular(1.0, ind), apply_spectral(1.0, ind)) < 1e-10);

  std::mt19937_64 rng(2);
  TowerSpec s2;
  s2.p = 2;
  s2.steps.push_back(StepSpec::eisenstein({{-2}, {0}, {1}}));
  for (const Tower& T : {build_unramified_tower(3, {1, 2}), Tower(s2), build_cyclotomic_tower(3, 3)}) {
    auto G = TowerField::realize(T);
    auto Sp = CylinderSpace::make(G, T.depth(), 2);
    for (double alpha : {0.5, 1.0, 2.0}) {
      auto f = random_function(Sp, rng);
      CHECK(dev(apply_hypersingular(alpha, f), apply_spectral(alpha, f)) < 1e-9 * f.sup_norm());
    }
    for (std::uint64_t a = 1; a < Sp->dual().size(); a += 3) {
      auto phi = CylFunction::character(Sp, a);
      double lam = std::pow(Sp->dual_norm(a), 1.5);
      auto out = apply_hypersingular(1.5, phi);
      for (size_t z = 0; z < phi.values.size(); ++z) CHECK(std::abs(out.values[z] - lam * phi.values[z]) < 1e-10 * lam);
    }
  }
}

TEST_CASE("eigencheck") {
  auto F = q2();
  auto zero = eigencheck(ExtElement::from_integer(F, 1, 0), 1.0);
  CHECK(zero.measured == 0.0);
  CHECK(zero.expected == 0.0);
  auto half = eigencheck(ExtElement::from_rational(F, 1, mpq_class(1, 2)), 1.0);
  CHECK(half.measured == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(half.expected == 2.0);
  auto unit = eigencheck(ExtElement::from_integer(F, 1, 3), 1.0);
  CHECK(std::abs(unit.measured) < 1e-15);

  auto U = TowerField::realize(build_unramified_tower(2, {1, 2}));
  auto r = eigencheck(ExtElement::from_coordinates(U, 2, -2, {1, 1}, 30), 1.0);
  CHECK(r.expected == doctest::Approx(4.0));
  CHECK(std::abs(r.measured - r.expected) < 1e-10 * r.expected);
}

TEST_CASE("rho") {
  CHECK(rho(1.0, 3.0, 2.0) == 1.0);
  CHECK(rho(0.25, 3.0, 2.0) == 1.0);
  CHECK(rho(2.0, 1.0, 1.0) == doctest::Approx(std::exp(-2.0)));
  double prev = 1.0;
  for (double t = 0.1; t < 3; t += 0.3) {
    CHECK(rho(4.0, t, 0.5) <= prev);
    prev = rho(4.0, t, 0.5);
  }
}

TEST_CASE("heat kernel") {
  for (const Tower& T : {build_unramified_tower(2, {1, 2}), build_cyclotomic_tower(3, 3)}) {
    const int n = T.depth();
    for (double t : {0.3, 1.0})
      for (double a : {0.5, 1.0, 2.0}) {
        ShellSeries mass = heat_kernel_mass(T, n, t, a);
        CHECK(std::abs(mass.total() - 1.0) < 1e-12 + mass.error_bound());
        for (int w = -T.level(n).d - 2; w < 6; ++w) CHECK(heat_kernel_series(T, n, w, t, a).total() >= -1e-15);
      }
  }
  // Gamma integrated over the ball w >= 1 gives the heat measure of that ball; Q_2 closed form (1 + e^{-2}) / 2.
  Tower Q = build_unramified_tower(2, {1});
  double s = 0;
  for (int w = 1; w < 80; ++w) s += heat_kernel_series(Q, 1, w, 1.0, 1.0).total() * std::ldexp(1.0, -w - 1);
  CHECK(s == doctest::Approx(0.5 * (1 + std::exp(-2.0))).epsilon(1e-12));
}

TEST_CASE("semigroup") {
  auto F = q2();
  auto S = CylinderSpace::make(F, 1, 4);
  std::mt19937_64 rng(3);
  auto f = random_function(S, rng);
  CHECK(dev(semigroup_apply(0.4, 1.0, semigroup_apply(0.7, 1.0, f)), semigroup_apply(1.1, 1.0, f)) < 1e-10);
  CHECK(dev(semigroup_apply(1e-8, 1.0, f), f) < 1e-6);
  std::uint64_t a = S->locate_dual(ExtElement::from_rational(F, 1, mpq_class(1, 2)));
  auto phi = CylFunction::character(S, a);
  auto out = semigroup_apply(0.5, 1.5, phi);
  const double lam = std::exp(-0.5 * std::pow(2.0, 1.5));
  for (size_t z = 0; z < phi.values.size(); ++z) CHECK(std::abs(out.values[z] - lam * phi.values[z]) < 1e-12);
  for (std::uint64_t z0 = 0; z0 < S->size(); ++z0) {
    auto g = semigroup_apply(0.8, 1.0, CylFunction::indicator(S, z0));
    for (const auto& v : g.values) CHECK(v.real() >= -1e-12);
  }
}
