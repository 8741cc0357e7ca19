#include "doctest.h"
#include "infext/measures.hpp"

#include <random>

using namespace infext;

namespace {

Tower factorial_tower() { return build_unramified_tower(2, {1, 2, 6, 24}); }

}  // namespace

TEST_CASE("Gaussian measure of M_n") {
  Tower Q = build_unramified_tower(2, {1});
  CHECK(mu_cylinder(Q, 1, 1) == mpq_class(1, 2));
  Tower U = factorial_tower();
  CHECK(mu_cylinder(U, 2, 1) == mpq_class(1, 4));
  CHECK(mu_cylinder(U, 3, 1) == mpq_class(1, 64));
  CHECK(mu_cylinder(U, 3, 2) == mpq_class(1, 4096));
  Tower C = build_cyclotomic_tower(2, 4);
  for (int n = 1; n <= 4; ++n) CHECK(mu_cylinder(C, n, 1) == mpq_class(mpz_class(1), mpz_class(1) << C.level(n).m));
}

TEST_CASE("heat measure of M_n") {
  Tower Q = build_unramified_tower(2, {1});
  CHECK(std::abs(heat_cylinder(Q, 1, 1, 1.0, 1.0) - 0.5 * (1 + std::exp(-2.0))) < 1e-14);
  CHECK(std::abs(heat_cylinder_gamma(Q, 1, 1, 1.0, 1.0).total() - heat_cylinder(Q, 1, 1, 1.0, 1.0)) < 1e-10);
  Tower U = factorial_tower();
  for (int n = 1; n <= 4; ++n)
    for (double t : {0.2, 1.0, 3.0})
      for (double a : {0.5, 1.0, 2.0})
        for (int N : {1, 2}) CHECK(heat_cylinder(U, n, N, t, a) >= heat_lower_bound(U, N, t, a));
  // Large t keeps only the unit-ball term q_n^{-N e_n}.
  CHECK(heat_cylinder(U, 3, 1, 200.0, 1.0) == doctest::Approx(1.0 / 64));

  // Third route: coset masses of the heat measure on a fine quotient.
  auto F = TowerField::realize(Q);
  auto S = CylinderSpace::make(F, 1, 8);
  auto mass = heat_coset_masses(*S, 1.0, 1.0);
  double total = 0, ball = 0;
  for (std::uint64_t z = 0; z < mass.size(); ++z) {
    CHECK(mass[z] >= -1e-15);
    total += mass[z];
    if (S->group().valuation(z) >= 1) ball += mass[z];
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ball == doctest::Approx(heat_cylinder(Q, 1, 1, 1.0, 1.0)).epsilon(1e-12));
}

TEST_CASE("singularity report") {
  Tower U = factorial_tower();
  MeasureReport r3 = theorem3_report(U, 1, 1.0, 1.0, 3);
  REQUIRE(r3.rows.size() == 3);
  CHECK(r3.rows[0].mu == mpq_class(1, 2));
  CHECK(r3.rows[1].mu == mpq_class(1, 4));
  CHECK(r3.rows[2].mu == mpq_class(1, 64));
  for (const auto& r : r3.rows) {
    CHECK(r.pi >= 0.0676);
    CHECK(r.lower_bound == doctest::Approx(0.5 * std::exp(-2.0)));
  }
  CHECK(r3.rows[2].log10_ratio > std::log10(4.0));
  CHECK(r3.ratio_increasing);

  CHECK(theorem3_report(U, 1, 1.0, 1.0, 1).flag == "indeterminate");
  for (double a : {0.5, 1.0}) {
    MeasureReport r = theorem3_report(U, 1, 1.0, a, 4);
    CHECK(r.flag == "pass");
    CHECK(r.rows[0].lower_bound == doctest::Approx(0.5 * std::exp(-std::pow(2.0, a))));
  }
  // For alpha = 2 the bound is e^{-4}/2, so the 10^6 witness needs level 5.
  CHECK(theorem3_report(U, 1, 1.0, 2.0, 4).flag == "fail");
  CHECK(theorem3_report(U, 1, 1.0, 2.0, 4).ratio_increasing);
  CHECK(theorem3_report(build_unramified_tower(2, {1, 2, 6, 24, 120}), 1, 1.0, 2.0, 5).flag == "pass");
  CHECK(log10_rational(mpq_class(1, 1000)) == doctest::Approx(-3.0));
}

TEST_CASE("Levy measure on cylinder sets") {
  Tower Q = build_unramified_tower(2, {1});
  auto F = TowerField::realize(Q);
  auto S = CylinderSpace::make(F, 1, 4);
  CHECK(levy_cylinder(1.0, CylFunction::constant(S, 0.0)) == 0.0);

  // The unit shell {|x| = 1}.
  CylFunction shell = CylFunction::constant(S, 0.0);
  for (std::uint64_t z = 0; z < S->size(); ++z) shell.values[z] = S->group().valuation(z) == 0 ? 1.0 : 0.0;
  double a = levy_cylinder(1.0, shell), b = levy_cylinder_fourier(1.0, shell);
  CHECK(a > 0);
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
  CHECK(a == doctest::Approx(levy_total_outside(Q, 1, 1.0, 1.0).total()).epsilon(1e-12));
  CHECK_THROWS_AS(levy_cylinder(1.0, CylFunction::constant(S, 1.0)), DomainError);

  // Additivity: the shell |x| = 1/2 is V_{1/2} minus V_1.
  CylFunction shell1 = CylFunction::constant(S, 0.0);
  for (std::uint64_t z = 0; z < S->size(); ++z) shell1.values[z] = S->group().valuation(z) == 1 ? 1.0 : 0.0;
  const double diff = levy_total_outside(Q, 1, 0.5, 1.3).total() - levy_total_outside(Q, 1, 1.0, 1.3).total();
  CHECK(levy_cylinder(1.3, shell1) == doctest::Approx(diff).epsilon(1e-12));
  CHECK(levy_total_outside(Q, 1, 0.5, 1.0).total() > levy_total_outside(Q, 1, 1.0, 1.0).total());

  // Pi(t, .) = t Pi(.)
  CylinderSet set;
  set.kind = CylinderSet::Kind::indicator;
  set.indicator = shell;
  CHECK(evaluate(Q, set, MeasureKind::levy, 2.5, 1.0) == doctest::Approx(2.5 * a));
  set.kind = CylinderSet::Kind::ball;
  CHECK(evaluate(Q, set, MeasureKind::gaussian, 1.0, 1.0) == 0.5);
  CHECK_THROWS_AS(evaluate(Q, set, MeasureKind::levy, 1.0, 1.0), DomainError);
}

TEST_CASE("Levy-Khinchin exponent") {
  Tower Q = build_unramified_tower(2, {1});
  auto F = TowerField::realize(Q);
  for (long c : {1L, 2L, 5L}) {
    auto r = levy_khinchin_check(ExtElement::from_integer(F, 1, c), 1.0, 1.0);
    CHECK(r.lhs == 0.0);
    CHECK(r.rhs == 0.0);
  }
  auto lam = ExtElement::from_rational(F, 1, mpq_class(1, 2));
  auto r = levy_khinchin_check(lam, 1.0, 1.0);
  CHECK(std::abs(r.lhs + 2.0) < 1e-9);
  CHECK(std::abs(r.rhs + 2.0) < 1e-15);
  CHECK(levy_khinchin_check(lam, 2.0, 1.0).lhs == doctest::Approx(2.0 * r.lhs));

  Tower C = build_cyclotomic_tower(3, 3);
  auto G = TowerField::realize(C);
  auto x = ExtElement::from_rational(G, 3, mpq_class(1, 3));
  for (double t : {0.5, 1.0})
    for (double a : {0.5, 1.0, 2.0}) {
      auto s = levy_khinchin_check(x, t, a);
      CHECK(std::abs(s.lhs - s.rhs) < 1e-9);
      CHECK(std::abs(s.lhs_imag) < 1e-9);
    }
}

TEST_CASE("D^alpha as an integral against the Levy measure") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> N;
  TowerSpec s2;
  s2.p = 2;
  s2.steps.push_back(StepSpec::eisenstein({{-2}, {0}, {1}}));
  for (const Tower& T : {build_unramified_tower(2, {1}), build_unramified_tower(2, {1, 2}), Tower(s2)}) {
    auto F = TowerField::realize(T);
    auto S = CylinderSpace::make(F, T.depth(), 3);
    for (const auto& p : hypersingular_vs_levy(1.0, CylFunction::constant(S, 2.0))) {
      CHECK(std::abs(p.lhs) < 1e-12);
      CHECK(std::abs(p.rhs) < 1e-12);
    }
    std::uint64_t a = S->dual().size() - 1;
    auto phi = CylFunction::character(S, a);
    const double lam = std::pow(S->dual_norm(a), 0.8);
    auto pairs = hypersingular_vs_levy(0.8, phi);
    for (size_t y = 0; y < pairs.size(); ++y) {
      CHECK(std::abs(pairs[y].lhs - lam * phi.values[y]) < 1e-10 * lam);
      CHECK(std::abs(pairs[y].rhs - lam * phi.values[y]) < 1e-10 * lam);
    }
    CylFunction ind = CylFunction::constant(S, 0.0);
    for (auto& v : ind.values) v = N(rng) > 0 ? 1.0 : 0.0;
    auto q = hypersingular_vs_levy(1.7, ind);
    std::uniform_int_distribution<size_t> pick(0, q.size() - 1);
    for (int k = 0; k < 20; ++k) {
      const auto& p = q[pick(rng)];
      CHECK(std::abs(p.lhs - p.rhs) < 1e-9);
    }
  }
}
