#include "doctest.h"
#include "infext/field.hpp"

#include <random>

using namespace infext;

namespace {

Tower sqrt2_tower() {
  TowerSpec s;
  s.p = 2;
  s.steps.push_back(StepSpec::eisenstein({{-2}, {0}, {1}}));
  return Tower(s);
}

ExtElement random_element(const FieldPtr& F, int level, std::mt19937_64& rng, int shift = 0) {
  ZVec c(static_cast<size_t>(F->dim(level)));
  std::uniform_int_distribution<long> d(0, 1000);
  for (auto& x : c) x = d(rng);
  return ExtElement::from_coordinates(F, level, shift, c, 30);
}

}  // namespace

TEST_CASE("Eisenstein level x^2 - 2") {
  auto F = TowerField::realize(sqrt2_tower());
  auto pi = ExtElement::uniformizer(F, 2);
  CHECK((pi * pi).equals_at_precision(ExtElement::from_integer(F, 2, 2)));
  CHECK(pi.valuation() == mpq_class(1, 2));
  CHECK(pi.norm() == doctest::Approx(std::pow(2.0, -0.5)));
  CHECK(F->discriminant_valuation(2) == 3);
}

TEST_CASE("inverses and units") {
  std::mt19937_64 rng(5);
  for (const Tower& T : {sqrt2_tower(), build_unramified_tower(2, {1, 2}), build_cyclotomic_tower(3, 3)}) {
    auto F = TowerField::realize(T);
    const int n = T.depth();
    for (int i = 0; i < 10; ++i) {
      ExtElement x = random_element(F, n, rng);
      if (x.is_zero()) continue;
      CHECK((x * x.inverse()).equals_at_precision(ExtElement::from_integer(F, n, 1)));
      CHECK((x + (-x)).is_zero());
    }
    ExtElement u = ExtElement::from_integer(F, n, T.p() + 1);
    CHECK(u.norm() == 1.0);
  }
}

TEST_CASE("traces") {
  Tower T = build_cyclotomic_tower(2, 4);
  auto F = TowerField::realize(T);
  for (int nu = 1; nu <= T.depth(); ++nu)
    for (int n = 1; n <= nu; ++n) {
      auto one = ExtElement::from_integer(F, nu, 1);
      CHECK(one.trace(n).equals_at_precision(ExtElement::from_integer(F, n, T.level(nu).m / T.level(n).m)));
    }
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    ExtElement x = random_element(F, 4, rng);
    CHECK(x.trace(1).equals_at_precision(x.trace(2).trace(1)));
    CHECK(x.trace(1).equals_at_precision(x.trace(3).trace(1)));
  }
}

TEST_CASE("trace of the unramified generator") {
  // The generator of the unramified quadratic is a primitive cube root of unity w: w + w^2 = -1.
  Tower T = build_unramified_tower(2, {1, 2});
  auto F = TowerField::realize(T);
  ExtElement w = ExtElement::from_coordinates(F, 2, 0, {0, 1}, 40);
  CHECK((w * w * w).equals_at_precision(ExtElement::from_integer(F, 2, 1)));
  CHECK(w.trace(1).equals_at_precision(ExtElement::from_integer(F, 1, -1)));
}

TEST_CASE("averaged projections") {
  Tower T = build_cyclotomic_tower(2, 4);
  auto F = TowerField::realize(T);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    ExtElement x = random_element(F, 2, rng);
    CHECK(x.embed(4).project_T(2).equals_at_precision(x));
    ExtElement y = random_element(F, 4, rng);
    CHECK(y.project_T(3).project_T(1).equals_at_precision(y.project_T(1)));
    CHECK(y.project_T(2).project_T(1).equals_at_precision(y.project_T(1)));
  }
  // S^(nu) maps into S^(n).
  for (int nu = 2; nu <= 4; ++nu)
    for (int n = 1; n < nu; ++n)
      for (int i = 0; i < 5; ++i) {
        ExtElement x = random_element(F, nu, rng);
        const ExtElement pi = ExtElement::uniformizer(F, nu);
        for (int k = 0; k < T.level(nu).s0(); ++k) x = x * pi;
        for (int k = 0; k > T.level(nu).s0(); --k) x = x / pi;
        ExtElement t = x.project_T(n);
        if (!t.is_zero()) CHECK(t.normalized_valuation() >= T.level(n).s0());
      }
}

TEST_CASE("pairing") {
  Tower T = build_unramified_tower(2, {1, 2});
  auto F = TowerField::realize(T);
  std::mt19937_64 rng(11);
  auto zero = ExtElement::from_integer(F, 2, 0);
  const int s0 = T.level(2).s0();
  auto in_S = [&]() {
    ExtElement x = random_element(F, 2, rng, s0 > 0 ? s0 : 0);
    return x;
  };
  for (int i = 0; i < 10; ++i) {
    ExtElement x = in_S();
    CHECK(std::abs(pairing_character(zero, x) - 1.0) < 1e-14);
    ExtElement a = random_element(F, 2, rng);
    CHECK(std::abs(pairing_character(a, x) - 1.0) < 1e-14);
    ExtElement b = a * ExtElement::from_rational(F, 2, mpq_class(1, 8));
    ExtElement y = in_S();
    CHECK(std::abs(pairing_character(b, x + y) - pairing_character(b, x) * pairing_character(b, y)) < 1e-12);
  }
  // Q_2: phase of 1/2 against 1 is 1/2.
  auto Q = TowerField::realize(build_unramified_tower(2, {1}));
  CHECK(pairing_phase(ExtElement::from_rational(Q, 1, mpq_class(1, 2)), ExtElement::from_integer(Q, 1, 1)) ==
        mpq_class(1, 2));
}

TEST_CASE("ball quotients") {
  CHECK(BallQuotient(build_unramified_tower(2, {1}), 1, 0, 1).size() == 2);
  CHECK(BallQuotient(build_unramified_tower(3, {1}), 1, -1, 1).size() == 9);
  CHECK(BallQuotient(build_unramified_tower(2, {1, 2}), 2, 0, 1).size() == 4);
  BallQuotient G(sqrt2_tower(), 1, -2, 3);
  CHECK(G.size() == 32);
  for (std::uint64_t a = 0; a < G.size(); ++a) {
    CHECK(G.add(a, G.neg(a)) == 0);
    CHECK(G.parse_label(G.label(a)) == a);
  }
  auto F = TowerField::realize(sqrt2_tower());
  for (std::uint64_t a = 0; a < G.size(); ++a) {
    ExtElement x = ExtElement::from_lattice(F, G, a);
    CHECK(locate(G, x) == a);
    if (a != 0) CHECK(x.normalized_valuation() == G.valuation(a));
  }
  CHECK(enumerate_ball_quotient(build_unramified_tower(3, {1}), 1, 1, 1).size() == 9);
}
