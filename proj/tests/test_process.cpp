#include "doctest.h"
#include "infext/measures.hpp"
#include "infext/process.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>

using namespace infext;

namespace {

FieldPtr q2() { return TowerField::realize(build_unramified_tower(2, {1})); }

}  // namespace

TEST_CASE("jump law") {
  auto F = q2();
  JumpLaw law = build_jump_law(F, 1, 1.0, 1.0);
  CHECK(law.rate == levy_total_outside(F->tower(), 1, 1.0, 1.0).total());
  double s = 0;
  for (double p : law.shell_probability) {
    CHECK(p >= 0);
    s += p;
  }
  CHECK(s == doctest::Approx(1.0).epsilon(1e-15));
  double prev = law.rate;
  for (double d : {0.5, 0.25, 0.125}) {
    JumpLaw l = build_jump_law(F, 1, d, 1.0);
    CHECK(l.rate > prev);
    prev = l.rate;
  }
  CHECK_THROWS_AS(build_jump_law(F, 1, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(build_jump_law(F, 1, 1.0 / 64, 1.0, 0, 10.0), DomainError);
}

TEST_CASE("paths") {
  auto F = TowerField::realize(build_unramified_tower(3, {1}));
  JumpLaw law = build_jump_law(F, 1, 1.0 / 3, 1.0);
  PathSample a = simulate_path(law, 5.0, 42, 7), b = simulate_path(law, 5.0, 42, 7);
  REQUIRE(a.events.size() == b.events.size());
  for (size_t i = 0; i < a.events.size(); ++i) {
    CHECK(a.events[i].time == b.events[i].time);
    CHECK(a.events[i].coset == b.events[i].coset);
  }
  for (std::uint64_t k = 0; k < 50; ++k) {
    PathSample p = simulate_path(law, 5.0, 42, k);
    std::uint64_t sum = 0;
    double last = 0;
    for (const auto& e : p.events) {
      CHECK(e.time > last);
      CHECK(e.time <= 5.0);
      last = e.time;
      const int w = law.space->group().valuation(e.coset);
      CHECK(w <= 1);
      sum = law.space->group().add(sum, e.coset);
    }
    CHECK(sum == p.terminal);
  }
}

TEST_CASE("rare jumps") {
  auto F = q2();
  JumpLaw law = build_jump_law(F, 1, 1.0, 1.0);
  const double t_end = 0.01 / law.rate;
  const int n = 10000;
  int zero = 0;
  for (int k = 0; k < n; ++k) zero += simulate_path(law, t_end, 99, static_cast<std::uint64_t>(k)).events.empty();
  const double p0 = std::exp(-0.01);
  const double frac = double(zero) / n;
  CHECK(frac >= 0.99 - 3 * std::sqrt(p0 * (1 - p0) / n));
  CHECK(std::abs(frac - p0) <= 3 * std::sqrt(p0 * (1 - p0) / n));
}

TEST_CASE("terminal law is symmetric under negation") {
  auto F = TowerField::realize(build_unramified_tower(3, {1}));
  JumpLaw law = build_jump_law(F, 1, 1.0 / 3, 1.0);
  const BallQuotient& G = law.space->group();
  std::vector<double> count(G.size(), 0);
  for (std::uint64_t k = 0; k < 20000; ++k) count[simulate_path(law, 1.0, 5, k).terminal] += 1;
  double stat = 0;
  int dof = 0;
  for (std::uint64_t z = 1; z < G.size(); ++z) {
    std::uint64_t m = G.neg(z);
    if (m <= z || count[z] + count[m] == 0) continue;
    stat += (count[z] - count[m]) * (count[z] - count[m]) / (count[z] + count[m]);
    ++dof;
  }
  REQUIRE(dof > 0);
  boost::math::chi_squared chi(dof);
  CHECK(boost::math::cdf(boost::math::complement(chi, stat)) > 0.0027);
}

TEST_CASE("Poisson goodness of fit") {
  const double mean = 2.0;
  std::vector<std::uint64_t> exact;
  double pk = std::exp(-mean);
  for (int k = 0; k < 15; ++k) {
    exact.push_back(static_cast<std::uint64_t>(std::llround(100000 * pk)));
    pk *= mean / (k + 1);
  }
  CHECK(poisson_test(exact, mean).passed);
  CHECK_FALSE(poisson_test(exact, 2.3).passed);
}

TEST_CASE("characteristic function by Monte Carlo") {
  auto F = q2();
  auto one = mc_characteristic(ExtElement::from_integer(F, 1, 3), 1.0, 1.0, 1.0, 2000, 1);
  CHECK(one.estimate.real() == 1.0);
  CHECK(one.within(3.0));

  auto half = ExtElement::from_rational(F, 1, mpq_class(1, 2));
  auto r = mc_characteristic(half, 1.0, 1.0, 0.5, 100000, 20240601);
  CHECK(r.expected == doctest::Approx(std::exp(-2.0)));
  CHECK(std::abs(r.estimate.real() - std::exp(-2.0)) <= 3 * r.stderr_re);
  CHECK(std::abs(r.estimate.imag()) <= 3 * r.stderr_im + 1e-12);
  CHECK(r.poisson.passed);
  CHECK(std::isfinite(r.tv_distance));
  CHECK_THROWS_AS(mc_characteristic(half, 1.0, 1.0, 1.0, 100, 1), DomainError);

  // Q_3 has a complex character: the imaginary part averages to zero by symmetry.
  auto G = TowerField::realize(build_unramified_tower(3, {1}));
  auto third = ExtElement::from_rational(G, 1, mpq_class(1, 3));
  auto s = mc_characteristic(third, 0.5, 1.0, 1.0 / 3, 50000, 3);
  CHECK(std::abs(s.estimate.real() - std::exp(-1.5)) <= 3 * s.stderr_re);
  CHECK(std::abs(s.estimate.imag()) <= 3 * s.stderr_im);
}

TEST_CASE("levels agree on observables of the lower level") {
  // lambda in K_1 seen through level 2 of the unramified quadratic tower.
  auto F = TowerField::realize(build_unramified_tower(2, {1, 2}));
  auto l1 = ExtElement::from_rational(F, 1, mpq_class(1, 2));
  auto r1 = mc_characteristic(l1, 1.0, 1.0, 0.5, 20000, 8);
  auto r2 = mc_characteristic(l1.embed(2), 1.0, 1.0, 0.5, 20000, 9);
  CHECK(r1.expected == r2.expected);
  CHECK(std::abs(r1.estimate.real() - r2.estimate.real()) <=
        3 * std::hypot(r1.stderr_re, r2.stderr_re));
  CHECK(r2.within(3.0));
}
