#include "doctest.h"
#include "infext/tower.hpp"

#include <cmath>
#include <set>

using namespace infext;

namespace {

// e of Q_p(W_{n!}) from the factorization n! = n' p^l: (p-1) p^{l-1} for l >= 1, else 1.
int cyclotomic_e_oracle(long p, int n) {
  long fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  int l = 0;
  while (fact % p == 0) {
    fact /= p;
    ++l;
  }
  if (l == 0) return 1;
  int e = static_cast<int>(p - 1);
  for (int i = 1; i < l; ++i) e *= static_cast<int>(p);
  return e;
}

}  // namespace

TEST_CASE("unramified towers") {
  Tower t = build_unramified_tower(2, {1, 2, 6});
  REQUIRE(t.depth() == 3);
  const long m[] = {1, 2, 6};
  for (int n = 1; n <= 3; ++n) {
    CHECK(t.level(n).m == m[n - 1]);
    CHECK(t.level(n).e == 1);
    CHECK(t.level(n).d == 0);
  }
  CHECK(build_unramified_tower(2, {1}).depth() == 1);

  Tower t3 = build_unramified_tower(3, {1, 2, 6, 24});
  mpz_class q24;
  mpz_ui_pow_ui(q24.get_mpz_t(), 3, 24);
  CHECK(t3.level(1).q == 3);
  CHECK(t3.level(2).q == 9);
  CHECK(t3.level(3).q == 729);
  CHECK(t3.level(4).q == q24);
  CHECK_THROWS_AS(build_unramified_tower(2, {1, 4, 6}), DomainError);
}

TEST_CASE("cyclotomic ramification indices") {
  for (long p : {2L, 3L, 5L}) {
    Tower t = build_cyclotomic_tower(p, 5);
    for (int n = 1; n <= 5; ++n) CHECK(t.level(n).e == cyclotomic_e_oracle(p, n));
  }
  CHECK(build_cyclotomic_tower(3, 3).level(3).e == 2);
  CHECK(build_cyclotomic_tower(2, 4).level(4).e == 4);
  CHECK(build_cyclotomic_tower(2, 2).level(2).e == 1);
}

TEST_CASE("different exponents") {
  CHECK(different_exponent(build_unramified_tower(3, {1, 2}), 2) == 0);
  // x^3 - 2 over Q_2 and x^5 - 3 over Q_3 are tame Eisenstein: d = e - 1.
  TowerSpec s;
  s.p = 2;
  s.steps.push_back(StepSpec::eisenstein({{-2}, {0}, {0}, {1}}));
  CHECK(Tower{s}.level(2).d == 2);
  s.p = 3;
  s.steps = {StepSpec::eisenstein({{-3}, {0}, {0}, {0}, {0}, {1}})};
  CHECK(Tower{s}.level(2).d == 4);
  // Q_p(zeta_{p^l}): d = l (p-1) p^{l-1} - p^{l-1}.
  Tower c = build_cyclotomic_tower(2, 4);
  CHECK(c.level(4).d == 3 * 4 - 4);
  Tower c3 = build_cyclotomic_tower(3, 3);
  CHECK(c3.level(3).d == 1 * 2 - 1);

  for (const Tower& t : {build_cyclotomic_tower(2, 5), build_cyclotomic_tower(3, 4), build_unramified_tower(2, {1, 2, 6})})
    for (int n = 1; n <= t.depth(); ++n)
      for (int nu = n + 1; nu <= t.depth(); ++nu)
        CHECK(t.level(nu).d == t.relative_ramification(n, nu) * t.level(n).d + t.relative_different(n, nu));
}

TEST_CASE("malformed steps are rejected") {
  TowerSpec s;
  s.p = 2;
  s.steps.push_back(StepSpec::eisenstein({{-4}, {0}, {1}}));
  CHECK_THROWS_AS(Tower{s}, DomainError);
  s.steps = {StepSpec::eisenstein({{-2}, {0}, {3}})};
  CHECK_THROWS_AS(Tower{s}, DomainError);
}

TEST_CASE("spectrum") {
  Tower u = build_unramified_tower(2, {1, 2, 6});
  std::set<double> vals;
  for (const auto& e : spectrum(1.0, u, 3, 16.0)) vals.insert(e.eigenvalue);
  CHECK(vals == std::set<double>{0, 2, 4, 8, 16});

  Tower q3 = build_unramified_tower(3, {1});
  auto s1 = spectrum(1.5, q3, 1, std::pow(3.0, 1.5));
  REQUIRE(s1.size() == 2);
  CHECK(s1[0].eigenvalue == 0.0);
  CHECK(s1[1].eigenvalue == doctest::Approx(std::pow(3.0, 1.5)));

  Tower c = build_cyclotomic_tower(2, 4);
  bool found = false;
  for (const auto& e : spectrum(1.0, c, 4, 4.0)) found = found || e.exponent == mpq_class(1, 4);
  CHECK(found);

  // Every stored pair regenerates its eigenvalue.
  for (const auto& e : spectrum(1.0, c, 4, 16.0))
    for (const auto& [n, N] : e.pairs) CHECK(std::pow(2.0, double(N) / c.level(n).e) == doctest::Approx(e.eigenvalue));
}

TEST_CASE("multiplicity counts") {
  Tower q2 = build_unramified_tower(2, {1});
  Tower q3 = build_unramified_tower(3, {1});
  CHECK(multiplicity_count(q2, 1, 1).count == 1);
  CHECK(multiplicity_count(q3, 1, 1).count == 2);
  CHECK(multiplicity_count(q2, 1, 2).count == 2);
  CHECK(multiplicity_count(q2, 1, 2).enumerated);
  Tower u = build_unramified_tower(2, {1, 2, 6, 24});
  auto big = multiplicity_count(u, 4, 1, 1000);
  CHECK_FALSE(big.enumerated);
  CHECK(big.count == (mpz_class(1) << 24) - 1);

  mpz_class prev = 0;
  for (int H = 1; H <= 4; ++H) {
    mpz_class m = 0;
    for (const auto& e : spectrum(1.0, u, H, 2.0))
      if (e.exponent == 1) m = e.multiplicity;
    CHECK(m >= prev);
    prev = m;
  }
}

TEST_CASE("minimal positive eigenvalue") {
  Tower u = build_unramified_tower(2, {1, 2, 6});
  for (int h = 1; h <= 3; ++h) CHECK(min_positive_eigenvalue(1.0, u, h) == 2.0);
  Tower c = build_cyclotomic_tower(2, 5);
  CHECK(min_positive_eigenvalue(1.0, c, 4) == doctest::Approx(std::pow(2.0, 0.25)));
  CHECK(min_positive_eigenvalue(1.0, c, 5) == doctest::Approx(std::pow(2.0, 0.25)));
  for (int h = 2; h <= 5; ++h) CHECK(min_positive_eigenvalue(1.0, c, h) <= min_positive_eigenvalue(1.0, c, h - 1));
}
