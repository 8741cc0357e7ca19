#include "doctest.h"
#include "infext/funcspace.hpp"

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

mpq_class pow2(int k) { return k >= 0 ? mpq_class(mpz_class(1) << k) : mpq_class(mpz_class(1), mpz_class(1) << -k); }

}  // namespace

TEST_CASE("Haar integral") {
  auto F = TowerField::realize(build_unramified_tower(3, {1, 2}));
  auto S = CylinderSpace::make(F, 2, 1);
  CHECK(std::abs(haar_integral(CylFunction::constant(S, 1.0)) - 1.0) < 1e-15);
  CHECK(std::abs(haar_integral(CylFunction::indicator(S, 4)) - 1.0 / 9.0) < 1e-15);
  std::mt19937_64 rng(1);
  auto f = random_function(S, rng), g = random_function(S, rng);
  CylFunction h = f;
  for (size_t i = 0; i < h.values.size(); ++i) h.values[i] = 2.0 * f.values[i] - 3.0 * g.values[i];
  CHECK(std::abs(haar_integral(h) - (2.0 * haar_integral(f) - 3.0 * haar_integral(g))) < 1e-13);
}

TEST_CASE("Gaussian measure") {
  Tower U = build_unramified_tower(2, {1, 2, 6});
  auto F = TowerField::realize(U);
  for (int n = 1; n <= 3; ++n) {
    const LevelData& L = U.level(n);
    for (int N = 1; N <= (n == 3 ? 1 : 2); ++N) {
      auto S = CylinderSpace::make(F, n, N * L.e);
      CHECK(std::abs(mu_integral(CylFunction::constant(S, 1.0)) - 1.0) < 1e-15);
      CHECK(mu_coset_weight(*S) * mpz_class(static_cast<unsigned long>(S->size())) == 1);
      CylFunction ball = CylFunction::ball_indicator(S, L.s0() + N * L.e);
      CHECK(mu_integral(ball).real() == doctest::Approx(pow2(-N * static_cast<int>(L.m)).get_d()));
    }
  }
  // Omega(a) = 1 for ||a|| <= 1 and 0 otherwise.
  auto S = CylinderSpace::make(F, 2, 2);
  for (std::uint64_t xi = 0; xi < S->dual().size(); ++xi) {
    Complex v = mu_integral(CylFunction::character(S, xi));
    CHECK(std::abs(v - (xi == 0 ? 1.0 : 0.0)) < 1e-13);
  }
}

TEST_CASE("Fourier transform") {
  std::mt19937_64 rng(2);
  for (const Tower& T : {build_unramified_tower(2, {1, 2}), build_cyclotomic_tower(3, 3)}) {
    auto F = TowerField::realize(T);
    auto S = CylinderSpace::make(F, T.depth(), 1);
    auto c = fourier(CylFunction::constant(S, 1.0));
    for (std::uint64_t xi = 0; xi < c.coeffs.size(); ++xi) CHECK(std::abs(c.coeffs[xi] - (xi == 0 ? 1.0 : 0.0)) < 1e-13);

    // phi_a has a single unit coefficient, at the coset of -a.
    const BallQuotient& D = S->dual();
    for (std::uint64_t a = 0; a < D.size(); ++a) {
      auto ca = fourier(CylFunction::character(S, a));
      for (std::uint64_t xi = 0; xi < D.size(); ++xi)
        CHECK(std::abs(ca.coeffs[xi] - (xi == D.neg(a) ? 1.0 : 0.0)) < 1e-12);
    }
    auto f = random_function(S, rng), g = random_function(S, rng);
    CHECK(dev(inverse_fourier(fourier(f)), f) < 1e-12);
    auto ps = plancherel_check(f, g);
    CHECK(std::abs(ps.lhs - ps.rhs) < 1e-12);
    auto one = plancherel_check(CylFunction::constant(S, 1.0), CylFunction::constant(S, 1.0));
    CHECK(std::abs(one.lhs - 1.0) < 1e-14);
    CHECK(std::abs(one.rhs - 1.0) < 1e-14);
    auto d = CylFunction::indicator(S, 1);
    auto pd = plancherel_check(d, d);
    CHECK(std::abs(pd.lhs - 1.0 / double(S->size())) < 1e-15);
    CHECK(std::abs(pd.rhs - 1.0 / double(S->size())) < 1e-14);
  }
}

TEST_CASE("Character table matches element pairing") {
  auto F = TowerField::realize(build_cyclotomic_tower(2, 4));
  auto S = CylinderSpace::make(F, 4, 2);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::uint64_t> pz(0, S->size() - 1), pxi(0, S->dual().size() - 1);
  for (int i = 0; i < 50; ++i) {
    std::uint64_t z = pz(rng), xi = pxi(rng);
    Complex direct = pairing_character(S->dual_element(xi), S->group_element(z));
    CHECK(std::abs(direct - S->character(xi, z)) < 1e-12);
  }
}

TEST_CASE("Refinement to a higher level") {
  Tower U = build_unramified_tower(2, {1, 2, 6});
  auto F = TowerField::realize(U);
  std::mt19937_64 rng(6);
  auto S = CylinderSpace::make(F, 1, 2);
  auto c = refine_level(CylFunction::constant(S, 2.5), 2);
  for (const auto& v : c.values) CHECK(std::abs(v - 2.5) < 1e-15);
  for (int i = 0; i < 20; ++i) {
    auto f = random_function(S, rng);
    CHECK(std::abs(mu_integral(refine_level(f, 2)) - mu_integral(f)) < 1e-12);
  }
  auto ball = CylFunction::ball_indicator(S, 1);
  CHECK(mu_integral(refine_level(ball, 2)).real() == doctest::Approx(0.5));
  CHECK(mu_integral(refine_level(ball, 3)).real() == doctest::Approx(0.5));

  Tower C = build_cyclotomic_tower(2, 4);
  auto G = TowerField::realize(C);
  auto S2 = CylinderSpace::make(G, 2, 1);
  for (int i = 0; i < 5; ++i) {
    auto f = random_function(S2, rng);
    CHECK(std::abs(mu_integral(refine_level(f, 4)) - mu_integral(f)) < 1e-12);
  }
}
