#include "infext/verify.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "infext/measures.hpp"
#include "infext/process.hpp"
#include "infext/vladimirov.hpp"

namespace infext {

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << "FAILED " << what << "; ";
    }
  }
};

template <class F>
CriterionResult timed(int id, std::string name, double budget, F&& body) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.budget_seconds = budget;
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.passed = false;
    o.detail << "exception: " << e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.passed = o.passed;
  r.detail = o.detail.str();
  if (r.seconds > budget) {
    r.passed = false;
    r.detail += "runtime " + std::to_string(r.seconds) + " s over budget " + std::to_string(budget) + " s";
  }
  return r;
}

struct NamedTower {
  std::string name;
  Tower tower;
};

Tower eisenstein_sqrt2() {
  TowerSpec s;
  s.p = 2;
  s.steps.push_back(StepSpec::eisenstein({{-2}, {0}, {1}}));
  return Tower(std::move(s));
}

std::vector<NamedTower> route_towers() {
  return {{"Q2", Tower(TowerSpec{2, {}})},
          {"unramified quadratic", build_unramified_tower(2, {1, 2})},
          {"x^2-2", eisenstein_sqrt2()},
          {"unramified sextic", build_unramified_tower(2, {1, 6})}};
}

CylFunction random_function(const SpacePtr& space, std::mt19937_64& rng) {
  std::normal_distribution<double> N;
  CylFunction f = CylFunction::constant(space, 0.0);
  for (auto& v : f.values) v = {N(rng), N(rng)};
  return f;
}

double max_deviation(const CylFunction& a, const CylFunction& b) {
  double d = 0;
  for (size_t i = 0; i < a.values.size(); ++i) d = std::max(d, std::abs(a.values[i] - b.values[i]));
  return d;
}

// Every (level, depth) whose group quotient has at most `cap` cosets.
std::vector<SpacePtr> small_spaces(const FieldPtr& F, std::uint64_t cap, long max_degree) {
  std::vector<SpacePtr> out;
  const Tower& T = F->tower();
  for (int n = 1; n <= T.depth(); ++n) {
    if (T.level(n).m > max_degree) continue;
    for (int t = 1;; ++t) {
      mpz_class size;
      mpz_pow_ui(size.get_mpz_t(), T.level(n).q.get_mpz_t(), static_cast<unsigned long>(t));
      if (size > cap) break;
      out.push_back(CylinderSpace::make(F, n, t));
    }
  }
  return out;
}

mpq_class two_pow(long k) {
  mpz_class a;
  mpz_ui_pow_ui(a.get_mpz_t(), 2, static_cast<unsigned long>(std::labs(k)));
  return k >= 0 ? mpq_class(a) : mpq_class(mpz_class(1), a);
}

}  // namespace

CriterionResult verify_route_equivalence(std::uint64_t seed) {
  return timed(1, "route equivalence: spectral vs hypersingular", 60.0, [&](Outcome& o) {
    std::mt19937_64 rng(seed);
    const double alphas[] = {0.5, 1.0, 1.5, 2.0};
    for (const auto& [name, T] : route_towers()) {
      auto spaces = small_spaces(TowerField::realize(T), 1024, 6);
      double worst = 0;
      for (int i = 0; i < 100; ++i) {
        const SpacePtr& S = spaces[static_cast<size_t>(i) % spaces.size()];
        CylFunction f = random_function(S, rng);
        double a = alphas[i % 4];
        worst = std::max(worst, max_deviation(apply_spectral(a, f), apply_hypersingular(a, f)));
      }
      o.detail << name << " max dev " << worst << "; ";
      o.require(worst <= 1e-9, name);
    }
  });
}

CriterionResult verify_eigen_relation() {
  return timed(2, "eigen-relation D^alpha phi_a = ||a||^alpha phi_a", 30.0, [&](Outcome& o) {
    std::vector<NamedTower> towers = {{"Q2", Tower(TowerSpec{2, {}})},
                                      {"unramified quadratic", build_unramified_tower(2, {1, 2})},
                                      {"x^2-2", eisenstein_sqrt2()}};
    for (const auto& [name, T] : towers) {
      FieldPtr F = TowerField::realize(T);
      for (int n = 1; n <= T.depth(); ++n) {
        const LevelData& L = T.level(n);
        if (L.m > 2) continue;
        // ||a|| <= 16  <=>  w(a) >= -4 e.
        BallQuotient D(T, n, -4 * L.e, 0);
        double worst = 0;
        int count = 0;
        for (double alpha : {0.5, 1.0, 2.0}) {
          for (std::uint64_t xi = 1; xi < D.size(); ++xi) {
            ExtElement a = ExtElement::from_lattice(F, D, xi);
            double oracle = std::pow(2.0, -alpha * D.valuation(xi) / static_cast<double>(L.e));
            EigenCheck c = eigencheck(a, alpha);
            worst = std::max({worst, std::abs(c.measured - oracle) / oracle, c.residual / oracle});
            ++count;
          }
        }
        o.detail << name << " level " << n << ": " << count << " checks, max rel err " << worst << "; ";
        o.require(worst <= 1e-10, name);
      }
    }
  });
}

CriterionResult verify_spectrum_structure() {
  return timed(3, "spectrum structure", 10.0, [&](Outcome& o) {
    Tower U = build_unramified_tower(2, {1, 2, 6, 24});
    auto spec = spectrum(1.0, U, 3, 16.0);
    std::set<mpq_class> exps;
    std::set<double> vals;
    for (const auto& e : spec) {
      exps.insert(e.exponent);
      vals.insert(e.eigenvalue);
    }
    const std::set<mpq_class> want_exp = {0, 1, 2, 3, 4};
    const std::set<double> want_val = {0.0, 2.0, 4.0, 8.0, 16.0};
    o.require(exps == want_exp && vals == want_val, "unramified spectrum equals {0,2,4,8,16}");
    o.detail << "unramified horizon 3: " << vals.size() << " eigenvalues; ";

    Tower C = build_cyclotomic_tower(2, 4);
    bool found = false;
    for (const auto& e : spectrum(1.0, C, 4, 16.0))
      if (e.exponent == mpq_class(1, 4)) found = std::abs(e.eigenvalue - std::pow(2.0, 0.25)) < 1e-15;
    o.require(found, "cyclotomic spectrum contains 2^(1/4)");
    o.detail << "cyclotomic contains 2^(1/4): " << (found ? "yes" : "no") << "; ";

    mpz_class prev = 0;
    o.detail << "multiplicity of 2:";
    for (int H = 1; H <= 4; ++H) {
      mpz_class mult = -1;
      for (const auto& e : spectrum(1.0, U, H, 2.0))
        if (e.exponent == 1) mult = e.multiplicity;
      o.detail << " " << mult.get_str();
      o.require(mult > prev, "multiplicity strictly increasing at horizon " + std::to_string(H));
      prev = mult;
      // Brute-force count of the cosets with |a| = q_H.
      MultiplicityCount c = multiplicity_count(U, H, 1);
      if (c.enumerated) o.require(c.count == mult, "enumerated multiplicity at horizon " + std::to_string(H));
    }
    o.detail << "; ";
  });
}

CriterionResult verify_singularity_witness() {
  return timed(4, "singularity witness mu vs pi", 10.0, [&](Outcome& o) {
    Tower U = build_unramified_tower(2, {1, 2, 6, 24});
    MeasureReport rep = theorem3_report(U, 1, 1.0, 1.0, 4);
    const long fact[] = {1, 1, 2, 6, 24};
    const double bound = 0.5 * std::exp(-2.0);
    for (const auto& r : rep.rows) {
      o.require(r.mu == two_pow(-fact[r.n]), "mu(M_" + std::to_string(r.n) + ") = 2^-n!");
      o.require(r.pi >= bound, "pi >= e^-2/2 at n=" + std::to_string(r.n));
      o.require(std::abs(r.pi - r.pi_gamma) <= 1e-10, "closed form vs Gamma route at n=" + std::to_string(r.n));
      o.detail << "n=" << r.n << " mu=" << r.mu.get_str() << " pi=" << r.pi << " log10=" << r.log10_ratio << "; ";
    }
    o.require(rep.ratio_increasing, "log10 ratio strictly increasing");
    o.require(rep.rows.back().log10_ratio > 6.0, "log10 ratio > 6 at n=4");
    o.require(rep.flag == "pass", "report flag");
  });
}

CriterionResult verify_heat_closed_form() {
  return timed(5, "heat measure closed form", 5.0, [&](Outcome& o) {
    Tower Q2(TowerSpec{2, {}});
    const double oracle = 0.5 * (1.0 + std::exp(-2.0));
    double closed = heat_cylinder(Q2, 1, 1, 1.0, 1.0);
    ShellSeries g = heat_cylinder_gamma(Q2, 1, 1, 1.0, 1.0);
    o.detail << "closed " << closed << " gamma " << g.total() << " (tail bound " << g.error_bound() << ")";
    o.require(std::abs(closed - oracle) <= 1e-12, "closed form within 1e-12");
    o.require(std::abs(closed - g.total()) <= 1e-10, "routes agree within 1e-10");
  });
}

CriterionResult verify_levy_khinchin() {
  return timed(6, "Levy-Khinchin exponent", 10.0, [&](Outcome& o) {
    std::vector<NamedTower> towers = {{"Q2", Tower(TowerSpec{2, {}})},
                                      {"unramified quadratic", build_unramified_tower(2, {1, 2})}};
    for (const auto& [name, T] : towers) {
      FieldPtr F = TowerField::realize(T);
      const int n = T.depth();
      double worst = 0;
      for (int k = 1; k <= 3; ++k) {
        ExtElement lam = ExtElement::from_rational(F, n, two_pow(-k));
        for (double t : {0.5, 1.0, 2.0})
          for (double a : {1.0, 2.0}) {
            LevyKhinchin r = levy_khinchin_check(lam, t, a);
            worst = std::max(worst, std::abs(r.lhs + t * std::pow(2.0, k * a)));
          }
      }
      bool zero = true;
      for (long c : {1L, 2L, 3L, 4L}) {
        ExtElement lam = ExtElement::from_integer(F, n, c);
        LevyKhinchin r = levy_khinchin_check(lam, 1.0, 1.0);
        zero = zero && r.lhs == 0.0 && r.lhs_imag == 0.0;
      }
      o.detail << name << " max err " << worst << ", |lambda|<=1 exact zero " << (zero ? "yes" : "no") << "; ";
      o.require(worst <= 1e-9, name + " exponent");
      o.require(zero, name + " zero for |lambda| <= 1");
    }
  });
}

CriterionResult verify_levy_representation(std::uint64_t seed) {
  return timed(7, "Levy-measure representation of D^alpha", 30.0, [&](Outcome& o) {
    std::mt19937_64 rng(seed);
    std::vector<SpacePtr> spaces;
    for (const auto& [name, T] : route_towers()) {
      auto s = small_spaces(TowerField::realize(T), 256, 2);
      spaces.insert(spaces.end(), s.begin(), s.end());
    }
    const double alphas[] = {0.5, 1.0, 2.0};
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
      const SpacePtr& S = spaces[std::uniform_int_distribution<size_t>(0, spaces.size() - 1)(rng)];
      CylFunction f = random_function(S, rng);
      auto pairs = hypersingular_vs_levy(alphas[i % 3], f);
      std::uniform_int_distribution<std::uint64_t> pick(0, S->size() - 1);
      for (int j = 0; j < 20; ++j) {
        const RoutePair& r = pairs[pick(rng)];
        worst = std::max(worst, std::abs(r.lhs - r.rhs));
      }
    }
    o.detail << "400 evaluations, max dev " << worst;
    o.require(worst <= 1e-9, "agreement");
  });
}

CriterionResult verify_monte_carlo(std::uint64_t seed) {
  return timed(8, "Monte Carlo characteristic function", 120.0, [&](Outcome& o) {
    Tower Q2(TowerSpec{2, {}});
    FieldPtr F = TowerField::realize(Q2);
    struct Case {
      int k;
      double t, alpha;
    };
    for (const Case& c : {Case{1, 1.0, 1.0}, Case{2, 0.5, 1.0}, Case{1, 1.0, 2.0}}) {
      ExtElement lam = ExtElement::from_rational(F, 1, two_pow(-c.k));
      const double norm = std::pow(2.0, c.k);
      MonteCarloReport r = mc_characteristic(lam, c.t, c.alpha, 1.0 / norm, 100000, seed);
      const double oracle = std::exp(-c.t * std::pow(norm, c.alpha));
      const bool ok = std::abs(r.estimate.real() - oracle) <= 3.0 * r.stderr_re && r.within(3.0);
      o.detail << "|lambda|=" << norm << " t=" << c.t << " alpha=" << c.alpha << ": " << r.estimate.real() << " vs "
               << oracle << " (se " << r.stderr_re << ", Poisson p " << r.poisson.p_value << "); ";
      o.require(ok, "estimate within 3 stderr");
      o.require(r.poisson.passed, "Poisson chi-square at 1%");
    }
  });
}

CriterionResult verify_structural(std::uint64_t seed) {
  return timed(9, "structural exactness", 30.0, [&](Outcome& o) {
    std::mt19937_64 rng(seed);
    std::vector<NamedTower> towers = route_towers();
    towers.push_back({"unramified n!", build_unramified_tower(2, {1, 2, 6, 24})});
    towers.push_back({"cyclotomic p=2", build_cyclotomic_tower(2, 5)});
    towers.push_back({"cyclotomic p=3", build_cyclotomic_tower(3, 4)});
    towers.push_back({"cyclotomic p=5", build_cyclotomic_tower(5, 5)});

    double plancherel = 0, roundtrip = 0;
    int projections = 0;
    for (const auto& [name, T] : towers) {
      FieldPtr F = TowerField::realize(T);
      for (int n = 1; n <= T.depth(); ++n) {
        for (int nu = n + 1; nu <= T.depth(); ++nu) {
          int lhs = T.level(nu).d;
          int rhs = T.relative_ramification(n, nu) * T.level(n).d + T.relative_different(n, nu);
          o.require(lhs == rhs, name + " different tower formula");
        }
        // The discriminant of the trace form is p^{f d}.
        o.require(F->discriminant_valuation(n) == T.level(n).f * T.level(n).d, name + " discriminant");
        if (T.level(n).q > 1024) continue;
        SpacePtr S = CylinderSpace::make(F, n, 1);
        mpq_class mu_s = mu_coset_weight(*S) * mpz_class(static_cast<unsigned long>(S->size()));
        o.require(mu_s == 1, name + " mu(S) = 1");
        CylFunction f = random_function(S, rng), g = random_function(S, rng);
        PlancherelSides ps = plancherel_check(f, g);
        plancherel = std::max(plancherel, std::abs(ps.lhs - ps.rhs));
        roundtrip = std::max(roundtrip, max_deviation(inverse_fourier(fourier(f)), f) / f.sup_norm());
      }
      // T_n o T_nu = T_n on random top-level elements.
      const int top = T.depth();
      const long p = T.p();
      for (int trial = 0; trial < 3 && top >= 2; ++trial) {
        ZVec coords(static_cast<size_t>(T.level(top).m));
        std::uniform_int_distribution<long> digit(0, p * p * p - 1);
        for (auto& c : coords) c = digit(rng);
        ExtElement x = ExtElement::from_coordinates(F, top, 0, coords, 24);
        for (int n = 1; n < top; ++n)
          for (int mid = n + 1; mid < top; ++mid) {
            ++projections;
            o.require(x.project_T(mid).project_T(n).equals_at_precision(x.project_T(n)),
                      name + " T_n o T_nu = T_n");
          }
      }
    }
    o.detail << "Plancherel max dev " << plancherel << ", round trip max rel dev " << roundtrip << ", "
             << projections << " projection identities; ";
    o.require(plancherel <= 1e-12, "Plancherel");
    o.require(roundtrip <= 1e-12, "Fourier round trip");
  });
}

std::vector<CriterionResult> verify_all(std::uint64_t seed, const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<std::function<CriterionResult()>> all = {
      [&] { return verify_route_equivalence(seed); }, [] { return verify_eigen_relation(); },
      [] { return verify_spectrum_structure(); },     [] { return verify_singularity_witness(); },
      [] { return verify_heat_closed_form(); },       [] { return verify_levy_khinchin(); },
      [&] { return verify_levy_representation(seed); }, [&] { return verify_monte_carlo(seed); },
      [&] { return verify_structural(seed); }};
  std::vector<CriterionResult> out;
  for (auto& f : all) {
    out.push_back(f());
    if (on_result) on_result(out.back());
  }
  return out;
}

}  // namespace infext
