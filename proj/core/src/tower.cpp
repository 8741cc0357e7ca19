#include "infext/tower.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "finite_field.hpp"
#include "infext/quotient.hpp"

namespace infext {

StepSpec StepSpec::unramified(int factor, bool closes_level) {
  StepSpec s;
  s.kind = StepKind::unramified;
  s.degree = factor;
  s.closes_level = closes_level;
  return s;
}

StepSpec StepSpec::eisenstein(std::vector<ZVec> coefficients, bool closes_level) {
  StepSpec s;
  s.kind = StepKind::eisenstein;
  s.degree = static_cast<int>(coefficients.size()) - 1;
  s.coefficients = std::move(coefficients);
  s.closes_level = closes_level;
  return s;
}

double LevelData::log_q(long p) const { return f * std::log(static_cast<double>(p)); }

namespace {

// Normalized valuation of an element of a step field given by basis coordinates.
int coordinate_valuation(const ZVec& c, const StepData& field, long p) {
  int w = kZeroValuation;
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    w = std::min(w, field.e * vp(c[i], p) + field.basis_valuation.at(i));
  }
  return w;
}

}  // namespace

Tower::Tower(TowerSpec spec) : spec_(std::move(spec)) {
  const long p = spec_.p;
  if (!is_prime(p)) throw DomainError("tower: p = " + std::to_string(p) + " is not prime");

  StepData base;
  base.basis_valuation = {0};
  steps_.push_back(base);

  for (size_t s = 0; s < spec_.steps.size(); ++s) {
    const StepSpec& st = spec_.steps[s];
    const StepData& prev = steps_.back();
    StepData cur;
    cur.kind = st.kind;
    cur.degree = st.degree;
    const int r = st.degree;
    if (r < 1) throw DomainError("tower: step " + std::to_string(s + 1) + " has degree < 1");
    const size_t dprev = prev.basis_valuation.size();
    cur.basis_valuation.resize(dprev * static_cast<size_t>(r));

    if (st.kind == StepKind::unramified) {
      cur.e = prev.e;
      cur.f = prev.f * r;
      cur.d = prev.d;
      cur.relative_d = 0;
      for (int j = 0; j < r; ++j)
        for (size_t i = 0; i < dprev; ++i) cur.basis_valuation[j * dprev + i] = prev.basis_valuation[i];
    } else {
      if (static_cast<int>(st.coefficients.size()) != r + 1)
        throw DomainError("tower: Eisenstein step " + std::to_string(s + 1) + " needs degree+1 coefficients");
      for (const auto& c : st.coefficients)
        if (c.size() > dprev)
          throw DomainError("tower: Eisenstein coefficient has more coordinates than the previous field");
      const ZVec& lead = st.coefficients[static_cast<size_t>(r)];
      bool monic = !lead.empty() && lead[0] == 1 &&
                   std::all_of(lead.begin() + 1, lead.end(), [](const mpz_class& x) { return x == 0; });
      if (!monic) throw DomainError("tower: Eisenstein polynomial must be monic");
      for (int j = 0; j < r; ++j) {
        int w = coordinate_valuation(st.coefficients[static_cast<size_t>(j)], prev, p);
        if (j == 0 && w != 1)
          throw DomainError("tower: Eisenstein constant term must have valuation exactly 1");
        if (j > 0 && w < 1)
          throw DomainError("tower: Eisenstein coefficient " + std::to_string(j) + " must have positive valuation");
      }
      // w(E'(pi)) = min_j (r * w_prev(j c_j) + j - 1); the terms have distinct residues mod r.
      int rel = kZeroValuation;
      for (int j = 1; j <= r; ++j) {
        int wc = coordinate_valuation(st.coefficients[static_cast<size_t>(j)], prev, p);
        if (wc == kZeroValuation) continue;
        int wj = prev.e * vp(static_cast<long>(j), p) + wc;
        rel = std::min(rel, r * wj + j - 1);
      }
      cur.e = prev.e * r;
      cur.f = prev.f;
      cur.relative_d = rel;
      cur.d = r * prev.d + rel;
      for (int j = 0; j < r; ++j)
        for (size_t i = 0; i < dprev; ++i) cur.basis_valuation[j * dprev + i] = r * prev.basis_valuation[i] + j;
    }
    cur.m = static_cast<long>(cur.e) * cur.f;
    steps_.push_back(std::move(cur));
  }

  auto make_level = [&](int n, int step) {
    LevelData L;
    const StepData& sd = steps_[static_cast<size_t>(step)];
    L.n = n;
    L.m = sd.m;
    L.e = sd.e;
    L.f = sd.f;
    L.d = sd.d;
    L.q = ipow(p, sd.f);
    L.vp_m = vp(sd.m, p);
    L.step = step;
    return L;
  };
  levels_.push_back(make_level(1, 0));
  for (size_t s = 0; s < spec_.steps.size(); ++s) {
    if (spec_.steps[s].closes_level) levels_.push_back(make_level(static_cast<int>(levels_.size()) + 1, static_cast<int>(s + 1)));
  }
  if (!spec_.steps.empty() && !spec_.steps.back().closes_level)
    throw DomainError("tower: the last step must close a level");
}

const LevelData& Tower::level(int n) const {
  if (n < 1 || n > depth()) throw DomainError("tower: level " + std::to_string(n) + " out of range");
  return levels_[static_cast<size_t>(n - 1)];
}

int Tower::relative_ramification(int n, int nu) const { return level(nu).e / level(n).e; }

int Tower::relative_different(int n, int nu) const {
  if (nu < n) throw DomainError("relative_different: nu < n");
  int d = 0;
  for (int s = level(n).step + 1; s <= level(nu).step; ++s) {
    const StepData& sd = step(s);
    if (sd.kind == StepKind::eisenstein) d = sd.degree * d + sd.relative_d;
  }
  return d;
}

int Tower::uniformizer_step(int n) const {
  for (int s = level(n).step; s >= 1; --s)
    if (step(s).kind == StepKind::eisenstein) return s;
  return 0;
}

Tower build_unramified_tower(long p, const std::vector<int>& f_list) {
  if (!is_prime(p)) throw DomainError("build_unramified_tower: p is not prime");
  if (f_list.empty() || f_list.front() != 1) throw DomainError("build_unramified_tower: f_list must start with 1");
  TowerSpec spec;
  spec.p = p;
  for (size_t i = 1; i < f_list.size(); ++i) {
    if (f_list[i] <= f_list[i - 1] || f_list[i] % f_list[i - 1] != 0)
      throw DomainError("build_unramified_tower: f_list must be a strictly increasing divisibility chain");
    spec.steps.push_back(StepSpec::unramified(f_list[i] / f_list[i - 1]));
  }
  return Tower(std::move(spec));
}

CyclotomicLevelInvariants cyclotomic_invariants(long p, int n) {
  CyclotomicLevelInvariants inv;
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n));
  while (mpz_divisible_ui_p(fact.get_mpz_t(), static_cast<unsigned long>(p))) {
    fact /= p;
    ++inv.l;
  }
  if (!fact.fits_slong_p()) throw DomainError("cyclotomic_invariants: n! too large");
  inv.tame_part = fact.get_si();
  inv.f = static_cast<int>(detail::multiplicative_order(p % inv.tame_part, inv.tame_part));
  if (inv.tame_part == 1) inv.f = 1;
  inv.e = 1;
  if (inv.l >= 1) {
    inv.e = static_cast<int>(p - 1);
    for (int i = 1; i < inv.l; ++i) inv.e *= static_cast<int>(p);
  }
  return inv;
}

namespace {

// ((1+x)^{p^l} - 1) / ((1+x)^{p^{l-1}} - 1) over Z, low degree first.
std::vector<mpz_class> shifted_cyclotomic(long p, int l) {
  auto binom_minus_one = [](const mpz_class& n) {
    unsigned long N = n.get_ui();
    std::vector<mpz_class> c(N + 1);
    for (unsigned long i = 0; i <= N; ++i) mpz_bin_uiui(c[i].get_mpz_t(), N, i);
    c[0] -= 1;
    return c;
  };
  auto num = binom_minus_one(ipow(p, l));
  auto den = binom_minus_one(ipow(p, l - 1));
  // Both have zero constant term; exact long division.
  std::vector<mpz_class> q(num.size() - den.size() + 1);
  for (size_t k = q.size(); k-- > 0;) {
    mpz_class c = num[k + den.size() - 1] / den.back();
    q[k] = c;
    for (size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
  }
  return q;
}

}  // namespace

Tower build_cyclotomic_tower(long p, int depth) {
  if (!is_prime(p)) throw DomainError("build_cyclotomic_tower: p is not prime");
  if (depth < 2) throw DomainError("build_cyclotomic_tower: depth must be at least 2");
  TowerSpec spec;
  spec.p = p;
  int f_cur = 1, l_cur = 0;
  size_t dim = 1;
  ZVec zeta{1};  // flat coordinates of zeta_{p^{l_cur}}
  for (int n = 2; n <= depth; ++n) {
    CyclotomicLevelInvariants inv = cyclotomic_invariants(p, n);
    std::vector<StepSpec> level_steps;
    if (inv.f > f_cur) {
      int r = inv.f / f_cur;
      level_steps.push_back(StepSpec::unramified(r));
      dim *= static_cast<size_t>(r);
      f_cur = inv.f;
    }
    if (inv.l > l_cur) {
      if (l_cur == 0 && p == 2 && inv.l == 1) {
        zeta = ZVec{-1};
      } else {
        std::vector<ZVec> coeffs;
        if (l_cur == 0) {
          for (const auto& c : shifted_cyclotomic(p, inv.l)) coeffs.push_back(ZVec{c});
        } else {
          mpz_class P = ipow(p, inv.l - l_cur);
          unsigned long N = P.get_ui();
          coeffs.resize(N + 1);
          for (unsigned long i = 1; i <= N; ++i) {
            mpz_class b;
            mpz_bin_uiui(b.get_mpz_t(), N, i);
            coeffs[i] = ZVec{b};
          }
          ZVec c0(std::max<size_t>(zeta.size(), 1), 0);
          for (size_t i = 0; i < zeta.size(); ++i) c0[i] = -zeta[i];
          c0[0] += 1;
          coeffs[0] = c0;
        }
        size_t prev_dim = dim;
        size_t deg = coeffs.size() - 1;
        level_steps.push_back(StepSpec::eisenstein(std::move(coeffs)));
        dim *= deg;
        zeta = ZVec(prev_dim + 1, 0);
        zeta[0] = 1;
        zeta[prev_dim] = 1;
      }
      l_cur = inv.l;
    }
    if (level_steps.empty()) level_steps.push_back(StepSpec::unramified(1));
    for (size_t i = 0; i < level_steps.size(); ++i) level_steps[i].closes_level = (i + 1 == level_steps.size());
    for (auto& st : level_steps) spec.steps.push_back(std::move(st));
  }
  return Tower(std::move(spec));
}

int different_exponent(const Tower& tower, int n) {
  int d = 0;
  for (int s = 1; s <= tower.level(n).step; ++s) {
    const StepData& sd = tower.step(s);
    if (sd.kind == StepKind::eisenstein) d = sd.degree * d + sd.relative_d;
  }
  return d;
}

std::vector<SpectrumEntry> spectrum(double alpha, const Tower& tower, int horizon, double max_value) {
  if (!(alpha > 0)) throw DomainError("spectrum: alpha must be positive");
  if (horizon < 1 || horizon > tower.depth()) throw DomainError("spectrum: horizon out of range");
  const long p = tower.p();
  const LevelData& H = tower.level(horizon);
  std::map<mpq_class, SpectrumEntry> entries;
  const long double lp = std::log(static_cast<long double>(p));
  const long double limit = std::log(static_cast<long double>(max_value)) * (1 + 1e-12L) + 1e-15L;
  for (int n = 1; n <= horizon; ++n) {
    const int e = tower.level(n).e;
    for (int N = 1;; ++N) {
      long double logv = static_cast<long double>(alpha) * N / e * lp;
      if (logv > limit) break;
      mpq_class key(N, e);
      key.canonicalize();
      auto [it, inserted] = entries.try_emplace(key);
      SpectrumEntry& s = it->second;
      if (inserted) {
        s.exponent = key;
        s.eigenvalue = static_cast<double>(std::exp(logv));
        mpq_class nh = key * H.e;
        mpz_class Nh = nh.get_num();
        mpz_class qpow;
        mpz_pow_ui(qpow.get_mpz_t(), H.q.get_mpz_t(), Nh.get_ui() - 1);
        s.multiplicity = (H.q - 1) * qpow;
      }
      s.pairs.emplace_back(n, N);
    }
  }
  std::vector<SpectrumEntry> out;
  SpectrumEntry zero;
  zero.exponent = 0;
  zero.eigenvalue = 0;
  zero.multiplicity = 1;
  out.push_back(zero);
  for (auto& [k, v] : entries) out.push_back(std::move(v));
  return out;
}

MultiplicityCount multiplicity_count(const Tower& tower, int n, int N, std::uint64_t cap) {
  if (N < 1) throw DomainError("multiplicity_count: N must be at least 1");
  const LevelData& L = tower.level(n);
  MultiplicityCount out;
  mpz_class qpow;
  mpz_pow_ui(qpow.get_mpz_t(), L.q.get_mpz_t(), static_cast<unsigned long>(N));
  if (qpow > cap) {
    out.enumerated = false;
    out.count = (L.q - 1) * (qpow / L.q);
    return out;
  }
  BallQuotient Q(tower, n, -N, 0, cap);
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < Q.size(); ++i)
    if (Q.valuation(i) == -N) ++count;
  out.count = mpz_class(static_cast<unsigned long>(count));
  return out;
}

double min_positive_eigenvalue(double alpha, const Tower& tower, int horizon) {
  if (horizon < 1 || horizon > tower.depth()) throw DomainError("min_positive_eigenvalue: horizon out of range");
  int e = 1;
  for (int n = 1; n <= horizon; ++n) e = std::max(e, tower.level(n).e);
  return std::pow(static_cast<double>(tower.p()), alpha / e);
}

}  // namespace infext
