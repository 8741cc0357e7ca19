#include "infext/measures.hpp"

#include <cmath>

namespace infext {

namespace {

mpq_class qpow(const mpz_class& q, int k) {
  mpz_class a;
  mpz_pow_ui(a.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(std::abs(k)));
  return k >= 0 ? mpq_class(a) : mpq_class(mpz_class(1), a);
}

double log10_mpz(const mpz_class& x) {
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, x.get_mpz_t());
  return std::log10(mant) + static_cast<double>(exp2) * std::log10(2.0);
}

}  // namespace

double log10_rational(const mpq_class& r) {
  if (r <= 0) throw DomainError("log10_rational: nonpositive argument");
  return log10_mpz(r.get_num()) - log10_mpz(r.get_den());
}

mpq_class mu_cylinder(const Tower& tower, int n, int N) {
  if (N < 1) throw DomainError("mu_cylinder: N must be at least 1");
  const LevelData& L = tower.level(n);
  // ||z|| <= q^{d/m - N/f} ||m||  <=>  w(z) >= e v_p(m) - d + N e.
  const int radius_exponent = L.e * L.vp_m - L.d + N * L.e;
  mpq_class density = qpow(L.q, -L.d) * qpow(L.q, L.e * L.vp_m);
  mpq_class volume = qpow(L.q, -radius_exponent);
  mpq_class r = density * volume;
  r.canonicalize();
  return r;
}

ShellSeries heat_cylinder_series(const Tower& tower, int n, int N, double t, double alpha) {
  if (!(t > 0)) throw DomainError("heat_cylinder: t must be positive");
  if (N < 1) throw DomainError("heat_cylinder: N must be at least 1");
  const LevelData& L = tower.level(n);
  const double q = L.q.get_d();
  ShellSeries s;
  s.prefactor = qpow(L.q, -N * L.e).get_d();
  s.shells.push_back({0, mpq_class(1), 1.0});
  for (int j = 1; j <= N * L.e; ++j) {
    mpq_class vol = qpow(L.q, j) - qpow(L.q, j - 1);
    s.shells.push_back({j, vol, std::exp(-t * std::pow(q, j * alpha / static_cast<double>(L.m)))});
  }
  return s;
}

double heat_cylinder(const Tower& tower, int n, int N, double t, double alpha) {
  return heat_cylinder_series(tower, n, N, t, alpha).total();
}

ShellSeries heat_cylinder_gamma(const Tower& tower, int n, int N, double t, double alpha, double tolerance,
                                int shell_cap) {
  const LevelData& L = tower.level(n);
  const int k0 = N * L.e - L.d;
  const double g0 = heat_kernel_series(tower, n, std::nullopt, t, alpha, tolerance * 1e-3, shell_cap).total();
  ShellSeries s;
  for (int k = k0; k < k0 + shell_cap; ++k) {
    mpq_class vol = qpow(L.q, -k) - qpow(L.q, -k - 1);
    s.shells.push_back({k, vol, heat_kernel_series(tower, n, k, t, alpha).total()});
    // Gamma(zeta) <= Gamma(0) on the rest of the ball.
    double tail = g0 * qpow(L.q, -k - 1).get_d();
    if (tail < tolerance) {
      s.tail_bound = tail;
      s.tail_ratio = 1.0 / L.q.get_d();
      return s;
    }
  }
  throw PrecisionError("heat_cylinder_gamma: tail bound above tolerance within the shell cap");
}

double heat_lower_bound(const Tower& tower, int N, double t, double alpha) {
  const double q1 = static_cast<double>(tower.p());
  return (1.0 - 1.0 / q1) * std::exp(-t * std::pow(q1, alpha * N));
}

MeasureReport theorem3_report(const Tower& tower, int N, double t, double alpha, int horizon,
                              double witness_threshold) {
  if (horizon < 1 || horizon > tower.depth()) throw DomainError("theorem3_report: horizon out of range");
  MeasureReport rep;
  rep.p = tower.p();
  rep.N = N;
  rep.t = t;
  rep.alpha = alpha;
  rep.horizon = horizon;
  rep.witness_log10_threshold = std::log10(witness_threshold);
  const double bound = heat_lower_bound(tower, N, t, alpha);
  for (int n = 1; n <= horizon; ++n) {
    MeasureRow row;
    row.n = n;
    row.mu = mu_cylinder(tower, n, N);
    row.pi = heat_cylinder(tower, n, N, t, alpha);
    row.pi_gamma = heat_cylinder_gamma(tower, n, N, t, alpha).total();
    row.lower_bound = bound;
    row.log10_ratio = std::log10(row.pi) - log10_rational(row.mu);
    if (!rep.rows.empty()) {
      if (!(row.mu < rep.rows.back().mu)) rep.mu_decreasing = false;
      if (!(row.log10_ratio > rep.rows.back().log10_ratio)) rep.ratio_increasing = false;
    }
    if (row.pi < bound) rep.bound_holds = false;
    rep.rows.push_back(std::move(row));
  }
  if (horizon == 1) {
    rep.flag = "indeterminate";
  } else {
    bool ok = rep.ratio_increasing && rep.rows.back().log10_ratio > rep.witness_log10_threshold;
    rep.flag = ok ? "pass" : "fail";
  }
  return rep;
}

std::vector<double> levy_coset_masses(const CylinderSpace& space, double alpha) {
  const Tower& T = space.tower();
  const LevelData& L = T.level(space.level());
  const HypersingularKernel K = HypersingularKernel::make(T, space.level(), alpha);
  const double q = L.q.get_d();
  const double am = alpha / static_cast<double>(L.m);
  // x = z / m: |x|_n = q^{e v_p(m) - w(z)}, and each coset has x-volume q^{-(s0+t)} |m|_n^{-1}.
  const double xvol = qpow(L.q, L.e * L.vp_m - space.s0() - space.depth()).get_d();
  const BallQuotient& G = space.group();
  std::vector<double> out(G.size(), 0.0);
  for (std::uint64_t c = 1; c < G.size(); ++c) {
    int w = G.valuation(c);
    double log_q_abs_x = static_cast<double>(L.e * L.vp_m - w);
    double kernel = std::pow(q, -log_q_abs_x * (1.0 + am)) + K.kappa;
    out[c] = -K.C * kernel * xvol;
  }
  return out;
}

double levy_cylinder(double alpha, const CylFunction& phi) {
  if (std::abs(phi.values.at(0)) != 0.0)
    throw DomainError("levy_cylinder: the function does not vanish near 0 at this resolution");
  auto mass = levy_coset_masses(*phi.space, alpha);
  double s = 0.0;
  for (std::uint64_t c = 1; c < mass.size(); ++c) s += mass[c] * phi.values[c].real();
  return s;
}

double levy_cylinder_fourier(double alpha, const CylFunction& phi) {
  if (std::abs(phi.values.at(0)) != 0.0)
    throw DomainError("levy_cylinder: the function does not vanish near 0 at this resolution");
  SpectralCoefficients c = fourier(phi);
  MultiplierSpec spec{alpha};
  Complex s = 0.0;
  for (std::uint64_t xi = 0; xi < c.coeffs.size(); ++xi) s += spec.on_coset(*phi.space, xi) * c.coeffs[xi];
  return -s.real();
}

LevyKhinchin levy_khinchin_check(const ExtElement& lambda, double t, double alpha) {
  LevyKhinchin r;
  const int w = lambda.is_zero() ? 0 : lambda.normalized_valuation();
  const int depth = std::max(1, -w);
  SpacePtr space = CylinderSpace::make(lambda.field(), lambda.level(), depth);
  const std::uint64_t xi = space->locate_dual(lambda);
  auto mass = levy_coset_masses(*space, alpha);
  for (std::uint64_t c = 1; c < space->size(); ++c) {
    if (space->phase(xi, c) == 0) continue;
    Complex d = space->character(xi, c) - 1.0;
    r.lhs += t * mass[c] * d.real();
    r.lhs_imag += t * mass[c] * d.imag();
  }
  r.rhs = (!lambda.is_zero() && w < 0) ? -t * std::pow(lambda.norm(), alpha) : 0.0;
  return r;
}

int delta_valuation_bound(const Tower& tower, int n, double delta) {
  if (!(delta > 0) || delta > 1) throw DomainError("levy_total_outside: delta must lie in (0, 1]");
  const int e = tower.level(n).e;
  // ||x|| = p^{-w/e} >= delta  <=>  w <= -e log_p(delta).
  double x = -e * std::log(delta) / std::log(static_cast<double>(tower.p()));
  return static_cast<int>(std::floor(x + 1e-9));
}

ShellSeries levy_total_outside(const Tower& tower, int n, double delta, double alpha) {
  const LevelData& L = tower.level(n);
  const HypersingularKernel K = HypersingularKernel::make(tower, n, alpha);
  const int w_max = delta_valuation_bound(tower, n, delta);
  ShellSeries s;
  for (int w = L.s0(); w <= w_max; ++w) {
    mpq_class vol = qpow(L.q, -w) - qpow(L.q, -w - 1);
    s.shells.push_back({w, vol, K.levy_density(w)});
  }
  return s;
}

std::vector<RoutePair> hypersingular_vs_levy(double alpha, const CylFunction& f) {
  const CylinderSpace& S = *f.space;
  const BallQuotient& G = S.group();
  CylFunction lhs = apply_hypersingular(alpha, f);
  auto mass = levy_coset_masses(S, alpha);
  std::vector<RoutePair> out(G.size());
  for (std::uint64_t y = 0; y < G.size(); ++y) {
    Complex acc = 0.0;
    for (std::uint64_t c = 1; c < G.size(); ++c) acc += mass[c] * (f.values[y] - f.values[G.add(y, c)]);
    out[y] = {lhs.values[y], acc};
  }
  return out;
}

std::vector<double> heat_coset_masses(const CylinderSpace& space, double t, double alpha) {
  const std::uint64_t n = space.size();
  std::vector<double> out(n, 0.0);
  MultiplierSpec spec{alpha};
  std::vector<double> r(space.dual().size());
  for (std::uint64_t xi = 0; xi < r.size(); ++xi) r[xi] = std::exp(-t * spec.on_coset(space, xi));
  for (std::uint64_t z = 0; z < n; ++z) {
    Complex acc = 0.0;
    for (std::uint64_t xi = 0; xi < r.size(); ++xi) acc += r[xi] * std::conj(space.character(xi, z));
    out[z] = acc.real() / static_cast<double>(n);
  }
  return out;
}

double evaluate(const Tower& tower, const CylinderSet& set, MeasureKind kind, double t, double alpha) {
  switch (set.kind) {
    case CylinderSet::Kind::ball:
      if (kind == MeasureKind::gaussian) return mu_cylinder(tower, set.level, set.N).get_d();
      if (kind == MeasureKind::heat) return heat_cylinder(tower, set.level, set.N, t, alpha);
      throw DomainError("evaluate: the Levy measure of a ball around 0 is infinite");
    case CylinderSet::Kind::outside:
      if (kind == MeasureKind::levy) return t * levy_total_outside(tower, set.level, set.delta, alpha).total();
      throw DomainError("evaluate: outside sets are only evaluated for the Levy measure");
    case CylinderSet::Kind::indicator: {
      const CylFunction& phi = set.indicator;
      if (kind == MeasureKind::gaussian) return mu_integral(phi).real();
      if (kind == MeasureKind::levy) return t * levy_cylinder(alpha, phi);
      auto mass = heat_coset_masses(*phi.space, t, alpha);
      double s = 0.0;
      for (std::uint64_t z = 0; z < mass.size(); ++z) s += mass[z] * phi.values[z].real();
      return s;
    }
  }
  return 0.0;
}

}  // namespace infext
