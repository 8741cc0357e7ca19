#include "infext/vladimirov.hpp"

#include <cmath>

namespace infext {

namespace {

mpq_class qpow(const mpz_class& q, int k) {
  mpz_class a;
  mpz_pow_ui(a.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(std::abs(k)));
  return k >= 0 ? mpq_class(a) : mpq_class(mpz_class(1), a);
}

}  // namespace

double MultiplierSpec::operator()(double norm) const { return norm > 1.0 ? std::pow(norm, alpha) : 0.0; }

double MultiplierSpec::on_coset(const CylinderSpace& space, std::uint64_t xi) const {
  int w = space.dual().valuation(xi);
  if (w == kZeroValuation || w >= 0) return 0.0;
  return std::pow(static_cast<double>(space.field()->p()), -alpha * w / space.dual().e());
}

HypersingularKernel HypersingularKernel::make(const Tower& tower, int level, double alpha) {
  if (!(alpha > 0)) throw DomainError("HypersingularKernel: alpha must be positive");
  const LevelData& L = tower.level(level);
  HypersingularKernel k;
  k.level = level;
  k.alpha = alpha;
  k.p = tower.p();
  k.m = L.m;
  k.e = L.e;
  k.d = L.d;
  k.vp_m = L.vp_m;
  k.q = L.q.get_d();
  const double am = alpha / static_cast<double>(L.m);
  k.C = std::pow(k.q, L.d * am) * (1.0 - std::pow(k.q, am)) / (1.0 - std::pow(k.q, -1.0 - am));
  k.kappa = (1.0 - 1.0 / k.q) / (std::pow(k.q, am) - 1.0) * std::pow(k.q, -L.d * (1.0 + am));
  return k;
}

double HypersingularKernel::norm_m_factor() const {
  return std::pow(static_cast<double>(p), static_cast<double>(m) * vp_m);
}

double HypersingularKernel::bracket(int w) const {
  // log_p(||x|| / ||m||) = v_p(m) - w / e
  double log_ratio = static_cast<double>(vp_m) - static_cast<double>(w) / e;
  return std::pow(static_cast<double>(p), radial_exponent() * log_ratio) + kappa;
}

double HypersingularKernel::levy_density(int w) const { return -C * norm_m_factor() * bracket(w); }

CylFunction apply_multiplier(const CylFunction& f, const std::function<double(std::uint64_t)>& multiplier) {
  // Both transforms accumulate in long double: large multipliers amplify rounding in the coefficients.
  using Ext = std::complex<long double>;
  const CylinderSpace& S = *f.space;
  const std::uint64_t n = S.size(), nd = S.dual().size();
  std::vector<Ext> out(n, Ext(0.0L));
  for (std::uint64_t xi = 0; xi < nd; ++xi) {
    const long double m = multiplier(xi);
    if (m == 0.0L) continue;
    Ext c = 0.0L;
    for (std::uint64_t z = 0; z < n; ++z) c += S.character_ext(xi, z) * Ext(f.values[z].real(), f.values[z].imag());
    c *= m / static_cast<long double>(n);
    for (std::uint64_t z = 0; z < n; ++z) out[z] += c * std::conj(S.character_ext(xi, z));
  }
  CylFunction g = CylFunction::constant(f.space, 0.0);
  for (std::uint64_t z = 0; z < n; ++z) g.values[z] = {static_cast<double>(out[z].real()), static_cast<double>(out[z].imag())};
  return g;
}

CylFunction apply_spectral(double alpha, const CylFunction& f) {
  MultiplierSpec spec{alpha};
  const CylinderSpace& S = *f.space;
  return apply_multiplier(f, [&](std::uint64_t xi) { return spec.on_coset(S, xi); });
}

CylFunction apply_hypersingular(double alpha, const CylFunction& f) {
  const CylinderSpace& S = *f.space;
  const BallQuotient& G = S.group();
  HypersingularKernel K = HypersingularKernel::make(S.tower(), S.level(), alpha);
  const LevelData& L = S.tower().level(S.level());
  // Every nonzero coset c has constant norm; its Haar volume is q^{-(s0+t)}.
  const double vol = qpow(L.q, -(S.s0() + S.depth())).get_d();
  const long double q = K.q, am = static_cast<long double>(alpha) / K.m;
  const long double C = std::pow(q, K.d * am) * (1.0L - std::pow(q, am)) / (1.0L - std::pow(q, -1.0L - am));
  const long double kappa = (1.0L - 1.0L / q) / (std::pow(q, am) - 1.0L) * std::pow(q, -K.d * (1.0L + am));
  const long double prefactor = C * std::pow(static_cast<long double>(K.p), static_cast<long double>(K.m) * K.vp_m) * vol;
  const std::uint64_t n = G.size();
  std::vector<long double> weight(n, 0.0L);
  for (std::uint64_t c = 1; c < n; ++c) {
    const long double log_ratio = static_cast<long double>(K.vp_m) - static_cast<long double>(G.valuation(c)) / K.e;
    weight[c] = prefactor * (std::pow(static_cast<long double>(K.p), (-K.m - static_cast<long double>(alpha)) * log_ratio) + kappa);
  }
  CylFunction out = CylFunction::constant(f.space, 0.0);
  for (std::uint64_t z = 0; z < n; ++z) {
    const Complex fz = f.values[z];
    long double re = 0.0L, im = 0.0L;
    for (std::uint64_t c = 1; c < n; ++c) {
      const Complex d = f.values[G.sub(z, c)] - fz;
      re += weight[c] * d.real();
      im += weight[c] * d.imag();
    }
    out.values[z] = {static_cast<double>(re), static_cast<double>(im)};
  }
  return out;
}

EigenCheck eigencheck(const ExtElement& a, double alpha) {
  EigenCheck r;
  if (a.is_zero()) return r;
  const int w = a.normalized_valuation();
  r.expected = w < 0 ? std::pow(a.norm(), alpha) : 0.0;
  r.depth = std::max(1, -w);
  SpacePtr space = CylinderSpace::make(a.field(), a.level(), r.depth);
  std::uint64_t xi = space->locate_dual(a);
  CylFunction phi = CylFunction::character(space, xi);
  CylFunction out = apply_spectral(alpha, phi);
  Complex num = 0.0, den = 0.0;
  for (std::uint64_t z = 0; z < space->size(); ++z) {
    num += out.values[z] * std::conj(phi.values[z]);
    den += phi.values[z] * std::conj(phi.values[z]);
    r.residual = std::max(r.residual, std::abs(out.values[z] - r.expected * phi.values[z]));
  }
  r.measured = (num / den).real();
  return r;
}

double rho(double s, double t, double alpha) { return s > 1.0 ? std::exp(-t * std::pow(s, alpha)) : 1.0; }

ShellSeries heat_kernel_series(const Tower& tower, int level, std::optional<int> w, double t, double alpha,
                               double tolerance, int shell_cap) {
  if (!(t > 0)) throw DomainError("heat_kernel: t must be positive");
  const LevelData& L = tower.level(level);
  const double q = L.q.get_d();
  const double am = alpha / static_cast<double>(L.m);
  auto ej = [&](int j) { return j == 0 ? 1.0 : std::exp(-t * std::pow(q, j * am)); };
  auto shell_volume = [&](int j) {
    // Haar volume of {||z|| = q^{j/m}} (j >= 1) or of O (j = 0).
    if (j == 0) return mpq_class(1);
    mpq_class v = qpow(L.q, j) - qpow(L.q, j - 1);
    return v;
  };
  ShellSeries s;
  s.prefactor = qpow(L.q, -L.d).get_d();
  if (w) {
    const int J = L.d + *w;
    if (J < 0) return s;
    for (int j = 0; j <= J; ++j) s.shells.push_back({j, shell_volume(j), ej(j)});
    // The character averages to -1/(q-1) over the first shell outside the annihilator.
    s.shells.push_back({J + 1, shell_volume(J + 1), -ej(J + 1) / (q - 1.0)});
    return s;
  }
  for (int j = 0; j < shell_cap; ++j) {
    s.shells.push_back({j, shell_volume(j), ej(j)});
    const int k = j + 1;
    double ratio = q * std::exp(-t * std::pow(q, k * am) * (std::pow(q, am) - 1.0));
    double next = shell_volume(k).get_d() * ej(k);
    if (ratio < 1.0) {
      double bound = next / (1.0 - ratio);
      if (bound * s.prefactor < tolerance) {
        s.tail_bound = bound;
        s.tail_ratio = ratio;
        return s;
      }
    }
  }
  throw PrecisionError("heat_kernel: tail bound above tolerance within the shell cap");
}

double heat_kernel(const ExtElement& z, double t, double alpha) {
  const Tower& T = z.field()->tower();
  std::optional<int> w;
  if (!z.is_zero()) w = z.normalized_valuation();
  return heat_kernel_series(T, z.level(), w, t, alpha).total();
}

ShellSeries heat_kernel_mass(const Tower& tower, int level, double t, double alpha, double tolerance,
                             int shell_cap) {
  const LevelData& L = tower.level(level);
  const double g0 = heat_kernel_series(tower, level, std::nullopt, t, alpha, tolerance * 1e-3, shell_cap).total();
  ShellSeries s;
  for (int w = -L.d; w < -L.d + shell_cap; ++w) {
    mpq_class vol = qpow(L.q, -w) - qpow(L.q, -w - 1);
    s.shells.push_back({w, vol, heat_kernel_series(tower, level, w, t, alpha).total()});
    double tail = g0 * qpow(L.q, -w).get_d();
    if (tail < tolerance) {
      s.tail_bound = tail;
      s.tail_ratio = 1.0 / L.q.get_d();
      return s;
    }
  }
  throw PrecisionError("heat_kernel_mass: tail bound above tolerance within the shell cap");
}

CylFunction semigroup_apply(double t, double alpha, const CylFunction& f) {
  if (!(t > 0)) throw DomainError("semigroup_apply: t must be positive");
  MultiplierSpec spec{alpha};
  const CylinderSpace& S = *f.space;
  return apply_multiplier(f, [&](std::uint64_t xi) { return std::exp(-t * spec.on_coset(S, xi)); });
}

std::vector<Complex> operator_matrix(double alpha, const SpacePtr& space) {
  const std::uint64_t n = space->size();
  std::vector<Complex> M(n * n);
  for (std::uint64_t z0 = 0; z0 < n; ++z0) {
    CylFunction col = apply_spectral(alpha, CylFunction::indicator(space, z0));
    for (std::uint64_t z = 0; z < n; ++z) M[z * n + z0] = col.values[z];
  }
  return M;
}

}  // namespace infext
