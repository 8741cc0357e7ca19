#include "infext/funcspace.hpp"

#include <cmath>
#include <numbers>

namespace infext {

namespace {

constexpr std::uint64_t kRootTableCap = std::uint64_t{1} << 20;
constexpr std::uint64_t kCharacterTableCap = std::uint64_t{1} << 22;

int space_s0(const FieldPtr& field, int level) { return field->tower().level(level).s0(); }

}  // namespace

CylinderSpace::CylinderSpace(FieldPtr field, int level, int depth)
    : field_(std::move(field)),
      level_(level),
      depth_(depth),
      s0_(space_s0(field_, level)),
      group_(field_->tower(), level, s0_, s0_ + depth),
      dual_(field_->tower(), level, -depth, 0) {
  const long p = field_->p();
  const int P = field_->ring_digits();
  const int d = group_.dim();
  const long m = tower().level(level).m;
  const auto& Q = field_->trace_form(level);
  const PadicScalar inv_m = PadicScalar::from_integer(p, m, P).inverse();

  // E_ij = l^D_i + l^G_j + v(Q_ij / m); only negative exponents reach the phase.
  std::vector<int> E(static_cast<size_t>(d * d));
  std::vector<PadicScalar> T(static_cast<size_t>(d * d));
  int min_e = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      PadicScalar t = PadicScalar::from_parts(p, 0, Q[i][j], P) * inv_m;
      int base = dual_.lower(i) + group_.lower(j);
      int e = t.is_zero() ? base + t.absolute_precision() : base + t.valuation();
      if (t.is_zero() && e < 0) throw PrecisionError("CylinderSpace: trace form precision too low for this depth");
      if (!t.is_zero() && e < 0 && t.relative_precision() < -e)
        throw PrecisionError("CylinderSpace: trace form precision too low for this depth");
      E[static_cast<size_t>(i * d + j)] = e;
      T[static_cast<size_t>(i * d + j)] = t;
      if (!t.is_zero()) min_e = std::min(min_e, e);
    }
  }
  phase_exponent_ = -min_e;
  phase_modulus_ = ipow(p, phase_exponent_);
  if (phase_modulus_ >= (mpz_class(1) << 62)) throw DomainError("CylinderSpace: phase modulus exceeds 62 bits");
  pk_ = phase_modulus_.get_ui();

  std::vector<std::uint64_t> W(static_cast<size_t>(d * d), 0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const auto& t = T[static_cast<size_t>(i * d + j)];
      int e = E[static_cast<size_t>(i * d + j)];
      if (t.is_zero() || e >= 0) continue;
      W[static_cast<size_t>(i * d + j)] = mod(t.unit() * ipow(p, e + phase_exponent_), phase_modulus_).get_ui();
    }

  const std::uint64_t n = group_.size();
  h_.assign(n * static_cast<std::uint64_t>(d), 0);
  std::vector<std::uint64_t> g(static_cast<size_t>(d));
  for (std::uint64_t z = 0; z < n; ++z) {
    group_.digits(z, g);
    for (int i = 0; i < d; ++i) {
      unsigned __int128 acc = 0;
      for (int j = 0; j < d; ++j) acc += static_cast<unsigned __int128>(W[static_cast<size_t>(i * d + j)]) * g[j];
      h_[z * d + i] = static_cast<std::uint64_t>(acc % pk_);
    }
  }
  dual_digits_.assign(dual_.size() * static_cast<std::uint64_t>(d), 0);
  for (std::uint64_t xi = 0; xi < dual_.size(); ++xi) {
    dual_.digits(xi, g);
    for (int i = 0; i < d; ++i) dual_digits_[xi * d + i] = g[i];
  }
  if (pk_ <= kRootTableCap) {
    roots_.resize(pk_);
    roots_ext_.resize(pk_);
    for (std::uint64_t k = 0; k < pk_; ++k) {
      const long double a = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k) / static_cast<long double>(pk_);
      roots_ext_[k] = {std::cos(a), std::sin(a)};
      roots_[k] = {static_cast<double>(roots_ext_[k].real()), static_cast<double>(roots_ext_[k].imag())};
    }
  }
  if (n * dual_.size() <= kCharacterTableCap) {
    table_.resize(n * dual_.size());
    for (std::uint64_t xi = 0; xi < dual_.size(); ++xi)
      for (std::uint64_t z = 0; z < n; ++z) {
        std::uint64_t k = phase(xi, z);
        if (!roots_.empty()) {
          table_[xi * n + z] = roots_[k];
        } else {
          double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(pk_);
          table_[xi * n + z] = {std::cos(a), std::sin(a)};
        }
      }
  }
}

std::shared_ptr<const CylinderSpace> CylinderSpace::make(FieldPtr field, int level, int depth) {
  if (depth < 0) throw DomainError("CylinderSpace: depth must be nonnegative");
  if (level > field->max_level()) throw DomainError("CylinderSpace: level not realized by the field");
  return std::shared_ptr<const CylinderSpace>(new CylinderSpace(std::move(field), level, depth));
}

std::uint64_t CylinderSpace::phase(std::uint64_t xi, std::uint64_t z) const {
  const int d = group_.dim();
  unsigned __int128 acc = 0;
  for (int i = 0; i < d; ++i)
    acc += static_cast<unsigned __int128>(dual_digits_[xi * d + i]) * h_[z * d + i];
  return static_cast<std::uint64_t>(acc % pk_);
}

Complex CylinderSpace::character(std::uint64_t xi, std::uint64_t z) const {
  if (!table_.empty()) return table_[xi * group_.size() + z];
  std::uint64_t k = phase(xi, z);
  if (!roots_.empty()) return roots_[k];
  double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(pk_);
  return {std::cos(a), std::sin(a)};
}

std::complex<long double> CylinderSpace::character_ext(std::uint64_t xi, std::uint64_t z) const {
  std::uint64_t k = phase(xi, z);
  if (!roots_ext_.empty()) return roots_ext_[k];
  const long double a = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k) / static_cast<long double>(pk_);
  return {std::cos(a), std::sin(a)};
}

double CylinderSpace::dual_norm(std::uint64_t xi) const {
  int w = dual_.valuation(xi);
  if (w == kZeroValuation) return 0.0;
  return std::pow(static_cast<double>(field_->p()), -static_cast<double>(w) / dual_.e());
}

double CylinderSpace::group_norm(std::uint64_t z) const {
  int w = group_.valuation(z);
  if (w == kZeroValuation) return 0.0;
  return std::pow(static_cast<double>(field_->p()), -static_cast<double>(w) / group_.e());
}

CylFunction CylFunction::constant(SpacePtr space, Complex c) {
  CylFunction f;
  f.values.assign(space->size(), c);
  f.space = std::move(space);
  return f;
}

CylFunction CylFunction::indicator(SpacePtr space, std::uint64_t coset) {
  CylFunction f = constant(std::move(space), 0.0);
  f.values.at(coset) = 1.0;
  return f;
}

CylFunction CylFunction::character(SpacePtr space, std::uint64_t xi) {
  CylFunction f = constant(space, 0.0);
  for (std::uint64_t z = 0; z < space->size(); ++z) f.values[z] = space->character(xi, z);
  return f;
}

CylFunction CylFunction::ball_indicator(SpacePtr space, int k) {
  if (k > space->s0() + space->depth()) throw DomainError("ball_indicator: ball finer than the quotient resolution");
  CylFunction f = constant(space, 0.0);
  for (std::uint64_t z = 0; z < space->size(); ++z) f.values[z] = space->group().valuation(z) >= k ? 1.0 : 0.0;
  return f;
}

double CylFunction::sup_norm() const {
  double m = 0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

Complex haar_integral(const CylFunction& f) {
  Complex s = 0;
  for (const auto& v : f.values) s += v;
  return s / static_cast<double>(f.values.size());
}

mpq_class mu_coset_weight(const CylinderSpace& space) {
  const LevelData& L = space.tower().level(space.level());
  // density q^{-d} ||m||^{-m} = q^{e v_p(m) - d}; coset volume q^{-(s0 + t)} with vol(O) = 1.
  auto qpow = [&](int k) {
    mpz_class a;
    mpz_pow_ui(a.get_mpz_t(), L.q.get_mpz_t(), static_cast<unsigned long>(std::abs(k)));
    return k >= 0 ? mpq_class(a) : mpq_class(mpz_class(1), a);
  };
  mpq_class density = qpow(L.e * L.vp_m - L.d);
  mpq_class vol = qpow(-(space.s0() + space.depth()));
  mpq_class w = density * vol;
  w.canonicalize();
  return w;
}

Complex mu_integral(const CylFunction& f) {
  Complex s = 0;
  for (const auto& v : f.values) s += v;
  return s * mu_coset_weight(*f.space).get_d();
}

SpectralCoefficients fourier(const CylFunction& f) {
  const auto& S = *f.space;
  const std::uint64_t n = S.size();
  SpectralCoefficients c;
  c.space = f.space;
  c.coeffs.assign(S.dual().size(), 0.0);
  for (std::uint64_t xi = 0; xi < S.dual().size(); ++xi) {
    Complex acc = 0;
    for (std::uint64_t z = 0; z < n; ++z) acc += S.character(xi, z) * f.values[z];
    c.coeffs[xi] = acc / static_cast<double>(n);
  }
  return c;
}

CylFunction inverse_fourier(const SpectralCoefficients& c) {
  const auto& S = *c.space;
  CylFunction f = CylFunction::constant(c.space, 0.0);
  for (std::uint64_t xi = 0; xi < S.dual().size(); ++xi) {
    if (c.coeffs[xi] == Complex(0.0)) continue;
    for (std::uint64_t z = 0; z < S.size(); ++z) f.values[z] += c.coeffs[xi] * std::conj(S.character(xi, z));
  }
  return f;
}

PlancherelSides plancherel_check(const CylFunction& phi, const CylFunction& psi) {
  if (phi.space != psi.space) throw DomainError("plancherel_check: functions live on different quotients");
  PlancherelSides out;
  for (size_t z = 0; z < phi.values.size(); ++z) out.lhs += phi.values[z] * std::conj(psi.values[z]);
  out.lhs /= static_cast<double>(phi.values.size());
  auto a = fourier(phi), b = fourier(psi);
  for (size_t xi = 0; xi < a.coeffs.size(); ++xi) out.rhs += a.coeffs[xi] * std::conj(b.coeffs[xi]);
  return out;
}

CylFunction refine_level(const CylFunction& f, int target_level) {
  const auto& S = *f.space;
  const int n = S.level();
  if (target_level == n) return f;
  if (target_level < n) throw DomainError("refine_level: target level below the function's level");
  int depth = S.tower().relative_ramification(n, target_level) * S.depth();
  SpacePtr target = CylinderSpace::make(S.field(), target_level, depth);
  CylFunction g = CylFunction::constant(target, 0.0);
  for (std::uint64_t z = 0; z < target->size(); ++z) {
    ExtElement x = target->group_element(z);
    g.values[z] = f.values[S.locate_group(x.project_T(n))];
  }
  return g;
}

}  // namespace infext
