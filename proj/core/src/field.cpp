#include "infext/field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "finite_field.hpp"

namespace infext {

namespace {

constexpr int kGuardDigits = 16;

ZVec pad(const ZVec& v, size_t n) {
  ZVec r(n, 0);
  for (size_t i = 0; i < std::min(n, v.size()); ++i) r[i] = v[i];
  return r;
}

bool all_zero(const ZVec& v) {
  return std::all_of(v.begin(), v.end(), [](const mpz_class& x) { return x == 0; });
}

}  // namespace

namespace detail {

std::vector<PadicScalar> solve_padic(std::vector<std::vector<PadicScalar>> a, std::vector<PadicScalar> b,
                                     int* det_valuation) {
  const size_t n = a.size();
  int det = 0;
  for (size_t k = 0; k < n; ++k) {
    size_t piv = n;
    int best = 0;
    for (size_t i = k; i < n; ++i) {
      if (a[i][k].is_zero()) continue;
      int v = a[i][k].valuation();
      if (piv == n || v < best) {
        piv = i;
        best = v;
      }
    }
    if (piv == n) throw PrecisionError("solve_padic: matrix singular at working precision");
    std::swap(a[piv], a[k]);
    std::swap(b[piv], b[k]);
    det += best;
    for (size_t i = k + 1; i < n; ++i) {
      if (a[i][k].is_zero()) continue;
      PadicScalar factor = a[i][k] / a[k][k];
      for (size_t j = k + 1; j < n; ++j) a[i][j] = a[i][j] - factor * a[k][j];
      b[i] = b[i] - factor * b[k];
    }
  }
  std::vector<PadicScalar> y(n);
  for (size_t k = n; k-- > 0;) {
    PadicScalar acc = b[k];
    for (size_t j = k + 1; j < n; ++j) acc = acc - a[k][j] * y[j];
    y[k] = acc / a[k][k];
  }
  if (det_valuation) *det_valuation = det;
  return y;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// TowerField

TowerField::TowerField(const Tower& tower, int max_level, int precision)
    : tower_(tower), max_level_(max_level), precision_(precision) {
  if (precision < 4) throw DomainError("TowerField: precision must be at least 4 digits");
  ring_digits_ = precision + kGuardDigits;
  modulus_ = ipow(tower.p(), ring_digits_);
  build_rings();
}

std::shared_ptr<const TowerField> TowerField::realize(const Tower& tower, int max_level, int precision) {
  if (max_level <= 0) max_level = tower.depth();
  if (max_level > tower.depth()) throw DomainError("TowerField: max_level exceeds tower depth");
  return std::shared_ptr<const TowerField>(new TowerField(tower, max_level, precision));
}

int TowerField::dim(int level) const {
  if (level < 1 || level > max_level_) throw DomainError("TowerField: level not realized");
  return static_cast<int>(rings_[static_cast<size_t>(tower_.level(level).step)].dim);
}

ZVec TowerField::reduce(ZVec v) const {
  for (auto& x : v) x = mod(x, modulus_);
  return v;
}

ZVec TowerField::mul_step(int s, const ZVec& a, const ZVec& b) const {
  if (s == 0) return {mod(a[0] * b[0], modulus_)};
  const StepRing& R = rings_[static_cast<size_t>(s)];
  const int r = R.degree;
  const size_t dp = R.dim_prev;
  if (r == 1) return mul_step(s - 1, a, b);
  auto slice = [&](const ZVec& v, int j) { return ZVec(v.begin() + j * dp, v.begin() + (j + 1) * dp); };
  std::vector<ZVec> A(r), B(r);
  std::vector<bool> az(r), bz(r);
  for (int j = 0; j < r; ++j) {
    A[j] = slice(a, j);
    B[j] = slice(b, j);
    az[j] = all_zero(A[j]);
    bz[j] = all_zero(B[j]);
  }
  std::vector<ZVec> prod(2 * r - 1, ZVec(dp, 0));
  for (int i = 0; i < r; ++i) {
    if (az[i]) continue;
    for (int j = 0; j < r; ++j) {
      if (bz[j]) continue;
      ZVec c = mul_step(s - 1, A[i], B[j]);
      for (size_t k = 0; k < dp; ++k) prod[i + j][k] += c[k];
    }
  }
  for (int k = 2 * r - 2; k >= r; --k) {
    ZVec c = reduce(prod[k]);
    if (all_zero(c)) continue;
    for (int j = 0; j < r; ++j) {
      ZVec t = mul_step(s - 1, c, R.poly[j]);
      for (size_t i = 0; i < dp; ++i) prod[k - r + j][i] -= t[i];
    }
  }
  ZVec out(R.dim);
  for (int j = 0; j < r; ++j)
    for (size_t i = 0; i < dp; ++i) out[j * dp + i] = mod(prod[j][i], modulus_);
  return out;
}

ZVec TowerField::mul(int level, const ZVec& a, const ZVec& b) const {
  const size_t d = static_cast<size_t>(dim(level));
  if (a.size() != d || b.size() != d) throw DomainError("TowerField::mul: coordinate length mismatch");
  return mul_step(tower_.level(level).step, a, b);
}

ZVec TowerField::trace(int from_level, int to_level, const ZVec& a) const {
  if (to_level > from_level) throw DomainError("TowerField::trace: target above source");
  int s_from = tower_.level(from_level).step, s_to = tower_.level(to_level).step;
  if (a.size() != rings_[static_cast<size_t>(s_from)].dim) throw DomainError("TowerField::trace: length mismatch");
  ZVec x = a;
  for (int s = s_from; s > s_to; --s) {
    const StepRing& R = rings_[static_cast<size_t>(s)];
    const size_t dp = R.dim_prev;
    ZVec acc(dp, 0);
    for (int j = 0; j < R.degree; ++j) {
      ZVec xj(x.begin() + j * dp, x.begin() + (j + 1) * dp);
      if (all_zero(xj)) continue;
      ZVec t = mul_step(s - 1, xj, R.power_sums[j]);
      for (size_t i = 0; i < dp; ++i) acc[i] += t[i];
    }
    x = reduce(std::move(acc));
  }
  return x;
}

ZVec TowerField::embed(int from_level, int to_level, const ZVec& a) const {
  if (to_level < from_level) throw DomainError("TowerField::embed: target below source");
  return pad(a, static_cast<size_t>(dim(to_level)));
}

ZVec TowerField::uniformizer(int level) const {
  const size_t d = static_cast<size_t>(dim(level));
  int s = tower_.uniformizer_step(level);
  ZVec u(d, 0);
  if (s == 0) {
    u[0] = tower_.p();
  } else {
    u[rings_[static_cast<size_t>(s)].dim_prev] = 1;
  }
  return u;
}

void TowerField::build_rings() {
  const long p = tower_.p();
  const int last_step = tower_.level(max_level_).step;
  rings_.assign(static_cast<size_t>(last_step) + 1, StepRing{});

  int F = 1;
  for (int s = 1; s <= last_step; ++s) F = std::max(F, tower_.step(s).f);

  detail::ResidueRing rr;
  ZVec tau;
  if (F > 1) {
    detail::FpPoly g = detail::primitive_polynomial(p, F);
    rr.modulus_poly.resize(g.size());
    for (size_t i = 0; i < g.size(); ++i) rr.modulus_poly[i] = g[i];
    rr.M = modulus_;
    tau = rr.x();
    mpz_class q = ipow(p, F);
    for (int k = 0; k <= ring_digits_; ++k) tau = rr.pow(tau, q);
  }
  auto omega = [&](int f) {
    mpz_class k = (ipow(p, F) - 1) / (ipow(p, f) - 1);
    return rr.pow(tau, k);
  };

  ZVec theta;  // current unramified generator (a primitive root of unity), empty before any
  for (int s = 1; s <= last_step; ++s) {
    const StepData& sd = tower_.step(s);
    const StepSpec& spec = tower_.spec().steps[static_cast<size_t>(s - 1)];
    StepRing R;
    R.degree = sd.degree;
    R.dim_prev = rings_[static_cast<size_t>(s - 1)].dim;
    R.dim = R.dim_prev * static_cast<size_t>(R.degree);
    const int r = R.degree;
    const size_t dp = R.dim_prev;

    if (sd.kind == StepKind::eisenstein) {
      for (int k = 0; k < r; ++k) R.poly.push_back(reduce(pad(spec.coefficients[static_cast<size_t>(k)], dp)));
    } else if (r == 1) {
      R.poly.push_back(ZVec(dp, 0));
    } else {
      const int f = sd.f, fprev = sd.f / r;
      ZVec w = omega(f);
      // prod_{i<r} (Z - w^{p^{fprev i}}) over the residue model, low degree first.
      std::vector<ZVec> P{rr.one()};
      ZVec root = w;
      mpz_class frob = ipow(p, fprev);
      for (int i = 0; i < r; ++i) {
        std::vector<ZVec> next(P.size() + 1, ZVec(static_cast<size_t>(F), 0));
        for (size_t k = 0; k < P.size(); ++k) {
          next[k + 1] = rr.add(next[k + 1], P[k]);
          next[k] = rr.sub(next[k], rr.mul(root, P[k]));
        }
        P = std::move(next);
        root = rr.pow(root, frob);
      }
      std::vector<ZVec> cols;
      if (fprev > 1) {
        ZVec wp = omega(fprev), acc = rr.one();
        for (int j = 0; j < fprev; ++j) {
          cols.push_back(acc);
          acc = rr.mul(acc, wp);
        }
      }
      std::vector<ZVec> theta_pows;
      if (fprev > 1) {
        ZVec acc = pad(ZVec{1}, dp);
        for (int j = 0; j < fprev; ++j) {
          theta_pows.push_back(acc);
          acc = mul_step(s - 1, acc, theta);
        }
      }
      for (int k = 0; k < r; ++k) {
        ZVec c(dp, 0);
        if (fprev == 1) {
          for (int j = 1; j < F; ++j)
            if (P[k][j] != 0) throw std::logic_error("TowerField: unramified coefficient not in Z_p");
          c[0] = P[k][0];
        } else {
          ZVec x = detail::solve_unit_columns(cols, P[k], modulus_, p);
          for (int j = 0; j < fprev; ++j)
            for (size_t i = 0; i < dp; ++i) c[i] += x[j] * theta_pows[j][i];
        }
        R.poly.push_back(reduce(std::move(c)));
      }
    }

    // Newton's identities: p_k = -(k c_{r-k} + sum_{i=1}^{k-1} c_{r-i} p_{k-i}).
    rings_[static_cast<size_t>(s)] = R;
    StepRing& Rs = rings_[static_cast<size_t>(s)];
    Rs.power_sums.assign(static_cast<size_t>(r), ZVec(dp, 0));
    Rs.power_sums[0][0] = r;
    for (int k = 1; k < r; ++k) {
      ZVec acc(dp, 0);
      for (size_t i = 0; i < dp; ++i) acc[i] = k * Rs.poly[static_cast<size_t>(r - k)][i];
      for (int i = 1; i < k; ++i) {
        ZVec t = mul_step(s - 1, Rs.poly[static_cast<size_t>(r - i)], Rs.power_sums[static_cast<size_t>(k - i)]);
        for (size_t j = 0; j < dp; ++j) acc[j] += t[j];
      }
      for (auto& x : acc) x = mod(-x, modulus_);
      Rs.power_sums[static_cast<size_t>(k)] = std::move(acc);
    }

    if (sd.kind == StepKind::unramified && r > 1) {
      theta.assign(R.dim, 0);
      theta[dp] = 1;
    } else if (!theta.empty()) {
      theta = pad(theta, R.dim);
    }
  }

  for (int n = 1; n <= max_level_; ++n) {
    const size_t d = static_cast<size_t>(dim(n));
    std::vector<ZVec> Q(d, ZVec(d));
    for (size_t i = 0; i < d; ++i) {
      for (size_t j = i; j < d; ++j) {
        ZVec bi(d, 0), bj(d, 0);
        bi[i] = 1;
        bj[j] = 1;
        ZVec t = trace(n, 1, mul(n, bi, bj));
        Q[i][j] = Q[j][i] = t[0];
      }
    }
    std::vector<std::vector<PadicScalar>> A(d, std::vector<PadicScalar>(d));
    std::vector<PadicScalar> rhs(d, PadicScalar::zero(p, ring_digits_));
    rhs[0] = PadicScalar::from_integer(p, 1, ring_digits_);
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) A[i][j] = PadicScalar::from_parts(p, 0, Q[i][j], ring_digits_);
    int dv = 0;
    detail::solve_padic(std::move(A), std::move(rhs), &dv);
    trace_form_.push_back(std::move(Q));
    disc_val_.push_back(dv);
  }
}

// ---------------------------------------------------------------------------
// ExtElement

ExtElement ExtElement::zero(FieldPtr field, int level, int absolute_precision) {
  ExtElement z;
  z.coords_.assign(static_cast<size_t>(field->dim(level)), 0);
  z.field_ = std::move(field);
  z.level_ = level;
  z.shift_ = absolute_precision;
  z.prec_ = 0;
  return z;
}

ExtElement ExtElement::normalized(FieldPtr field, int level, int shift, ZVec coords, int prec) {
  prec = std::min(prec, field->ring_digits());
  if (prec <= 0) return zero(std::move(field), level, shift + std::max(prec, 0));
  const long p = field->p();
  mpz_class M = ipow(p, prec);
  int k = prec;
  for (auto& c : coords) {
    c = mod(c, M);
    if (c != 0) k = std::min(k, vp(c, p));
  }
  if (k == prec) return zero(std::move(field), level, shift + prec);
  if (k > 0) {
    mpz_class pk = ipow(p, k);
    for (auto& c : coords) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pk.get_mpz_t());
  }
  ExtElement x;
  x.field_ = std::move(field);
  x.level_ = level;
  x.shift_ = shift + k;
  x.prec_ = prec - k;
  x.coords_ = std::move(coords);
  return x;
}

ExtElement ExtElement::from_coordinates(FieldPtr field, int level, int shift, ZVec coords, int relative_precision) {
  if (coords.size() != static_cast<size_t>(field->dim(level)))
    throw DomainError("ExtElement: coordinate vector has the wrong length");
  return normalized(std::move(field), level, shift, std::move(coords), relative_precision);
}

ExtElement ExtElement::from_scalar(FieldPtr field, int level, const PadicScalar& x) {
  if (x.is_zero()) return zero(std::move(field), level, x.absolute_precision());
  ZVec c(static_cast<size_t>(field->dim(level)), 0);
  c[0] = x.unit();
  return normalized(std::move(field), level, x.valuation(), std::move(c), x.relative_precision());
}

ExtElement ExtElement::from_integer(FieldPtr field, int level, const mpz_class& n) {
  int prec = field->precision();
  return from_scalar(field, level, PadicScalar::from_integer(field->p(), n, prec));
}

ExtElement ExtElement::from_rational(FieldPtr field, int level, const mpq_class& r) {
  int prec = field->precision();
  return from_scalar(field, level, PadicScalar::from_rational(field->p(), r, prec));
}

ExtElement ExtElement::uniformizer(FieldPtr field, int level) {
  ZVec u = field->uniformizer(level);
  int prec = field->precision();
  return normalized(std::move(field), level, 0, std::move(u), prec);
}

ExtElement ExtElement::from_lattice(FieldPtr field, const BallQuotient& q, std::uint64_t index) {
  auto g = q.digits(index);
  int lo = q.lower(0);
  for (int i = 1; i < q.dim(); ++i) lo = std::min(lo, q.lower(i));
  ZVec c(static_cast<size_t>(q.dim()));
  for (int i = 0; i < q.dim(); ++i) c[i] = mpz_class(static_cast<unsigned long>(g[i])) * ipow(q.p(), q.lower(i) - lo);
  int prec = field->precision();
  return from_coordinates(std::move(field), q.level(), lo, std::move(c), prec);
}

bool ExtElement::is_zero() const { return prec_ == 0; }

int ExtElement::normalized_valuation() const {
  if (is_zero()) throw PrecisionError("valuation of an element that is zero at precision");
  const auto& L = field_->tower().level(level_);
  const auto& bw = field_->tower().step(L.step).basis_valuation;
  int w = kZeroValuation;
  for (size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == 0) continue;
    w = std::min(w, L.e * vp(coords_[i], field_->p()) + bw[i]);
  }
  return w + L.e * shift_;
}

mpq_class ExtElement::valuation() const {
  mpq_class v(normalized_valuation(), field_->tower().level(level_).e);
  v.canonicalize();
  return v;
}

double ExtElement::norm() const {
  if (is_zero()) return 0.0;
  return std::pow(static_cast<double>(field_->p()), -valuation().get_d());
}

ExtElement ExtElement::operator-() const {
  if (is_zero()) return *this;
  ZVec c = coords_;
  for (auto& x : c) x = -x;
  return normalized(field_, level_, shift_, std::move(c), prec_);
}

ExtElement ExtElement::operator+(const ExtElement& o) const {
  if (level_ != o.level_) {
    int L = std::max(level_, o.level_);
    return embed(L) + o.embed(L);
  }
  int abs = std::min(absolute_precision(), o.absolute_precision());
  int k = std::min(shift_, o.shift_);
  ZVec c(coords_.size());
  mpz_class a = ipow(field_->p(), shift_ - k), b = ipow(field_->p(), o.shift_ - k);
  for (size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] * a + o.coords_[i] * b;
  return normalized(field_, level_, k, std::move(c), abs - k);
}

ExtElement ExtElement::operator-(const ExtElement& o) const { return *this + (-o); }

ExtElement ExtElement::operator*(const ExtElement& o) const {
  if (level_ != o.level_) {
    int L = std::max(level_, o.level_);
    return embed(L) * o.embed(L);
  }
  if (is_zero() || o.is_zero()) return zero(field_, level_, shift_ + o.shift_);
  ZVec c = field_->mul(level_, coords_, o.coords_);
  return normalized(field_, level_, shift_ + o.shift_, std::move(c), std::min(prec_, o.prec_));
}

ExtElement ExtElement::inverse() const {
  if (is_zero()) throw PrecisionError("inverse of an element that is zero at precision");
  const long p = field_->p();
  const size_t d = coords_.size();
  std::vector<std::vector<PadicScalar>> A(d, std::vector<PadicScalar>(d));
  for (size_t j = 0; j < d; ++j) {
    ZVec bj(d, 0);
    bj[j] = 1;
    ZVec col = field_->mul(level_, coords_, bj);
    for (size_t i = 0; i < d; ++i) A[i][j] = PadicScalar::from_parts(p, 0, col[i], prec_);
  }
  std::vector<PadicScalar> rhs(d, PadicScalar::zero(p, field_->ring_digits()));
  rhs[0] = PadicScalar::from_integer(p, 1, field_->ring_digits());
  auto y = detail::solve_padic(std::move(A), std::move(rhs));
  int k = kZeroValuation, abs = kZeroValuation;
  for (const auto& s : y) {
    abs = std::min(abs, s.absolute_precision());
    if (!s.is_zero()) k = std::min(k, s.valuation());
  }
  if (k == kZeroValuation) throw PrecisionError("inverse: result lost all precision");
  ZVec c(d);
  for (size_t i = 0; i < d; ++i)
    c[i] = y[i].is_zero() ? mpz_class(0) : y[i].unit() * ipow(p, y[i].valuation() - k);
  return normalized(field_, level_, k - shift_, std::move(c), abs - k);
}

ExtElement ExtElement::operator/(const ExtElement& o) const { return *this * o.inverse(); }

ExtElement ExtElement::embed(int target_level) const {
  if (target_level == level_) return *this;
  ExtElement x = *this;
  x.coords_ = field_->embed(level_, target_level, coords_);
  x.level_ = target_level;
  return x;
}

ExtElement ExtElement::trace(int target_level) const {
  if (target_level > level_) throw DomainError("trace: target level above the element's level");
  if (is_zero()) return zero(field_, target_level, shift_);
  ZVec c = field_->trace(level_, target_level, coords_);
  return normalized(field_, target_level, shift_, std::move(c), prec_);
}

ExtElement ExtElement::project_T(int target_level) const {
  if (target_level == level_) return *this;
  const auto& T = field_->tower();
  long r = T.level(level_).m / T.level(target_level).m;
  int v = vp(r, field_->p());
  long unit = r;
  for (int i = 0; i < v; ++i) unit /= field_->p();
  ExtElement t = trace(target_level);
  if (t.is_zero()) return zero(field_, target_level, t.shift_ - v);
  mpz_class inv = inverse_mod(mpz_class(unit), ipow(field_->p(), t.prec_));
  ZVec c = t.coords_;
  for (auto& x : c) x *= inv;
  return normalized(field_, target_level, t.shift_ - v, std::move(c), t.prec_);
}

PadicScalar ExtElement::to_scalar() const {
  if (level_ != 1) throw DomainError("to_scalar: element is not at level 1");
  if (is_zero()) return PadicScalar::zero(field_->p(), shift_);
  return PadicScalar::from_parts(field_->p(), shift_, coords_[0], prec_);
}

bool ExtElement::equals_at_precision(const ExtElement& o) const { return (*this - o).is_zero(); }

std::string ExtElement::str() const {
  std::ostringstream os;
  os << field_->p() << "^" << shift_ << "*(";
  for (size_t i = 0; i < coords_.size(); ++i) os << (i ? "," : "") << coords_[i].get_str();
  os << ") + O(" << field_->p() << "^" << absolute_precision() << ")";
  return os.str();
}

std::uint64_t locate(const BallQuotient& q, const ExtElement& x) {
  if (x.level() != q.level()) throw DomainError("locate: element level differs from the quotient level");
  const long p = q.p();
  std::vector<std::uint64_t> g(static_cast<size_t>(q.dim()));
  for (int i = 0; i < q.dim(); ++i) {
    if (x.absolute_precision() < q.upper(i)) throw PrecisionError("locate: element precision below the inner ball");
    const mpz_class& c = x.coordinates()[static_cast<size_t>(i)];
    mpz_class val;
    if (x.shift() >= q.lower(i)) {
      val = c * ipow(p, x.shift() - q.lower(i));
    } else {
      mpz_class pk = ipow(p, q.lower(i) - x.shift());
      if (!mpz_divisible_p(c.get_mpz_t(), pk.get_mpz_t()))
        throw DomainError("locate: element lies outside the outer ball");
      val = c / pk;
    }
    g[i] = mod(val, mpz_class(static_cast<unsigned long>(q.radix(i)))).get_ui();
  }
  return q.index(g);
}

mpq_class pairing_phase(const ExtElement& a, const ExtElement& x) {
  const int n = a.level();
  ExtElement xx = x.level() < n ? x.embed(n) : x;
  ExtElement y = a * xx.project_T(n);
  return y.project_T(1).to_scalar().fractional_part();
}

std::complex<double> pairing_character(const ExtElement& a, const ExtElement& x) {
  return unit_root(pairing_phase(a, x));
}

}  // namespace infext
