#include "infext/padic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace infext {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

mpz_class ipow(long p, int k) {
  if (k < 0) throw DomainError("ipow: negative exponent");
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
  return r;
}

int vp(const mpz_class& x, long p) {
  if (x == 0) throw DomainError("vp: valuation of zero");
  mpz_class t = x;
  int v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

int vp(long x, long p) { return vp(mpz_class(x), p); }

mpz_class mod(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class inverse_mod(const mpz_class& u, const mpz_class& m) {
  mpz_class r;
  if (m == 1) return 0;
  if (mpz_invert(r.get_mpz_t(), u.get_mpz_t(), m.get_mpz_t()) == 0)
    throw DomainError("inverse_mod: element is not invertible");
  return r;
}

PadicScalar PadicScalar::zero(long p, int absolute_precision) {
  PadicScalar z;
  z.p_ = p;
  z.val_ = absolute_precision;
  z.prec_ = 0;
  z.unit_ = 0;
  return z;
}

PadicScalar PadicScalar::from_parts(long p, int shift, const mpz_class& x, int digits) {
  if (digits <= 0) return zero(p, shift + std::max(digits, 0));
  mpz_class m = ipow(p, digits);
  mpz_class r = mod(x, m);
  if (r == 0) return zero(p, shift + digits);
  int k = vp(r, p);
  PadicScalar s;
  s.p_ = p;
  s.val_ = shift + k;
  s.prec_ = digits - k;
  mpz_class pk = ipow(p, k);
  mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), pk.get_mpz_t());
  s.unit_ = r;
  return s;
}

PadicScalar PadicScalar::from_integer(long p, const mpz_class& n, int precision) {
  if (n == 0) return zero(p, precision);
  int k = vp(n, p);
  mpz_class pk = ipow(p, k);
  mpz_class u = n / pk;
  return from_parts(p, k, u, precision);
}

PadicScalar PadicScalar::from_rational(long p, const mpq_class& r, int precision) {
  if (r == 0) return zero(p, precision);
  mpz_class num = r.get_num(), den = r.get_den();
  int kn = vp(num, p), kd = vp(den, p);
  num /= ipow(p, kn);
  den /= ipow(p, kd);
  mpz_class m = ipow(p, precision);
  mpz_class u = mod(num * inverse_mod(den, m), m);
  return from_parts(p, kn - kd, u, precision);
}

int PadicScalar::valuation() const {
  if (is_zero()) throw PrecisionError("valuation of an element that is zero at precision");
  return val_;
}

double PadicScalar::norm() const {
  if (is_zero()) return 0.0;
  return std::pow(static_cast<double>(p_), -val_);
}

PadicScalar PadicScalar::operator-() const {
  if (is_zero()) return *this;
  return from_parts(p_, val_, -unit_, prec_);
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
  if (p_ != o.p_) throw DomainError("PadicScalar: mismatched primes");
  int abs = std::min(absolute_precision(), o.absolute_precision());
  int v = std::min(val_, o.val_);
  mpz_class x = unit_ * ipow(p_, val_ - v) + o.unit_ * ipow(p_, o.val_ - v);
  return from_parts(p_, v, x, abs - v);
}

PadicScalar PadicScalar::operator-(const PadicScalar& o) const { return *this + (-o); }

PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
  if (p_ != o.p_) throw DomainError("PadicScalar: mismatched primes");
  if (is_zero() && o.is_zero()) return zero(p_, val_ + o.val_);
  if (is_zero()) return zero(p_, val_ + o.val_);
  if (o.is_zero()) return zero(p_, val_ + o.val_);
  int r = std::min(prec_, o.prec_);
  return from_parts(p_, val_ + o.val_, unit_ * o.unit_, r);
}

PadicScalar PadicScalar::inverse() const {
  if (is_zero()) throw PrecisionError("inverse of an element that is zero at precision");
  mpz_class m = ipow(p_, prec_);
  return from_parts(p_, -val_, inverse_mod(unit_, m), prec_);
}

PadicScalar PadicScalar::operator/(const PadicScalar& o) const { return *this * o.inverse(); }

mpq_class PadicScalar::fractional_part() const {
  if (is_zero()) {
    if (val_ >= 0) return 0;
    throw PrecisionError("fractional part: zero-at-precision element with negative absolute precision");
  }
  if (val_ >= 0) return 0;
  if (prec_ < -val_)
    throw PrecisionError("fractional part: precision insufficient to resolve digits above p^0");
  mpz_class den = ipow(p_, -val_);
  mpq_class q(mod(unit_, den), den);
  q.canonicalize();
  return q;
}

mpq_class PadicScalar::to_rational() const {
  if (is_zero()) return 0;
  mpq_class r(unit_);
  if (val_ >= 0)
    r *= ipow(p_, val_);
  else
    r /= mpq_class(ipow(p_, -val_));
  return r;
}

bool PadicScalar::equals_at_precision(const PadicScalar& o) const {
  PadicScalar d = *this - o;
  return d.is_zero();
}

std::string PadicScalar::str() const {
  std::ostringstream os;
  if (is_zero()) {
    os << "O(" << p_ << "^" << val_ << ")";
    return os.str();
  }
  os << unit_.get_str() << "*" << p_ << "^" << val_ << " + O(" << p_ << "^" << absolute_precision() << ")";
  return os.str();
}

std::complex<double> unit_root(const mpq_class& phase) {
  // Reduce exactly before converting so large denominators stay accurate.
  mpz_class num = phase.get_num(), den = phase.get_den();
  mpz_class r = mod(num, den);
  double angle = 2.0 * std::numbers::pi * (mpq_class(r, den).get_d());
  return {std::cos(angle), std::sin(angle)};
}

std::complex<double> character_chi(const PadicScalar& x) { return unit_root(x.fractional_part()); }

}  // namespace infext
