#pragma once

// Scalars of Q_p at tracked finite precision, plus the integer helpers the
// rest of the library builds on.

#include <gmpxx.h>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace infext {

class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Default number of base-p digits carried by elements.
inline constexpr int kDefaultPrecision = 64;

using ZVec = std::vector<mpz_class>;

bool is_prime(long n);

/// p^k for k >= 0.
mpz_class ipow(long p, int k);

/// p-adic valuation of a nonzero integer.
int vp(const mpz_class& x, long p);
int vp(long x, long p);

/// Residue of x in [0, m).
mpz_class mod(const mpz_class& x, const mpz_class& m);

/// Inverse of u modulo m; throws DomainError when u is not invertible.
mpz_class inverse_mod(const mpz_class& u, const mpz_class& m);

/// An element p^v * u of Q_p with u a unit known modulo p^prec.
///
/// The zero-at-precision element stores unit 0 and keeps its absolute
/// precision in the valuation slot: it is only known to lie in p^v Z_p.
class PadicScalar {
 public:
  PadicScalar() = default;

  static PadicScalar zero(long p, int absolute_precision);
  static PadicScalar from_integer(long p, const mpz_class& n, int precision = kDefaultPrecision);
  static PadicScalar from_rational(long p, const mpq_class& r, int precision = kDefaultPrecision);
  /// p^shift * x where x is known modulo p^digits; normalizes the unit part.
  static PadicScalar from_parts(long p, int shift, const mpz_class& x, int digits);

  long prime() const { return p_; }
  bool is_zero() const { return unit_ == 0; }
  /// Throws PrecisionError on zero-at-precision input.
  int valuation() const;
  int absolute_precision() const { return val_ + prec_; }
  int relative_precision() const { return prec_; }
  const mpz_class& unit() const { return unit_; }
  /// ||x|| = p^{-v(x)}, zero for the zero element.
  double norm() const;

  PadicScalar operator-() const;
  PadicScalar operator+(const PadicScalar& o) const;
  PadicScalar operator-(const PadicScalar& o) const;
  PadicScalar operator*(const PadicScalar& o) const;
  PadicScalar operator/(const PadicScalar& o) const;
  PadicScalar inverse() const;

  /// The p-adic fractional part {x} in [0, 1); needs digits down to p^0.
  mpq_class fractional_part() const;
  /// The rational p^v * u (an approximation of x to its precision).
  mpq_class to_rational() const;
  /// True when x - o vanishes modulo the smaller of the two absolute precisions.
  bool equals_at_precision(const PadicScalar& o) const;

  std::string str() const;

 private:
  long p_ = 2;
  int val_ = 0;
  int prec_ = 0;
  mpz_class unit_ = 0;
};

/// Rank-zero additive character exp(2 pi i {x}).
std::complex<double> character_chi(const PadicScalar& x);

/// exp(2 pi i * phase) for an exact phase in [0, 1).
std::complex<double> unit_root(const mpq_class& phase);

}  // namespace infext
