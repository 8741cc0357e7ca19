#pragma once

// Cylindrical functions on finite quotients of S^(n) and their Fourier analysis.
//
// At level n with depth t the domain is G = pi^{s0} O / pi^{s0+t} O, where
// S^(n) = pi^{s0} O. The annihilator of S^(n) under
// (xi, z) -> chi(Tr(xi z) / m_n) is O, so the dual of G is D = pi^{-t} O / O.
// Character values are exact: chi(xi, z) = exp(2 pi i k / p^K) with
// k = sum_ij a_i g_j W_ij mod p^K, W built from the trace form.

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "infext/field.hpp"
#include "infext/quotient.hpp"

namespace infext {

using Complex = std::complex<double>;

class CylinderSpace {
 public:
  static std::shared_ptr<const CylinderSpace> make(FieldPtr field, int level, int depth);

  const FieldPtr& field() const { return field_; }
  const Tower& tower() const { return field_->tower(); }
  int level() const { return level_; }
  int depth() const { return depth_; }
  /// S^(n) = pi^{s0} O_n.
  int s0() const { return s0_; }
  const BallQuotient& group() const { return group_; }
  const BallQuotient& dual() const { return dual_; }
  std::uint64_t size() const { return group_.size(); }

  /// Exact phase numerator: chi(xi, z) = exp(2 pi i phase / p^K).
  std::uint64_t phase(std::uint64_t xi, std::uint64_t z) const;
  const mpz_class& phase_modulus() const { return phase_modulus_; }
  int phase_exponent() const { return phase_exponent_; }
  Complex character(std::uint64_t xi, std::uint64_t z) const;
  std::complex<long double> character_ext(std::uint64_t xi, std::uint64_t z) const;

  /// ||xi|| for a dual coset (0 for the zero coset).
  double dual_norm(std::uint64_t xi) const;
  /// ||z|| for a group coset (0 for the zero coset).
  double group_norm(std::uint64_t z) const;

  ExtElement group_element(std::uint64_t z) const { return ExtElement::from_lattice(field_, group_, z); }
  ExtElement dual_element(std::uint64_t xi) const { return ExtElement::from_lattice(field_, dual_, xi); }
  std::uint64_t locate_group(const ExtElement& x) const { return locate(group_, x); }
  std::uint64_t locate_dual(const ExtElement& a) const { return locate(dual_, a); }

 private:
  CylinderSpace(FieldPtr field, int level, int depth);

  FieldPtr field_;
  int level_, depth_, s0_;
  BallQuotient group_, dual_;
  int phase_exponent_ = 0;
  mpz_class phase_modulus_;
  std::uint64_t pk_ = 1;
  // h_[z * dim + i] = sum_j W_ij g_j(z) mod p^K
  std::vector<std::uint64_t> h_;
  std::vector<std::uint64_t> dual_digits_;
  std::vector<Complex> roots_;
  std::vector<std::complex<long double>> roots_ext_;
  // Dense character table when small enough: table_[xi * |G| + z].
  std::vector<Complex> table_;
};

using SpacePtr = std::shared_ptr<const CylinderSpace>;

/// A locally constant function on S^(n), one value per coset of G.
struct CylFunction {
  SpacePtr space;
  std::vector<Complex> values;

  static CylFunction constant(SpacePtr space, Complex c);
  static CylFunction indicator(SpacePtr space, std::uint64_t coset);
  /// z -> chi(xi, z) for a dual coset xi.
  static CylFunction character(SpacePtr space, std::uint64_t xi);
  /// Indicator of {z in S : w(z) >= k} (k in the level's normalized valuation).
  static CylFunction ball_indicator(SpacePtr space, int k);

  Complex operator[](std::uint64_t z) const { return values[z]; }
  double sup_norm() const;
};

/// Coefficients indexed by dual cosets.
struct SpectralCoefficients {
  SpacePtr space;
  std::vector<Complex> coeffs;
};

/// Integral against normalized Haar measure on S^(n).
Complex haar_integral(const CylFunction& f);
/// Change-of-variable density q^{-d} ||m||^{-m} times the Haar volume of each coset, exactly.
mpq_class mu_coset_weight(const CylinderSpace& space);
Complex mu_integral(const CylFunction& f);

SpectralCoefficients fourier(const CylFunction& f);
CylFunction inverse_fourier(const SpectralCoefficients& c);

struct PlancherelSides {
  Complex lhs;
  Complex rhs;
};
PlancherelSides plancherel_check(const CylFunction& phi, const CylFunction& psi);

/// The same cylindrical function over the level-nu quotient of depth e_{n nu} t.
CylFunction refine_level(const CylFunction& f, int target_level);

}  // namespace infext
