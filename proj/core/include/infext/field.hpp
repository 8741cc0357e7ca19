#pragma once

// Concrete arithmetic in the levels of a tower.
//
// Each step ring is R_s = R_{s-1}[t_s]/(P_s) modulo p^P. Eisenstein steps use
// their given polynomial; unramified steps use the minimal polynomial of a
// Teichmuller root of unity, so the nested power basis is an integral basis of
// every O_n. Elements are p^shift * sum_i c_i b_i with c_i known modulo
// p^{relative precision}.

#include <gmpxx.h>

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "infext/padic.hpp"
#include "infext/quotient.hpp"
#include "infext/tower.hpp"

namespace infext {

class TowerField {
 public:
  /// Realize levels 1..max_level (all levels when max_level <= 0).
  static std::shared_ptr<const TowerField> realize(const Tower& tower, int max_level = 0,
                                                   int precision = kDefaultPrecision);

  const Tower& tower() const { return tower_; }
  long p() const { return tower_.p(); }
  int precision() const { return precision_; }
  int ring_digits() const { return ring_digits_; }
  const mpz_class& modulus() const { return modulus_; }
  int max_level() const { return max_level_; }
  int dim(int level) const;

  /// Products and traces of integral coordinate vectors (reduced modulo p^P).
  ZVec mul(int level, const ZVec& a, const ZVec& b) const;
  ZVec trace(int from_level, int to_level, const ZVec& a) const;
  ZVec embed(int from_level, int to_level, const ZVec& a) const;
  /// Coordinates of the uniformizer of a level (p itself for unramified levels).
  ZVec uniformizer(int level) const;
  /// Defining polynomial c_0..c_{r-1} (monic, implicit leading 1) of a step, over R_{s-1}.
  const std::vector<ZVec>& step_polynomial(int step) const { return rings_.at(static_cast<size_t>(step)).poly; }

  /// Q_ij = Tr_{K_n/Q_p}(b_i b_j) modulo p^P.
  const std::vector<ZVec>& trace_form(int level) const { return trace_form_.at(static_cast<size_t>(level - 1)); }
  /// v_p(det Q) for the trace form; equals f_n d_n.
  int discriminant_valuation(int level) const { return disc_val_.at(static_cast<size_t>(level - 1)); }

 private:
  struct StepRing {
    int degree = 1;
    size_t dim_prev = 1;
    size_t dim = 1;
    std::vector<ZVec> poly;
    std::vector<ZVec> power_sums;
  };

  TowerField(const Tower& tower, int max_level, int precision);
  ZVec mul_step(int s, const ZVec& a, const ZVec& b) const;
  ZVec reduce(ZVec v) const;
  void build_rings();

  Tower tower_;
  int max_level_;
  int precision_;
  int ring_digits_;
  mpz_class modulus_;
  std::vector<StepRing> rings_;
  std::vector<std::vector<ZVec>> trace_form_;
  std::vector<int> disc_val_;
};

using FieldPtr = std::shared_ptr<const TowerField>;

class ExtElement {
 public:
  ExtElement() = default;

  static ExtElement zero(FieldPtr field, int level, int absolute_precision);
  static ExtElement from_integer(FieldPtr field, int level, const mpz_class& n);
  static ExtElement from_rational(FieldPtr field, int level, const mpq_class& r);
  static ExtElement from_scalar(FieldPtr field, int level, const PadicScalar& x);
  /// p^shift * sum_i coords_i b_i with coords known modulo p^relative_precision.
  static ExtElement from_coordinates(FieldPtr field, int level, int shift, ZVec coords, int relative_precision);
  static ExtElement uniformizer(FieldPtr field, int level);
  /// The coset representative sum_i p^{lower_i} g_i b_i of a ball-quotient index.
  static ExtElement from_lattice(FieldPtr field, const BallQuotient& q, std::uint64_t index);

  const FieldPtr& field() const { return field_; }
  int level() const { return level_; }
  int shift() const { return shift_; }
  const ZVec& coordinates() const { return coords_; }
  int relative_precision() const { return prec_; }
  /// x is known modulo p^{absolute_precision} O_n.
  int absolute_precision() const { return shift_ + prec_; }
  bool is_zero() const;

  /// Valuation in units of the level's uniformizer; throws on zero-at-precision.
  int normalized_valuation() const;
  /// Valuation normalized by v(p) = 1.
  mpq_class valuation() const;
  /// ||x|| = p^{-v(x)}.
  double norm() const;

  ExtElement operator-() const;
  ExtElement operator+(const ExtElement& o) const;
  ExtElement operator-(const ExtElement& o) const;
  ExtElement operator*(const ExtElement& o) const;
  ExtElement operator/(const ExtElement& o) const;
  ExtElement inverse() const;

  ExtElement embed(int target_level) const;
  /// Tr_{K_level / K_target}.
  ExtElement trace(int target_level) const;
  /// T_target(x) = (m_target / m_level) Tr_{K_level / K_target}(x).
  ExtElement project_T(int target_level) const;
  /// The element as a scalar of Q_p (level 1 only).
  PadicScalar to_scalar() const;

  bool equals_at_precision(const ExtElement& o) const;
  std::string str() const;

 private:
  static ExtElement normalized(FieldPtr field, int level, int shift, ZVec coords, int prec);

  FieldPtr field_;
  int level_ = 1;
  int shift_ = 0;
  ZVec coords_;
  int prec_ = 0;
};

/// Index of the coset of x in a ball quotient of its level.
std::uint64_t locate(const BallQuotient& q, const ExtElement& x);

/// Exact phase {T_1(a T_n(x))} in [0, 1) for a at level n and x at level >= n.
mpq_class pairing_phase(const ExtElement& a, const ExtElement& x);
/// chi(T_1(a T_n(x))).
std::complex<double> pairing_character(const ExtElement& a, const ExtElement& x);

namespace detail {
/// Solve A y = b over Q_p with pivoting on minimal valuation; det_valuation receives v_p(det A).
std::vector<PadicScalar> solve_padic(std::vector<std::vector<PadicScalar>> a, std::vector<PadicScalar> b,
                                     int* det_valuation = nullptr);
}  // namespace detail

}  // namespace infext
