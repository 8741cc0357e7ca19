#pragma once

// Internal helpers: polynomials over F_p (small prime) and over Z/p^P used
// to build Teichmuller models of unramified extensions.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "infext/padic.hpp"

namespace infext::detail {

// Coefficients low degree first.
using FpPoly = std::vector<long>;

/// Distinct prime factors of n.
std::vector<mpz_class> prime_factors(mpz_class n);

/// Smallest (in base-p coefficient order) monic primitive polynomial of degree deg over F_p.
FpPoly primitive_polynomial(long p, int deg);

bool is_irreducible(const FpPoly& g, long p);
bool is_primitive(const FpPoly& g, long p);

/// Multiplicative order of a modulo n (gcd(a, n) = 1, n >= 1).
long multiplicative_order(long a, long n);

// Arithmetic in (Z/M)[x]/(g) for a monic g, elements as coefficient vectors of length deg g.
struct ResidueRing {
  ZVec modulus_poly;  // monic, length deg+1
  mpz_class M;
  int deg() const { return static_cast<int>(modulus_poly.size()) - 1; }
  ZVec one() const;
  ZVec x() const;
  ZVec mul(const ZVec& a, const ZVec& b) const;
  ZVec add(const ZVec& a, const ZVec& b) const;
  ZVec sub(const ZVec& a, const ZVec& b) const;
  ZVec pow(const ZVec& a, const mpz_class& e) const;
};

/// Solve B x = c (mod M = p^P) where the columns of B are independent modulo p.
/// B is given column-major: cols[j] is column j. Throws if no exact solution exists.
ZVec solve_unit_columns(const std::vector<ZVec>& cols, const ZVec& c, const mpz_class& M, long p);

}  // namespace infext::detail
