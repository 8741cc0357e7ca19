#include "finite_field.hpp"

#include <algorithm>
#include <stdexcept>

namespace infext::detail {

namespace {

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& g, long p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  int d = static_cast<int>(g.size()) - 1;
  for (int k = static_cast<int>(r.size()) - 1; k >= d; --k) {
    long c = r[k];
    if (c == 0) continue;
    for (int j = 0; j <= d; ++j) r[k - d + j] = ((r[k - d + j] - c * g[j]) % p + p) % p;
  }
  r.resize(std::min<size_t>(r.size(), d));
  trim(r);
  return r;
}

FpPoly fp_powmod(FpPoly a, mpz_class e, const FpPoly& g, long p) {
  FpPoly r{1};
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = fp_mulmod(r, a, g, p);
    a = fp_mulmod(a, a, g, p);
    e >>= 1;
  }
  return r;
}

long inv_mod_small(long a, long p) {
  long r = 1, b = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

FpPoly fp_mod(FpPoly a, const FpPoly& b, long p) {
  trim(a);
  int db = static_cast<int>(b.size()) - 1;
  long lead_inv = inv_mod_small(b.back(), p);
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    long c = a.back() * lead_inv % p;
    int shift = static_cast<int>(a.size()) - 1 - db;
    for (int j = 0; j <= db; ++j) a[shift + j] = ((a[shift + j] - c * b[j]) % p + p) % p;
    trim(a);
  }
  return a;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, long p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

std::vector<mpz_class> prime_factors(mpz_class n) {
  std::vector<mpz_class> out;
  for (mpz_class d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

long multiplicative_order(long a, long n) {
  if (n == 1) return 1;
  long x = a % n, k = 1;
  while (x != 1) {
    x = x * a % n;
    ++k;
    if (k > n) throw DomainError("multiplicative_order: not a unit");
  }
  return k;
}

bool is_irreducible(const FpPoly& g, long p) {
  int d = static_cast<int>(g.size()) - 1;
  if (d <= 0) return false;
  if (d == 1) return true;
  FpPoly x{0, 1};
  // x^{p^d} == x mod g and gcd(x^{p^{d/r}} - x, g) = 1 for primes r | d.
  FpPoly xp = fp_powmod(x, ipow(p, d), g, p);
  FpPoly xr = fp_mod(x, g, p);
  if (xp != xr) return false;
  for (const auto& r : prime_factors(mpz_class(d))) {
    int k = d / static_cast<int>(r.get_si());
    FpPoly h = fp_powmod(x, ipow(p, k), g, p);
    h.resize(std::max<size_t>(h.size(), 2), 0);
    h[1] = ((h[1] - 1) % p + p) % p;
    trim(h);
    FpPoly c = fp_gcd(g, h, p);
    if (c.size() != 1) return false;
  }
  return true;
}

bool is_primitive(const FpPoly& g, long p) {
  if (!is_irreducible(g, p)) return false;
  int d = static_cast<int>(g.size()) - 1;
  mpz_class order = ipow(p, d) - 1;
  FpPoly x{0, 1};
  for (const auto& r : prime_factors(order)) {
    FpPoly h = fp_powmod(x, order / r, g, p);
    if (h == FpPoly{1}) return false;
  }
  return true;
}

FpPoly primitive_polynomial(long p, int deg) {
  if (deg == 1) {
    // x - a for a primitive root a mod p.
    for (long a = 1; a < p; ++a) {
      if (p == 2 || multiplicative_order(a, p) == p - 1) return FpPoly{(p - a) % p, 1};
    }
  }
  mpz_class limit = ipow(p, deg);
  for (mpz_class code = 0; code < limit; ++code) {
    FpPoly g(deg + 1, 0);
    mpz_class c = code;
    for (int i = 0; i < deg; ++i) {
      g[i] = mpz_class(c % p).get_si();
      c /= p;
    }
    g[deg] = 1;
    if (g[0] == 0) continue;
    if (is_primitive(g, p)) return g;
  }
  throw std::logic_error("primitive_polynomial: none found");
}

ZVec ResidueRing::one() const {
  ZVec r(deg(), 0);
  r[0] = 1;
  return r;
}

ZVec ResidueRing::x() const {
  ZVec r(deg(), 0);
  if (deg() == 1)
    r[0] = mod(-modulus_poly[0], M);
  else
    r[1] = 1;
  return r;
}

ZVec ResidueRing::add(const ZVec& a, const ZVec& b) const {
  ZVec r(deg());
  for (int i = 0; i < deg(); ++i) r[i] = mod(a[i] + b[i], M);
  return r;
}

ZVec ResidueRing::sub(const ZVec& a, const ZVec& b) const {
  ZVec r(deg());
  for (int i = 0; i < deg(); ++i) r[i] = mod(a[i] - b[i], M);
  return r;
}

ZVec ResidueRing::mul(const ZVec& a, const ZVec& b) const {
  int d = deg();
  ZVec r(2 * d - 1, 0);
  for (int i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < d; ++j) r[i + j] += a[i] * b[j];
  }
  for (int k = 2 * d - 2; k >= d; --k) {
    mpz_class c = mod(r[k], M);
    if (c == 0) continue;
    for (int j = 0; j < d; ++j) r[k - d + j] -= c * modulus_poly[j];
  }
  r.resize(d);
  for (auto& v : r) v = mod(v, M);
  return r;
}

ZVec ResidueRing::pow(const ZVec& a, const mpz_class& e) const {
  ZVec r = one(), b = a;
  mpz_class k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = mul(r, b);
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

ZVec solve_unit_columns(const std::vector<ZVec>& cols, const ZVec& c, const mpz_class& M, long p) {
  const size_t rows = c.size(), ncols = cols.size();
  // Augmented row-major matrix.
  std::vector<ZVec> a(rows, ZVec(ncols + 1));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < ncols; ++j) a[i][j] = mod(cols[j][i], M);
    a[i][ncols] = mod(c[i], M);
  }
  std::vector<size_t> pivot_row(ncols);
  size_t r = 0;
  for (size_t j = 0; j < ncols; ++j) {
    size_t piv = rows;
    for (size_t i = r; i < rows; ++i)
      if (!mpz_divisible_ui_p(a[i][j].get_mpz_t(), static_cast<unsigned long>(p))) {
        piv = i;
        break;
      }
    if (piv == rows) throw std::logic_error("solve_unit_columns: columns dependent modulo p");
    std::swap(a[piv], a[r]);
    mpz_class inv = inverse_mod(a[r][j], M);
    for (auto& v : a[r]) v = mod(v * inv, M);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][j] == 0) continue;
      mpz_class f = a[i][j];
      for (size_t k = 0; k <= ncols; ++k) a[i][k] = mod(a[i][k] - f * a[r][k], M);
    }
    pivot_row[j] = r;
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (a[i][ncols] != 0) throw std::logic_error("solve_unit_columns: inconsistent system");
  ZVec x(ncols);
  for (size_t j = 0; j < ncols; ++j) x[j] = a[pivot_row[j]][ncols];
  return x;
}

}  // namespace infext::detail
