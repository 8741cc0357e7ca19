#include "infext/quotient.hpp"

#include <algorithm>
#include <sstream>

namespace infext {

namespace {

int ceil_div(int a, int b) {
  // b > 0
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

int vp_u64(std::uint64_t x, long p) {
  int v = 0;
  while (x % static_cast<std::uint64_t>(p) == 0) {
    x /= static_cast<std::uint64_t>(p);
    ++v;
  }
  return v;
}

}  // namespace

BallQuotient::BallQuotient(const Tower& tower, int level, int lo, int hi, std::uint64_t cap)
    : p_(tower.p()), level_(level), lo_(lo), hi_(hi) {
  if (hi < lo) throw DomainError("BallQuotient: inner exponent below outer exponent");
  const LevelData& L = tower.level(level);
  e_ = L.e;
  basis_w_ = tower.step(L.step).basis_valuation;
  const size_t m = basis_w_.size();
  lower_.resize(m);
  upper_.resize(m);
  radix_.resize(m);
  long double total = 1;
  for (size_t i = 0; i < m; ++i) {
    lower_[i] = ceil_div(lo - basis_w_[i], e_);
    upper_[i] = ceil_div(hi - basis_w_[i], e_);
    int k = upper_[i] - lower_[i];
    std::uint64_t r = 1;
    for (int j = 0; j < k; ++j) {
      if (r > cap / static_cast<std::uint64_t>(p_)) throw DomainError("BallQuotient: enumeration cap exceeded");
      r *= static_cast<std::uint64_t>(p_);
    }
    radix_[i] = r;
    total *= static_cast<long double>(r);
    if (total > static_cast<long double>(cap)) throw DomainError("BallQuotient: enumeration cap exceeded");
    size_ *= r;
  }
}

void BallQuotient::digits(std::uint64_t index, std::span<std::uint64_t> out) const {
  for (size_t i = 0; i < radix_.size(); ++i) {
    out[i] = index % radix_[i];
    index /= radix_[i];
  }
}

std::vector<std::uint64_t> BallQuotient::digits(std::uint64_t index) const {
  std::vector<std::uint64_t> d(radix_.size());
  digits(index, d);
  return d;
}

std::uint64_t BallQuotient::index(std::span<const std::uint64_t> d) const {
  std::uint64_t idx = 0;
  for (size_t i = radix_.size(); i-- > 0;) idx = idx * radix_[i] + d[i] % radix_[i];
  return idx;
}

std::uint64_t BallQuotient::add(std::uint64_t a, std::uint64_t b) const {
  std::uint64_t idx = 0, mult = 1;
  for (size_t i = 0; i < radix_.size(); ++i) {
    std::uint64_t r = radix_[i];
    std::uint64_t s = (a % r + b % r) % r;
    a /= r;
    b /= r;
    idx += s * mult;
    mult *= r;
  }
  return idx;
}

std::uint64_t BallQuotient::neg(std::uint64_t a) const {
  std::uint64_t idx = 0, mult = 1;
  for (size_t i = 0; i < radix_.size(); ++i) {
    std::uint64_t r = radix_[i];
    std::uint64_t s = (r - a % r) % r;
    a /= r;
    idx += s * mult;
    mult *= r;
  }
  return idx;
}

std::uint64_t BallQuotient::sub(std::uint64_t a, std::uint64_t b) const {
  std::uint64_t idx = 0, mult = 1;
  for (size_t i = 0; i < radix_.size(); ++i) {
    std::uint64_t r = radix_[i];
    std::uint64_t s = (a % r + r - b % r) % r;
    a /= r;
    b /= r;
    idx += s * mult;
    mult *= r;
  }
  return idx;
}

int BallQuotient::valuation(std::uint64_t index) const {
  int w = kZeroValuation;
  for (size_t i = 0; i < radix_.size(); ++i) {
    std::uint64_t g = index % radix_[i];
    index /= radix_[i];
    if (g == 0) continue;
    w = std::min(w, e_ * (lower_[i] + vp_u64(g, p_)) + basis_w_[i]);
  }
  return w;
}

std::string BallQuotient::label(std::uint64_t index) const {
  std::ostringstream os;
  auto d = digits(index);
  for (size_t i = 0; i < d.size(); ++i) {
    if (i) os << ':';
    os << d[i];
  }
  return os.str();
}

std::uint64_t BallQuotient::parse_label(const std::string& label) const {
  std::vector<std::uint64_t> d;
  std::stringstream ss(label);
  std::string tok;
  while (std::getline(ss, tok, ':')) d.push_back(std::stoull(tok));
  if (d.size() != radix_.size()) throw DomainError("BallQuotient: label '" + label + "' has wrong arity");
  for (size_t i = 0; i < d.size(); ++i)
    if (d[i] >= radix_[i]) throw DomainError("BallQuotient: label '" + label + "' digit out of range");
  return index(d);
}

std::vector<BallCoset> enumerate_ball_quotient(const Tower& tower, int level, int r, int s, std::uint64_t cap) {
  BallQuotient Q(tower, level, -r, s, cap);
  std::vector<BallCoset> out;
  out.reserve(Q.size());
  for (std::uint64_t i = 0; i < Q.size(); ++i) {
    BallCoset c;
    c.level = level;
    c.outer = r;
    c.inner = s;
    c.digits = Q.digits(i);
    c.valuation = Q.valuation(i);
    c.label = Q.label(i);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace infext
