#pragma once

// Finite ball quotients pi^lo O_n / pi^hi O_n in lattice coordinates.
//
// The nested power basis b_i of O_n is valuation-orthogonal:
// w(sum c_i b_i) = min_i (e_n v_p(c_i) + w(b_i)). Hence pi^k O_n is the
// diagonal lattice sum_i p^{ceil((k - w(b_i)) / e_n)} Z_p b_i and every ball
// quotient is a product of cyclic p-groups, one per basis element.

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "infext/tower.hpp"

namespace infext {

inline constexpr int kZeroValuation = std::numeric_limits<int>::max();

class BallQuotient {
 public:
  BallQuotient(const Tower& tower, int level, int lo, int hi, std::uint64_t cap = std::uint64_t{1} << 26);

  int level() const { return level_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  long p() const { return p_; }
  int e() const { return e_; }
  int dim() const { return static_cast<int>(radix_.size()); }
  std::uint64_t size() const { return size_; }

  /// Coordinate i of a coset is g_i in [0, radix_i); the coset is sum_i p^{lower_i} g_i b_i.
  int lower(int i) const { return lower_[static_cast<size_t>(i)]; }
  int upper(int i) const { return upper_[static_cast<size_t>(i)]; }
  std::uint64_t radix(int i) const { return radix_[static_cast<size_t>(i)]; }
  int basis_valuation(int i) const { return basis_w_[static_cast<size_t>(i)]; }

  std::vector<std::uint64_t> digits(std::uint64_t index) const;
  void digits(std::uint64_t index, std::span<std::uint64_t> out) const;
  std::uint64_t index(std::span<const std::uint64_t> digits) const;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t neg(std::uint64_t a) const;

  /// Normalized valuation of the coset (kZeroValuation for the zero coset).
  int valuation(std::uint64_t index) const;
  /// Digit string "g_0:g_1:..." (canonical smallest representative).
  std::string label(std::uint64_t index) const;
  std::uint64_t parse_label(const std::string& label) const;

 private:
  long p_;
  int level_, lo_, hi_, e_;
  std::vector<int> basis_w_;
  std::vector<int> lower_, upper_;
  std::vector<std::uint64_t> radix_;
  std::uint64_t size_ = 1;
};

/// One coset of pi^s O_n inside pi^{-r} O_n.
struct BallCoset {
  int level = 1;
  int outer = 0;  // r: outer ball pi^{-r} O
  int inner = 0;  // s: inner ball pi^{s} O
  std::vector<std::uint64_t> digits;
  int valuation = kZeroValuation;
  std::string label;
};

std::vector<BallCoset> enumerate_ball_quotient(const Tower& tower, int level, int r, int s,
                                               std::uint64_t cap = kEnumerationCap);

}  // namespace infext
