#pragma once

// Towers k = K_1 ⊂ K_2 ⊂ ... of finite extensions of Q_p described by their
// construction steps, their arithmetic invariants, and the spectrum of the
// fractional operator that those invariants determine.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "infext/padic.hpp"

namespace infext {

enum class StepKind { unramified, eisenstein };

/// One simple extension in a tower.
///
/// Unramified steps are given by their residue-degree factor. Eisenstein
/// steps carry a monic polynomial c_0 + c_1 x + ... + x^degree whose
/// coefficients are elements of the previous step's field, each listed by its
/// integer coordinates in that field's power basis (a one-entry vector is a
/// rational integer).
struct StepSpec {
  StepKind kind = StepKind::unramified;
  int degree = 1;
  std::vector<ZVec> coefficients;
  /// False when the next step belongs to the same tower level.
  bool closes_level = true;

  static StepSpec unramified(int factor, bool closes_level = true);
  static StepSpec eisenstein(std::vector<ZVec> coefficients, bool closes_level = true);
};

struct TowerSpec {
  long p = 2;
  std::vector<StepSpec> steps;
};

/// Invariants of the field reached after a step (step 0 is Q_p).
struct StepData {
  StepKind kind = StepKind::unramified;
  int degree = 1;
  int e = 1;
  int f = 1;
  long m = 1;
  /// Different exponent over Q_p, in the step field's normalized valuation.
  int d = 0;
  /// Contribution w(E'(pi)) of this step alone (0 for unramified steps).
  int relative_d = 0;
  /// Normalized valuation of each element of the nested power basis.
  std::vector<int> basis_valuation;
};

struct LevelData {
  int n = 1;
  long m = 1;
  int e = 1;
  int f = 1;
  int d = 0;
  mpz_class q = 2;
  /// v_p(m_n).
  int vp_m = 0;
  /// Index of the last step belonging to this level.
  int step = 0;

  /// Exponent s0 with S^(n) = pi_n^{s0} O_n.
  int s0() const { return e * vp_m - d; }
  /// log q_n.
  double log_q(long p) const;
};

class Tower {
 public:
  explicit Tower(TowerSpec spec);

  long p() const { return spec_.p; }
  int depth() const { return static_cast<int>(levels_.size()); }
  const TowerSpec& spec() const { return spec_; }
  const LevelData& level(int n) const;
  const StepData& step(int s) const { return steps_.at(static_cast<size_t>(s)); }
  int step_count() const { return static_cast<int>(steps_.size()) - 1; }

  /// Ramification index e_{nν} of K_ν / K_n.
  int relative_ramification(int n, int nu) const;
  /// Different exponent d_{nν} of K_ν / K_n, composed from the steps between the levels.
  int relative_different(int n, int nu) const;
  /// The last Eisenstein step at or below a level, or 0 if the level is unramified over Q_p.
  int uniformizer_step(int n) const;

 private:
  TowerSpec spec_;
  std::vector<StepData> steps_;
  std::vector<LevelData> levels_;
};

Tower build_unramified_tower(long p, const std::vector<int>& f_list);
/// Levels K_n = Q_p(W_{n!}) for n = 1..depth.
Tower build_cyclotomic_tower(long p, int depth);

/// Ramification data of Q_p(W_{n!}) predicted directly from n! = n' p^l.
struct CyclotomicLevelInvariants {
  int l = 0;
  long tame_part = 1;
  int e = 1;
  int f = 1;
};
CyclotomicLevelInvariants cyclotomic_invariants(long p, int n);

/// d_n of a level, composed step by step from Q_p.
int different_exponent(const Tower& tower, int n);

/// A point q_1^{alpha N / e_n} of the spectrum. The exact exponent N / e_n is
/// the deduplication key; the zero eigenvalue has exponent 0 and no pairs.
struct SpectrumEntry {
  mpq_class exponent;
  double eigenvalue = 0.0;
  std::vector<std::pair<int, int>> pairs;
  /// Number of cosets a ∈ K_H / O_H with ||a||^alpha equal to the eigenvalue.
  mpz_class multiplicity;
};

std::vector<SpectrumEntry> spectrum(double alpha, const Tower& tower, int horizon, double max_value);

struct MultiplicityCount {
  mpz_class count;
  /// False when the enumeration cap was hit and the closed form was used.
  bool enumerated = true;
};

inline constexpr std::uint64_t kEnumerationCap = 10'000'000;

/// Number of cosets a ∈ K_n / O_n with |a|_n = q_n^N, by enumeration.
MultiplicityCount multiplicity_count(const Tower& tower, int n, int N,
                                     std::uint64_t cap = kEnumerationCap);

double min_positive_eigenvalue(double alpha, const Tower& tower, int horizon);

}  // namespace infext
