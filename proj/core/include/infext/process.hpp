#pragma once

// Compound-Poisson simulation of the level-n projection of the jump process
// generated by -D^alpha, truncated to jumps of norm at least delta.

#include <cstdint>
#include <string>
#include <vector>

#include "infext/funcspace.hpp"
#include "infext/shell_series.hpp"

namespace infext {

inline constexpr double kRateCap = 1e7;
/// Name of the per-path generator, echoed in every report.
inline constexpr const char* kGeneratorName = "mt19937_64/seed_seq(seed,path)";

struct JumpLaw {
  int level = 1;
  double delta = 1.0;
  double alpha = 1.0;
  /// Lambda = Pi(V_{delta,n}).
  double rate = 0.0;
  /// Normalized valuations of the shells of V_{delta,n}, from s0 to w_max.
  std::vector<int> shell_valuation;
  std::vector<double> shell_probability;
  /// Quotient on which jumps are sampled; resolution = space->s0() + space->depth().
  SpacePtr space;

  int resolution() const { return space->s0() + space->depth(); }
};

/// depth = 0 selects the coarsest quotient resolving every shell of V_{delta,n}.
JumpLaw build_jump_law(const FieldPtr& field, int n, double delta, double alpha, int depth = 0,
                       double rate_cap = kRateCap);

struct JumpEvent {
  double time = 0.0;
  std::uint64_t coset = 0;
};

struct PathSample {
  std::uint64_t seed = 0;
  std::uint64_t path = 0;
  int level = 1;
  int resolution = 0;
  std::vector<JumpEvent> events;
  std::uint64_t terminal = 0;
};

/// One path on [0, t_end]; the stream is determined by (seed, path).
PathSample simulate_path(const JumpLaw& law, double t_end, std::uint64_t seed, std::uint64_t path = 0);

struct PoissonTest {
  double mean = 0.0;
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  bool passed = true;
};
/// Chi-square goodness of fit of jump counts to Poisson(mean), bins pooled to expected count >= 5.
PoissonTest poisson_test(const std::vector<std::uint64_t>& count_histogram, double mean,
                         double significance = 0.01);

struct MonteCarloReport {
  std::string generator = kGeneratorName;
  std::uint64_t seed = 0;
  std::uint64_t paths = 0;
  int level = 1;
  int resolution = 0;
  double t = 1.0;
  double alpha = 1.0;
  double delta = 1.0;
  double lambda_norm = 0.0;
  double rate = 0.0;
  Complex estimate;
  double stderr_re = 0.0;
  double stderr_im = 0.0;
  /// rho_alpha(||lambda||, t).
  double expected = 1.0;
  std::vector<std::uint64_t> jump_counts;
  PoissonTest poisson;
  /// Total variation between terminal frequencies and the heat measure on the sampling quotient (reported only).
  double tv_distance = 0.0;
  double tv_heuristic = 0.0;

  bool within(double sigmas) const;
};

/// Average of chi(<lambda, X_{V_delta}(t)>) over independent paths.
MonteCarloReport mc_characteristic(const ExtElement& lambda, double t, double alpha, double delta,
                                   std::uint64_t paths, std::uint64_t seed);

}  // namespace infext
