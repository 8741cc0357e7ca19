#pragma once

// The operator D^alpha on cylindrical functions: the spectral definition, the
// hypersingular integral form, eigen-relations, and the heat semigroup.

#include <functional>
#include <optional>
#include <vector>

#include "infext/funcspace.hpp"
#include "infext/shell_series.hpp"

namespace infext {

inline constexpr int kShellCap = 200;
inline constexpr double kShellTolerance = 1e-12;

/// Delta^alpha(xi) = ||xi||^alpha for ||xi|| > 1, else 0.
struct MultiplierSpec {
  double alpha = 1.0;

  double operator()(double norm) const;
  /// Value on a dual coset, from its exact valuation.
  double on_coset(const CylinderSpace& space, std::uint64_t xi) const;
};

/// Constants of the hypersingular kernel at one level.
struct HypersingularKernel {
  int level = 1;
  double alpha = 1.0;
  long p = 2;
  long m = 1;
  int e = 1;
  int d = 0;
  int vp_m = 0;
  double q = 2.0;
  /// C_n(alpha) = q^{d alpha / m} (1 - q^{alpha/m}) / (1 - q^{-1-alpha/m}).
  double C = 0.0;
  /// kappa_n(alpha) = (1 - q^{-1}) / (q^{alpha/m} - 1) q^{-d (1 + alpha/m)}.
  double kappa = 0.0;

  static HypersingularKernel make(const Tower& tower, int level, double alpha);

  double radial_exponent() const { return -static_cast<double>(m) - alpha; }
  /// ||m||^{-m}.
  double norm_m_factor() const;
  /// (||x|| / ||m||)^{-m-alpha} + kappa for x of normalized valuation w.
  double bracket(int w) const;
  /// Density of the Levy measure against Haar measure (vol O = 1) at valuation w: -C ||m||^{-m} bracket(w).
  double levy_density(int w) const;
};

CylFunction apply_multiplier(const CylFunction& f, const std::function<double(std::uint64_t)>& multiplier);
CylFunction apply_spectral(double alpha, const CylFunction& f);
CylFunction apply_hypersingular(double alpha, const CylFunction& f);

struct EigenCheck {
  double measured = 0.0;
  double expected = 0.0;
  /// max_z |D^alpha phi_a(z) - expected phi_a(z)|.
  double residual = 0.0;
  int depth = 0;
};

/// Build phi_a(z) = chi(a, z) on the coarsest quotient resolving a and measure its Rayleigh quotient.
EigenCheck eigencheck(const ExtElement& a, double alpha);

/// rho_alpha(s, t) = exp(-t s^alpha) for s > 1, else 1.
double rho(double s, double t, double alpha);

/// Gamma_alpha^(n)(zeta, t) at a point of normalized valuation w (nullopt for zeta = 0).
ShellSeries heat_kernel_series(const Tower& tower, int level, std::optional<int> w, double t, double alpha,
                               double tolerance = kShellTolerance, int shell_cap = kShellCap);
double heat_kernel(const ExtElement& z, double t, double alpha);
/// Integral of Gamma over K_n, shell by shell in zeta.
ShellSeries heat_kernel_mass(const Tower& tower, int level, double t, double alpha,
                             double tolerance = kShellTolerance, int shell_cap = kShellCap);

CylFunction semigroup_apply(double t, double alpha, const CylFunction& f);

/// Dense matrix of D^alpha on a quotient, row-major: entry (z, z0) is (D^alpha 1_{z0})(z).
std::vector<Complex> operator_matrix(double alpha, const SpacePtr& space);

}  // namespace infext
