#pragma once

// The Gaussian measure mu, the heat measure pi(t, .) and the Levy measure Pi
// evaluated on cylinder sets of a fixed level.

#include <string>
#include <vector>

#include "infext/funcspace.hpp"
#include "infext/shell_series.hpp"
#include "infext/vladimirov.hpp"

namespace infext {

/// A cylinder set T_n^{-1}(B) described at level n.
struct CylinderSet {
  enum class Kind { ball, indicator, outside };
  Kind kind = Kind::ball;
  int level = 1;
  /// ball: {||T_n x|| <= q_n^{d_n/m_n - N/f_n} ||m_n||}, the set M_n.
  int N = 1;
  /// outside: {||T_n x|| >= delta}, the set V_{delta,n}.
  double delta = 1.0;
  /// indicator: a 0/1 function on a quotient.
  CylFunction indicator;
};

/// mu(M_n) through the integration formula q^{-d} ||m||^{-m} vol{||z|| <= q^{d/m - N/f} ||m||}.
mpq_class mu_cylinder(const Tower& tower, int n, int N);

/// pi(t, M_n) by the finite closed shell sum.
ShellSeries heat_cylinder_series(const Tower& tower, int n, int N, double t, double alpha);
double heat_cylinder(const Tower& tower, int n, int N, double t, double alpha);
/// pi(t, M_n) as the integral of Gamma over {|zeta|_n <= q^{d - N e}}.
ShellSeries heat_cylinder_gamma(const Tower& tower, int n, int N, double t, double alpha,
                                double tolerance = kShellTolerance, int shell_cap = kShellCap);
/// (1 - q_1^{-1}) exp(-t q_1^{alpha N}).
double heat_lower_bound(const Tower& tower, int N, double t, double alpha);

struct MeasureRow {
  int n = 1;
  mpq_class mu;
  double pi = 0.0;
  double pi_gamma = 0.0;
  double lower_bound = 0.0;
  double log10_ratio = 0.0;
};

struct MeasureReport {
  long p = 2;
  int N = 1;
  double t = 1.0;
  double alpha = 1.0;
  int horizon = 1;
  double witness_log10_threshold = 6.0;
  std::vector<MeasureRow> rows;
  bool mu_decreasing = true;
  bool bound_holds = true;
  bool ratio_increasing = true;
  /// "pass", "fail" or "indeterminate" (a single row cannot witness growth).
  std::string flag;
};

MeasureReport theorem3_report(const Tower& tower, int N, double t, double alpha, int horizon,
                              double witness_threshold = 1e6);

/// log10 of a positive rational, accurate for huge numerators and denominators.
double log10_rational(const mpq_class& r);

/// Pi(coset) for every coset of a quotient, from the kernel written in the variable x = z / m_n.
/// The zero coset carries infinite mass and is reported as 0.
std::vector<double> levy_coset_masses(const CylinderSpace& space, double alpha);

/// Integral of phi against Pi; phi must vanish on the zero coset.
double levy_cylinder(double alpha, const CylFunction& phi);
/// The same integral on the Fourier side: -sum_xi Delta^alpha(xi) c_phi(xi).
double levy_cylinder_fourier(double alpha, const CylFunction& phi);

struct LevyKhinchin {
  double lhs = 0.0;
  double lhs_imag = 0.0;
  double rhs = 0.0;
};
/// lhs = integral of [chi(<lambda, x>) - 1] Pi(t, dx); rhs = -t ||lambda||^alpha or 0.
LevyKhinchin levy_khinchin_check(const ExtElement& lambda, double t, double alpha);

/// Pi(V_{delta,n}) shell by shell (shells labelled by normalized valuation).
ShellSeries levy_total_outside(const Tower& tower, int n, double delta, double alpha);
/// Largest normalized valuation w with ||x|| >= delta.
int delta_valuation_bound(const Tower& tower, int n, double delta);

struct RoutePair {
  Complex lhs;
  Complex rhs;
};
/// At every point y: (D^alpha f)(y) from the hypersingular kernel vs the integral of [f(y) - f(x + y)] Pi(dx).
std::vector<RoutePair> hypersingular_vs_levy(double alpha, const CylFunction& f);

/// pi(t, {z}) for every coset z: (1/|G|) sum_xi rho(||xi||, t) conj chi(xi, z).
std::vector<double> heat_coset_masses(const CylinderSpace& space, double t, double alpha);

enum class MeasureKind { gaussian, heat, levy };
/// Dispatch a cylinder set to the matching evaluator; throws for combinations without a finite value.
double evaluate(const Tower& tower, const CylinderSet& set, MeasureKind kind, double t, double alpha);

}  // namespace infext
