#include "infext/shell_series.hpp"

#include <cmath>

namespace infext {

double ShellSeries::partial_sum() const {
  // Kahan summation: shells can span many orders of magnitude.
  double s = 0.0, c = 0.0;
  for (const auto& sh : shells) {
    double y = sh.term() - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return prefactor * s;
}

double ShellSeries::error_bound() const { return std::abs(prefactor) * tail_bound; }

mpq_class ShellSeries::total_volume() const {
  mpq_class v = 0;
  for (const auto& sh : shells) v += sh.volume;
  return v;
}

}  // namespace infext
