#pragma once

// Radial integrals over a local field split into valuation shells: exact
// rational volumes times real radial values, plus a bound on the omitted tail.

#include <gmpxx.h>

#include <vector>

namespace infext {

struct Shell {
  /// Shell label (a valuation or a radius exponent, per the producing series).
  int index = 0;
  mpq_class volume;
  double value = 0.0;

  double term() const { return volume.get_d() * value; }
};

struct ShellSeries {
  double prefactor = 1.0;
  std::vector<Shell> shells;
  /// Bound on |omitted sum| before the prefactor.
  double tail_bound = 0.0;
  /// Geometric ratio used for the tail bound (0 when the series is finite).
  double tail_ratio = 0.0;

  double partial_sum() const;
  /// The reported value is the partial sum; error_bound() is its certified distance to the full series.
  double total() const { return partial_sum(); }
  double error_bound() const;
  mpq_class total_volume() const;
};

}  // namespace infext
