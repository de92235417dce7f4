#pragma once

#include <string>
#include <vector>

namespace lionman {

/// Capture-time bound of the fixed-center strategy: ceil(m0^2).
int fcls_bound(double m0);

/// One step of the moving-center recursion, g(b) = b(b-1)/(sqrt(1+b^2)-1),
/// evaluated as (b-1)(sqrt(1+b^2)+1)/b. Requires b > 1.
double recursion_step(double b);

/// Capture-time bound of the moving-center strategy. Iterates the recursion
/// from m0 and returns the index of the first value <= 1, plus one move.
int mcls_bound(double m0);

/// The recursion values b_0 = m0, b_1, ... up to and including the first
/// value <= 1.
std::vector<double> mcls_recursion(double m0);

struct BoundRow {
  double m0 = 0.0;
  int n_fcls = 0;
  int n_mcls = 0;
};

struct BoundSeries {
  std::vector<BoundRow> rows;
};

/// Inclusive grid m0_min, m0_min + step, ..., m0_max.
BoundSeries bounds_series(double m0_min, double m0_max, double step);

/// CSV with header `m0,n_fcls,n_mcls`.
std::string bounds_csv(const BoundSeries& series);

}  // namespace lionman
