#include "lionman/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lionman/error.hpp"
#include "lionman/format.hpp"

namespace lionman {
namespace {

void require_positive(double m0) {
  if (!std::isfinite(m0) || !(m0 > 0.0)) {
    throw Error(ErrorCode::Domain, "m0 must be positive and finite, got " + format_real(m0));
  }
}

}  // namespace

int fcls_bound(double m0) {
  require_positive(m0);
  return static_cast<int>(std::ceil(m0 * m0));
}

double recursion_step(double b) {
  if (!std::isfinite(b) || !(b > 1.0)) {
    throw Error(ErrorCode::Domain, "recursion_step requires b > 1, got " + format_real(b));
  }
  return (b - 1.0) * (std::sqrt(1.0 + b * b) + 1.0) / b;
}

std::vector<double> mcls_recursion(double m0) {
  require_positive(m0);
  // Each step removes more than one unit from b^2, so ceil(m0^2) + 1 steps
  // always suffice.
  const long long cap = static_cast<long long>(std::ceil(m0 * m0)) + 1;
  std::vector<double> b{m0};
  while (b.back() > 1.0) {
    if (static_cast<long long>(b.size()) > cap) {
      throw Error(ErrorCode::Internal, "moving-center recursion exceeded its iteration cap");
    }
    b.push_back(recursion_step(b.back()));
  }
  return b;
}

int mcls_bound(double m0) {
  return static_cast<int>(mcls_recursion(m0).size());
}

BoundSeries bounds_series(double m0_min, double m0_max, double step) {
  require_positive(m0_min);
  require_positive(m0_max);
  if (m0_max < m0_min) throw Error(ErrorCode::Domain, "m0_max < m0_min");
  if (!std::isfinite(step) || !(step > 0.0)) throw Error(ErrorCode::Domain, "step must be positive");

  BoundSeries series;
  const double span = (m0_max - m0_min) / step;
  const auto count = static_cast<long long>(std::floor(span + 1e-9)) + 1;
  series.rows.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) {
    const double m0 = std::min(m0_min + static_cast<double>(i) * step, m0_max);
    series.rows.push_back({m0, fcls_bound(m0), mcls_bound(m0)});
  }
  return series;
}

std::string bounds_csv(const BoundSeries& series) {
  std::string out = "m0,n_fcls,n_mcls\n";
  for (const auto& row : series.rows) {
    out += format_real(row.m0);
    out += ',';
    out += std::to_string(row.n_fcls);
    out += ',';
    out += std::to_string(row.n_mcls);
    out += '\n';
  }
  return out;
}

}  // namespace lionman
