#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lionman/engine.hpp"

namespace lionman {

/// Worst-case instance for one lion move: center C with max coordinate r and
/// min coordinate m, and the distance r_tilde from C to the lion's landing
/// point. Requires 0 < m <= r < r_tilde and r^2 + 1 <= r_tilde^2 <= r^2 + m^2
/// (1e-9 slack).
struct ArcInstance {
  double r = 0.0;
  double m = 0.0;
  double r_tilde = 0.0;

  static ArcInstance make(double r, double m, double r_tilde);
};

/// The two axis-endpoint values of the next center's min coordinate:
/// `x_axis` when the lion lands on the x axis, `y_axis` on the y axis.
/// Only needs the geometric domain 0 < m <= r < r_tilde <= sqrt(r^2 + m^2).
struct Lemma2Terms {
  double x_axis = 0.0;
  double y_axis = 0.0;
};
Lemma2Terms lemma2_terms(double r, double m, double r_tilde);

/// Supremum of the next center's min coordinate over landing points at
/// distance r_tilde from the center (may be negative).
double lemma2_closed_form(const ArcInstance& inst);

struct ArcOracleResult {
  double sup = 0.0;        // max over all samples
  double at_x_axis = 0.0;  // endpoint with the lion on the x axis
  double at_y_axis = 0.0;  // endpoint with the lion on the y axis
};

/// Brute-force supremum: places the center at (r, m) (or (m, r) when
/// mirrored), samples landing angles uniformly over the in-quadrant arc with
/// both endpoints exact, and builds each next center with center_from_ray.
ArcOracleResult lemma2_arc_oracle(const ArcInstance& inst, int samples, bool mirrored = false);

struct Lemma3Result {
  double beta_star = 0.0;
  double sup_value = 0.0;
  std::vector<double> betas;    // grid points inside the domain, in grid order
  std::vector<double> values;   // worst-case next m at each of them
  std::vector<double> skipped;  // grid points outside the domain
};

/// Worst-case next m as a function of r = beta * m with r_tilde = gamma * r,
/// over the grid. Points where the landing arc leaves the quadrant are
/// skipped and reported.
Lemma3Result lemma3_argmax_check(double m, double gamma, std::span<const double> beta_grid);

/// Worst-case next m at r = m for a given r_tilde.
double theorem1_value(double m, double r_tilde);

struct Theorem1Result {
  std::size_t argmax = 0;
  std::size_t nearest = 0;  // grid point nearest sqrt(m^2 + 1)
  double max_value = 0.0;
  double expected = 0.0;    // m(m-1)/(sqrt(1+m^2)-1)
  double max_increment = 0.0;  // largest consecutive difference; < 0 when decreasing
};

/// Requires the grid inside [sqrt(m^2+1), sqrt(2) m].
Theorem1Result theorem1_sup_check(double m, std::span<const double> r_tilde_grid);

struct Failure {
  std::string case_id;
  std::string inequality;
  double slack = 0.0;
};

struct InequalitySummary {
  long long checks = 0;
  long long failures = 0;
  double min_slack = 0.0;
};

struct VerificationReport {
  std::string suite;
  int cases = 0;
  std::vector<Failure> failures;
  std::map<std::string, InequalitySummary> inequalities;

  bool ok() const { return failures.empty(); }
  void record(const std::string& case_id, const std::string& inequality, double slack, bool pass);
  void merge(const VerificationReport& other);

  /// One line per inequality plus a verdict line.
  std::string text() const;
  /// Rows `suite,case_id,inequality_id,slack,pass`: every failure, then one
  /// aggregate row per inequality (case_id "all", slack = minimum slack).
  std::string rows() const;
};

/// Random MCLS game used by the verification suites: dominating start,
/// man strategy cycling orthogonal / greedy / random with the case index.
GameConfig random_game_config(std::uint64_t seed, int index, LionKind lion = LionKind::Moving);

inline constexpr int kArcSamples = 10000;

/// Suites: prop3, lemma1, lemma2, lemma3, theorem1, theorem2, all.
/// Deterministic given seed. Throws Error(UnknownSuite).
VerificationReport run_suite(std::string_view name, int cases, std::uint64_t seed, double tol);

}  // namespace lionman
