#include "lionman/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "lionman/bounds.hpp"
#include "lionman/center.hpp"
#include "lionman/error.hpp"
#include "lionman/format.hpp"

namespace lionman {
namespace {

constexpr double kIdentityTol = 1e-9;
constexpr double kSamplingGap = 1e-3;
constexpr double kSupTol = 1e-6;

double sq(double v) { return v * v; }

// One closed-form term: a (b - s) / (r_tilde - s) with s = sqrt(r_tilde^2 - a^2).
double axis_term(double a, double b, double r_tilde) {
  const double s = std::sqrt(std::max(0.0, sq(r_tilde) - sq(a)));
  return a * (b - s) / (r_tilde - s);
}

bool in_arc_domain(double r, double m, double r_tilde) {
  return m > 0.0 && m <= r && r < r_tilde && sq(r_tilde) <= sq(r) + sq(m) + kIdentityTol;
}

// Next center's min coordinate for a lion landing at `lion`, moving center c.
double next_min(const Point& c, const Point& lion) {
  if (lion.x <= 1e-12 && lion.y <= 1e-12) return 0.0;  // landing at the corner: limit value
  return center_from_ray(lion, c - lion).m;
}

Point swap_xy(const Point& p) { return {p.y, p.x}; }

// Capture-time bound evaluated with the unstabilized recursion and the
// original stopping rule (first index with a negative value). A value of
// exactly 1 maps to 0, where the recursion is undefined; it stops there.
int mcls_bound_literal_rule(double m0) {
  double b = m0;
  for (int t = 0;; ++t) {
    if (b < 0.0) return t;
    if (b == 1.0 || b == 0.0) return t + 1;
    b = b * (b - 1.0) / (std::sqrt(1.0 + b * b) - 1.0);
  }
}

std::string case_name(int i) { return std::to_string(i); }

void games_suite(VerificationReport& report, const std::vector<std::string>& prefixes, int cases,
                 std::uint64_t seed, double tol) {
  std::vector<GameConfig> configs;
  configs.reserve(static_cast<std::size_t>(cases));
  for (int i = 0; i < cases; ++i) {
    GameConfig cfg = random_game_config(seed, i);
    cfg.enforce_invariants = false;
    configs.push_back(std::move(cfg));
  }
  const auto traces = play_many(configs);
  for (int i = 0; i < cases; ++i) {
    const Trace& tr = traces[static_cast<std::size_t>(i)];
    const std::string id = case_name(i);
    const int bound = mcls_bound(initial_m0(tr.config.lion_start, tr.config.man_start));
    const bool captured = tr.outcome.kind == OutcomeKind::Captured;
    report.record(id, "capture", captured ? bound - tr.outcome.lion_moves : -1.0,
                  captured && tr.outcome.lion_moves <= bound);
    for (const auto& c : audit_trace(tr, tol)) {
      for (const auto& p : prefixes) {
        if (c.id.rfind(p, 0) == 0) {
          report.record(id + "/t" + std::to_string(c.t), c.id, c.slack, c.pass);
          break;
        }
      }
    }
  }
}

VerificationReport suite_prop3(int cases, std::uint64_t seed, double tol) {
  VerificationReport r{"prop3", cases, {}, {}};
  games_suite(r, {"prop3", "prop4"}, cases, seed, tol);
  return r;
}

VerificationReport suite_lemma1(int cases, std::uint64_t seed, double tol) {
  VerificationReport r{"lemma1", cases, {}, {}};
  games_suite(r, {"lemma1"}, cases, seed, tol);
  return r;
}

VerificationReport suite_lemma2(int cases, std::uint64_t seed, double) {
  VerificationReport r{"lemma2", cases, {}, {}};
  std::mt19937_64 rng(derive_seed(seed, 2));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < cases; ++i) {
    const std::string id = case_name(i);
    const double m = 1.0 + 19.0 * unit(rng);
    const double rad = m * (1.0 + 3.0 * unit(rng));
    const double lo = sq(rad) + 1.0;
    const double hi = sq(rad) + sq(m);
    const ArcInstance inst = ArcInstance::make(rad, m, std::sqrt(lo + (hi - lo) * unit(rng)));

    const double closed = lemma2_closed_form(inst);
    const Lemma2Terms terms = lemma2_terms(inst.r, inst.m, inst.r_tilde);
    const ArcOracleResult oracle = lemma2_arc_oracle(inst, kArcSamples);

    const double over = closed + kSupTol - oracle.sup;
    r.record(id, "lemma2.sup_upper", over, over >= 0.0);
    const double under = oracle.sup - (closed - kSamplingGap);
    r.record(id, "lemma2.sup_lower", under, under >= 0.0);
    const double ex = kIdentityTol - std::abs(oracle.at_x_axis - terms.x_axis);
    r.record(id, "lemma2.endpoint_x", ex, ex >= 0.0);
    const double ey = kIdentityTol - std::abs(oracle.at_y_axis - terms.y_axis);
    r.record(id, "lemma2.endpoint_y", ey, ey >= 0.0);

    if (i == 0) {
      const ArcOracleResult mirrored = lemma2_arc_oracle(inst, kArcSamples, true);
      const double d = kIdentityTol - std::abs(mirrored.sup - oracle.sup);
      r.record(id, "lemma2.mirror", d, d >= 0.0);
    }

    // ties the worst case at r = m to the recursion
    const double mm = 1.0 + 49.0 * unit(rng);
    const double via_lemma = lemma2_closed_form(ArcInstance::make(mm, mm, std::sqrt(1.0 + mm * mm)));
    const double via_rec = recursion_step(mm);
    const double rel = 1e-12 - std::abs(via_lemma - via_rec) / std::abs(via_rec);
    r.record(id, "lemma2.recursion_identity", rel, rel >= 0.0);
  }
  return r;
}

VerificationReport suite_lemma3(int cases, std::uint64_t seed, double) {
  VerificationReport r{"lemma3", cases, {}, {}};
  std::mt19937_64 rng(derive_seed(seed, 3));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> grid;
  for (int k = 0; k <= 40; ++k) grid.push_back(1.0 + 0.05 * k);
  for (int i = 0; i < cases; ++i) {
    const std::string id = case_name(i);
    const double m = 1.0 + 49.0 * unit(rng);
    const double g_lo = std::sqrt(1.0 + 1.0 / sq(m));
    const double gamma = g_lo + (std::sqrt(2.0) - g_lo) * unit(rng);
    const Lemma3Result res = lemma3_argmax_check(m, gamma, grid);
    r.record(id, "lemma3.argmax", 1.0 - res.beta_star, res.beta_star == 1.0);
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < res.values.size(); ++k) {
      worst = std::max(worst, res.values[k] - res.values[k - 1]);
    }
    if (res.values.size() > 1) r.record(id, "lemma3.monotone", -worst, worst < 0.0);
    const double rt = gamma * m;
    const double expected = axis_term(m, m, rt);
    const double d = kIdentityTol - std::abs(res.sup_value - expected);
    r.record(id, "lemma3.value", d, d >= 0.0);
  }
  return r;
}

void theorem1_sup_cases(VerificationReport& r, int cases, std::uint64_t seed) {
  std::mt19937_64 rng(derive_seed(seed, 4));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < cases; ++i) {
    const std::string id = "sup" + case_name(i);
    const double m = 1.0 + 1e-6 + 49.0 * unit(rng);
    const double lo = std::sqrt(sq(m) + 1.0);
    const double hi = std::sqrt(2.0) * m;
    std::vector<double> grid;
    for (int k = 0; k < 200; ++k) grid.push_back(lo + (hi - lo) * k / 199.0);
    grid.back() = hi;
    const Theorem1Result res = theorem1_sup_check(m, grid);
    const double off = std::abs(static_cast<double>(res.argmax) - static_cast<double>(res.nearest));
    r.record(id, "theorem1.argmax", 0.0 - off, off == 0.0);
    const double d = kIdentityTol - std::abs(res.max_value - res.expected);
    r.record(id, "theorem1.value", d, d >= 0.0);
    r.record(id, "theorem1.monotone", -res.max_increment, res.max_increment < 0.0);
  }
}

VerificationReport suite_theorem1(int cases, std::uint64_t seed, double tol) {
  VerificationReport r{"theorem1", cases, {}, {}};
  games_suite(r, {"theorem1"}, cases, seed, tol);
  theorem1_sup_cases(r, cases, seed);
  return r;
}

VerificationReport suite_theorem2(int, std::uint64_t, double) {
  VerificationReport r{"theorem2", 0, {}, {}};
  for (const auto& row : bounds_series(1.0, 10.0, 0.01).rows) {
    const std::string id = format_real(row.m0);
    const int gap = row.n_fcls - row.n_mcls;
    r.record(id, "theorem2.bound", gap, gap >= 0);
    if (row.m0 >= 3.0) r.record(id, "theorem2.strict", gap - 1, gap >= 1);
    const int direct = mcls_bound_literal_rule(row.m0);
    r.record(id, "recursion.literal_rule", -std::abs(direct - row.n_mcls), direct == row.n_mcls);
    ++r.cases;
  }
  // dense b > 1 grid for the per-step decay of b^2 and monotonicity of g
  for (int k = 0; k <= 99000; ++k) {
    const double b = 1.0 + 1e-3 + k * 1e-3;
    const double decay =
        (2 * b * b * b - 3 * b * b + 4 * b - 2 - 2 * sq(b - 1) * std::sqrt(1 + b * b)) / sq(b);
    const std::string id = format_real(b);
    r.record(id, "theorem2.decay", decay - 1.0, decay > 1.0);
    const double inc = recursion_step(b + 1e-6) - recursion_step(b);
    r.record(id, "recursion.monotone", inc, inc > 0.0);
  }
  return r;
}

}  // namespace

ArcInstance ArcInstance::make(double r, double m, double r_tilde) {
  const bool ok = std::isfinite(r) && std::isfinite(m) && std::isfinite(r_tilde) && m > 0.0 &&
                  m <= r && r < r_tilde && sq(r_tilde) >= sq(r) + 1.0 - kIdentityTol &&
                  sq(r_tilde) <= sq(r) + sq(m) + kIdentityTol;
  if (!ok) {
    throw Error(ErrorCode::Domain, "invalid arc instance r=" + format_real(r) + " m=" + format_real(m) +
                                       " r_tilde=" + format_real(r_tilde));
  }
  return {r, m, r_tilde};
}

Lemma2Terms lemma2_terms(double r, double m, double r_tilde) {
  if (!in_arc_domain(r, m, r_tilde)) {
    throw Error(ErrorCode::Domain, "landing arc outside the quadrant");
  }
  return {axis_term(m, r, r_tilde), axis_term(r, m, r_tilde)};
}

double lemma2_closed_form(const ArcInstance& inst) {
  const Lemma2Terms t = lemma2_terms(inst.r, inst.m, inst.r_tilde);
  return std::max(t.x_axis, t.y_axis);
}

ArcOracleResult lemma2_arc_oracle(const ArcInstance& inst, int samples, bool mirrored) {
  if (samples < 100) throw Error(ErrorCode::Domain, "arc oracle needs at least 100 samples");
  const double r = inst.r;
  const double m = inst.m;
  const double rt = inst.r_tilde;
  const Point c{r, m};

  // Angle of c - lion against the x axis; lion on the y axis at the lower end,
  // on the x axis at the upper end.
  const double lo = std::acos(std::min(1.0, r / rt));
  const double hi = std::asin(std::min(1.0, m / rt));
  const Point on_y{0.0, std::max(0.0, m - std::sqrt(std::max(0.0, sq(rt) - sq(r))))};
  const Point on_x{std::max(0.0, r - std::sqrt(std::max(0.0, sq(rt) - sq(m)))), 0.0};

  auto eval = [&](const Point& lion) {
    return mirrored ? next_min(swap_xy(c), swap_xy(lion)) : next_min(c, lion);
  };

  ArcOracleResult out;
  out.at_y_axis = eval(on_y);
  out.at_x_axis = eval(on_x);
  out.sup = std::max(out.at_x_axis, out.at_y_axis);
  for (int k = 1; k < samples - 1; ++k) {
    const double theta = lo + (hi - lo) * k / (samples - 1);
    const Point lion{r - rt * std::cos(theta), m - rt * std::sin(theta)};
    out.sup = std::max(out.sup, eval(lion));
  }
  return out;
}

Lemma3Result lemma3_argmax_check(double m, double gamma, std::span<const double> beta_grid) {
  if (beta_grid.empty()) throw Error(ErrorCode::Domain, "empty beta grid");
  Lemma3Result res;
  res.sup_value = -std::numeric_limits<double>::infinity();
  for (double beta : beta_grid) {
    const double r = beta * m;
    const double rt = gamma * r;
    if (!(beta >= 1.0) || !in_arc_domain(r, m, rt)) {
      res.skipped.push_back(beta);
      continue;
    }
    const Lemma2Terms t = lemma2_terms(r, m, rt);
    const double v = std::max(t.x_axis, t.y_axis);
    res.betas.push_back(beta);
    res.values.push_back(v);
    if (v > res.sup_value) {
      res.sup_value = v;
      res.beta_star = beta;
    }
  }
  if (res.betas.empty()) throw Error(ErrorCode::Domain, "no beta grid point inside the domain");
  return res;
}

double theorem1_value(double m, double r_tilde) {
  const double rh = r_tilde / m;
  const double s = std::sqrt(rh * rh - 1.0);
  return m * (1.0 - s) / (rh - s);
}

Theorem1Result theorem1_sup_check(double m, std::span<const double> r_tilde_grid) {
  if (!(m > 1.0) || r_tilde_grid.empty()) throw Error(ErrorCode::Domain, "theorem1 check needs m > 1");
  const double lo = std::sqrt(m * m + 1.0);
  const double hi = std::sqrt(2.0) * m;
  Theorem1Result res;
  res.max_value = -std::numeric_limits<double>::infinity();
  res.max_increment = -std::numeric_limits<double>::infinity();
  double prev = 0.0;
  for (std::size_t i = 0; i < r_tilde_grid.size(); ++i) {
    const double rt = r_tilde_grid[i];
    if (rt < lo * (1.0 - 1e-12) || rt > hi * (1.0 + 1e-12)) {
      throw Error(ErrorCode::Domain, "r_tilde grid point outside [sqrt(m^2+1), sqrt(2) m]");
    }
    const double v = theorem1_value(m, rt);
    if (v > res.max_value) {
      res.max_value = v;
      res.argmax = i;
    }
    if (std::abs(rt - lo) < std::abs(r_tilde_grid[res.nearest] - lo)) res.nearest = i;
    if (i > 0) res.max_increment = std::max(res.max_increment, v - prev);
    prev = v;
  }
  res.expected = m * (m - 1.0) / (std::sqrt(1.0 + m * m) - 1.0);
  return res;
}

void VerificationReport::record(const std::string& case_id, const std::string& inequality,
                                double slack, bool pass) {
  auto [it, inserted] = inequalities.try_emplace(inequality);
  InequalitySummary& s = it->second;
  if (inserted || slack < s.min_slack) s.min_slack = slack;
  ++s.checks;
  if (!pass) {
    ++s.failures;
    failures.push_back({case_id, inequality, slack});
  }
}

void VerificationReport::merge(const VerificationReport& other) {
  cases += other.cases;
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  for (const auto& [id, s] : other.inequalities) {
    auto [it, inserted] = inequalities.try_emplace(id, s);
    if (inserted) continue;
    it->second.checks += s.checks;
    it->second.failures += s.failures;
    it->second.min_slack = std::min(it->second.min_slack, s.min_slack);
  }
}

std::string VerificationReport::text() const {
  std::string out;
  for (const auto& [id, s] : inequalities) {
    out += suite + " " + id + ": checks=" + std::to_string(s.checks) +
           " failures=" + std::to_string(s.failures) + " min_slack=" + format_real(s.min_slack) + "\n";
  }
  out += suite + ": " + (ok() ? "PASS" : "FAIL") + " (" + std::to_string(cases) + " cases, " +
         std::to_string(failures.size()) + " failures)\n";
  return out;
}

std::string VerificationReport::rows() const {
  std::string out = "suite,case_id,inequality_id,slack,pass\n";
  for (const auto& f : failures) {
    out += suite + "," + f.case_id + "," + f.inequality + "," + format_real(f.slack) + ",0\n";
  }
  for (const auto& [id, s] : inequalities) {
    out += suite + ",all," + id + "," + format_real(s.min_slack) + "," + (s.failures ? "0" : "1") + "\n";
  }
  return out;
}

GameConfig random_game_config(std::uint64_t seed, int index, LionKind lion) {
  static constexpr const char* kMen[] = {"orthogonal", "greedy", "random"};
  std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(index)));
  const Start start = random_dominating_start(rng);
  GameConfig cfg;
  cfg.lion_start = start.lion;
  cfg.man_start = start.man;
  cfg.lion_strategy = std::string(to_string(lion));
  cfg.man_strategy = kMen[index % 3];
  cfg.seed = rng();
  return cfg;
}

VerificationReport run_suite(std::string_view name, int cases, std::uint64_t seed, double tol) {
  if (cases < 1) throw Error(ErrorCode::Domain, "cases must be at least 1");
  if (name == "prop3") return suite_prop3(cases, seed, tol);
  if (name == "lemma1") return suite_lemma1(cases, seed, tol);
  if (name == "lemma2") return suite_lemma2(cases, seed, tol);
  if (name == "lemma3") return suite_lemma3(cases, seed, tol);
  if (name == "theorem1") return suite_theorem1(cases, seed, tol);
  if (name == "theorem2") return suite_theorem2(cases, seed, tol);
  if (name == "all") {
    // games are shared by the stepwise suites
    VerificationReport all{"all", cases, {}, {}};
    games_suite(all, {"prop3", "prop4", "lemma1", "theorem1"}, cases, seed, tol);
    theorem1_sup_cases(all, cases, seed);
    for (auto* suite : {&suite_lemma2, &suite_lemma3, &suite_theorem2}) {
      VerificationReport part = suite(cases, seed, tol);
      part.cases = 0;
      all.merge(part);
    }
    return all;
  }
  throw Error(ErrorCode::UnknownSuite, "unknown suite '" + std::string(name) + "'");
}

}  // namespace lionman
