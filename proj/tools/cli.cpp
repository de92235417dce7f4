#include "cli.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "lionman/bounds.hpp"
#include "lionman/engine.hpp"
#include "lionman/error.hpp"
#include "lionman/format.hpp"
#include "lionman/http_api.hpp"
#include "lionman/verify.hpp"

namespace lionman::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Point parse_point(const std::string& flag, const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError(flag + ": expected X,Y but got '" + text + "'");
  try {
    std::size_t used_x = 0;
    std::size_t used_y = 0;
    const std::string xs = text.substr(0, comma);
    const std::string ys = text.substr(comma + 1);
    Point p{std::stod(xs, &used_x), std::stod(ys, &used_y)};
    if (used_x != xs.size() || used_y != ys.size() || !is_finite(p)) throw std::invalid_argument("");
    return p;
  } catch (const std::logic_error&) {
    throw UsageError(flag + ": expected X,Y but got '" + text + "'");
  }
}

// "x,y;x,y;..."
std::vector<Point> parse_script(const std::string& text) {
  std::vector<Point> pts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (!item.empty()) pts.push_back(parse_point("--script", item));
  }
  return pts;
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
}

struct SimOptions {
  std::string lion = "mcls";
  std::string man = "orthogonal";
  std::string lion_pos;
  std::string man_pos;
  std::string script;
  int games = 1;
  std::optional<int> max_steps;
  std::uint64_t seed = 0;
  int greedy_samples = 360;
  std::string out;
};

int run_sim(const SimOptions& o, std::ostream& out, std::ostream& err) {
  if (o.lion_pos.empty() != o.man_pos.empty()) {
    throw UsageError("--lion-pos and --man-pos must be given together");
  }
  std::optional<Start> fixed;
  if (!o.lion_pos.empty()) {
    fixed = Start{parse_point("--lion-pos", o.lion_pos), parse_point("--man-pos", o.man_pos)};
    try {
      Game probe(parse_lion_kind(o.lion), fixed->lion, fixed->man);
    } catch (const Error& e) {
      throw UsageError(std::string("--lion-pos/--man-pos: ") + e.what());
    }
  }
  const std::vector<Point> script = parse_script(o.script);
  const LionKind kind = parse_lion_kind(o.lion);

  std::vector<GameConfig> configs;
  for (int i = 0; i < o.games; ++i) {
    GameConfig c;
    const std::uint64_t game_seed = derive_seed(o.seed, static_cast<std::uint64_t>(i));
    if (fixed) {
      c.lion_start = fixed->lion;
      c.man_start = fixed->man;
    } else {
      std::mt19937_64 rng(derive_seed(game_seed, 0x5747));
      const Start s = random_dominating_start(rng);
      c.lion_start = s.lion;
      c.man_start = s.man;
    }
    c.lion_strategy = o.lion;
    c.man_strategy = o.man;
    c.max_steps = o.max_steps;
    c.seed = game_seed;
    c.script = script;
    c.greedy_samples = o.greedy_samples;
    configs.push_back(std::move(c));
  }

  const std::vector<Trace> traces = play_many(configs);

  bool bad = false;
  double capture_sum = 0.0;
  double bound_sum = 0.0;
  int captured = 0;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const Trace& tr = traces[i];
    const int bound = capture_bound(kind, initial_m0(tr.config.lion_start, tr.config.man_start));
    bound_sum += bound;
    if (tr.outcome.kind == OutcomeKind::Captured) {
      ++captured;
      capture_sum += tr.outcome.lion_moves;
      if (tr.outcome.lion_moves > bound) {
        err << "game " << i << ": captured after " << tr.outcome.lion_moves << " moves, bound " << bound << "\n";
        bad = true;
      }
    } else {
      err << "game " << i << ": "
          << (tr.outcome.kind == OutcomeKind::StepLimit ? "step limit reached" : tr.outcome.detail) << "\n";
      bad = true;
    }
  }
  const double n = static_cast<double>(traces.size());
  const double mean_capture = captured ? capture_sum / captured : 0.0;
  const double mean_bound = bound_sum / n;
  const std::string summary = "mean_capture,bound,ratio\n" + format_real(mean_capture) + "," +
                              format_real(mean_bound) + "," + format_real(mean_capture / mean_bound) + "\n";

  if (o.out.empty()) {
    if (traces.size() == 1) out << trace_csv(traces[0]);
  } else if (o.games == 1 && fs::path(o.out).has_extension()) {
    write_file(o.out, trace_csv(traces[0]));
  } else {
    const fs::path dir(o.out);
    fs::create_directories(dir);
    for (std::size_t i = 0; i < traces.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "game_%04zu.csv", i);
      write_file(dir / name, trace_csv(traces[i]));
    }
    write_file(dir / "summary.csv", summary);
  }
  out << summary;
  return bad ? 1 : 0;
}

int run_bounds(double lo, double hi, double step, const std::string& path, std::ostream& out) {
  if (hi < lo) throw UsageError("--m0-max must be >= --m0-min");
  const std::string csv = bounds_csv(bounds_series(lo, hi, step));
  if (path.empty()) {
    out << csv;
  } else {
    write_file(path, csv);
  }
  return 0;
}

int run_verify(const std::string& suite, int cases, std::uint64_t seed, double tol, const std::string& path,
               std::ostream& out) {
  VerificationReport report;
  try {
    report = run_suite(suite, cases, seed, tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::UnknownSuite) throw UsageError(std::string("--suite: ") + e.what());
    throw;
  }
  out << report.text();
  if (!path.empty()) write_file(path, report.rows());
  return report.ok() ? 0 : 1;
}

PlayServer* g_server = nullptr;

extern "C" void on_signal(int) {
  if (g_server) g_server->stop();
}

int run_serve(const std::string& host, int port, std::ostream& out, std::ostream& err) {
  PlayService service;
  PlayServer server(service);
  const int bound = server.bind(host, port);
  if (bound < 0) {
    err << "cannot bind " << host << ":" << port << "\n";
    return 1;
  }
  out << "listening on http://" << host << ":" << bound << "\n" << std::flush;
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  server.listen();
  g_server = nullptr;
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lion and man: simulation, bound tables, verification, play service", "lionman"};
  app.require_subcommand(1);

  SimOptions sim;
  auto* sim_cmd = app.add_subcommand("sim", "play games and write traces");
  sim_cmd->add_option("--lion", sim.lion)->check(CLI::IsMember({"fcls", "mcls"}));
  sim_cmd->add_option("--man", sim.man)->check(CLI::IsMember({"orthogonal", "greedy", "random", "scripted"}));
  sim_cmd->add_option("--lion-pos", sim.lion_pos, "X,Y (random dominating start if omitted)");
  sim_cmd->add_option("--man-pos", sim.man_pos, "X,Y");
  sim_cmd->add_option("--script", sim.script, "scripted man moves: X,Y;X,Y;...");
  sim_cmd->add_option("--games", sim.games)->check(CLI::PositiveNumber);
  sim_cmd->add_option("--max-steps", sim.max_steps)->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim.seed);
  sim_cmd->add_option("--greedy-samples", sim.greedy_samples)->check(CLI::Range(8, 1000000));
  sim_cmd->add_option("--out", sim.out, "file (one game) or directory");

  double m0_min = 1.0, m0_max = 10.0, step = 0.05;
  std::string bounds_out;
  auto* bounds_cmd = app.add_subcommand("bounds", "tabulate capture-time bounds");
  bounds_cmd->add_option("--m0-min", m0_min)->check(CLI::PositiveNumber);
  bounds_cmd->add_option("--m0-max", m0_max)->check(CLI::PositiveNumber);
  bounds_cmd->add_option("--step", step)->check(CLI::PositiveNumber);
  bounds_cmd->add_option("--out", bounds_out);

  std::string suite = "all";
  int cases = 1000;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string verify_out;
  auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
  verify_cmd->add_option("--suite", suite);
  verify_cmd->add_option("--cases", cases)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", seed);
  verify_cmd->add_option("--tol", tol)->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--out", verify_out, "per-inequality rows CSV");

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve_cmd = app.add_subcommand("serve", "run the play service");
  serve_cmd->add_option("--port", port)->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", host);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (sim_cmd->parsed()) return run_sim(sim, out, err);
    if (bounds_cmd->parsed()) return run_bounds(m0_min, m0_max, step, bounds_out, out);
    if (verify_cmd->parsed()) return run_verify(suite, cases, seed, tol, verify_out, out);
    if (serve_cmd->parsed()) return run_serve(host, port, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace lionman::cli
