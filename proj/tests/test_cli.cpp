#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using lionman::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("lionman_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("bounds table") {
  const fs::path dir = scratch("bounds");
  const fs::path file = dir / "bounds.csv";
  const Result r = call({"bounds", "--m0-min", "1", "--m0-max", "10", "--step", "0.05", "--out", file.string()});
  CHECK(r.code == 0);
  std::istringstream in(slurp(file));
  std::string line;
  std::getline(in, line);
  CHECK(line == "m0,n_fcls,n_mcls");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    double m0;
    int nf, nm;
    char c1, c2;
    std::istringstream ls(line);
    ls >> m0 >> c1 >> nf >> c2 >> nm;
    CHECK(nm <= nf);
  }
  CHECK(rows == 181);

  const Result s = call({"bounds", "--m0-min", "2", "--m0-max", "3", "--step", "0.5"});
  CHECK(s.out == "m0,n_fcls,n_mcls\n2,4,4\n2.5,7,5\n3,9,7\n");
}

TEST_CASE("usage errors name the flag and exit 2") {
  Result r = call({"bounds", "--step", "-1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--step") != std::string::npos);

  r = call({"sim", "--games", "0"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--games") != std::string::npos);

  r = call({"sim", "--lion-pos", "5;6", "--man-pos", "1,1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--lion-pos") != std::string::npos);

  r = call({"sim", "--lion-pos", "1,1", "--man-pos", "2,0.5"});
  CHECK(r.code == 2);

  r = call({"sim", "--lion", "tiger"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--lion") != std::string::npos);

  r = call({"verify", "--suite", "lemma9"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--suite") != std::string::npos);

  CHECK(call({}).code == 2);
  CHECK(call({"dance"}).code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("verify exit status") {
  const fs::path dir = scratch("verify");
  const Result r = call({"verify", "--suite", "theorem2", "--cases", "1", "--seed", "7", "--out", (dir / "rows.csv").string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(slurp(dir / "rows.csv").rfind("suite,case_id,inequality_id,slack,pass\n", 0) == 0);
}

TEST_CASE("sim writes traces and a summary, reproducibly") {
  const fs::path a = scratch("sim_a"), b = scratch("sim_b");
  const std::vector<std::string> base = {"sim", "--lion", "mcls", "--man", "greedy", "--lion-pos", "5,6",
                                         "--man-pos", "1,1", "--games", "6", "--seed", "42", "--out"};
  auto args_a = base, args_b = base;
  args_a.push_back(a.string());
  args_b.push_back(b.string());
  const Result ra = call(args_a);
  const Result rb = call(args_b);
  CHECK(ra.code == 0);
  CHECK(ra.out == rb.out);
  CHECK(ra.out.rfind("mean_capture,bound,ratio\n", 0) == 0);
  for (int i = 0; i < 6; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "game_%04d.csv", i);
    REQUIRE(fs::exists(a / name));
    CHECK(slurp(a / name) == slurp(b / name));
  }
  CHECK(slurp(a / "summary.csv") == slurp(b / "summary.csv"));
}

TEST_CASE("sim with random starts and a single game to stdout") {
  const Result r = call({"sim", "--lion", "fcls", "--man", "random", "--seed", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("t,man_x,man_y,lion_x,lion_y,center_x,center_y,r,m,r_tilde,captured\n", 0) == 0);
  CHECK(r.out.find("mean_capture,bound,ratio") != std::string::npos);
}

TEST_CASE("sim exits 1 when a game is not captured") {
  const Result r = call({"sim", "--lion-pos", "50,60", "--man-pos", "1,1", "--max-steps", "2"});
  CHECK(r.code == 1);
  CHECK(r.err.find("step limit") != std::string::npos);
}

TEST_CASE("scripted sim") {
  const Result r = call({"sim", "--lion-pos", "5,6", "--man-pos", "1,1", "--man", "scripted", "--script", "1,1.5;1,2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\n0,1,1.5,") != std::string::npos);
}
