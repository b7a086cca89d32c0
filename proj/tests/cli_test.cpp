#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(K3CERT_BIN) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json run_json(const std::string& args) {
  const CliRun r = run(args + " --json");
  EXPECT_EQ(r.code, 0) << args;
  return json::parse(r.out);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, ConstructWorkedExample) {
  const json j = run_json("construct --p 7 --m 2 --h 1");
  EXPECT_EQ(j["command"], "construct");
  EXPECT_EQ(j["result"]["L"], "1,1/7,1,1/7,1");
  EXPECT_EQ(j["result"]["report"]["verdict"], "Pass");
  EXPECT_EQ(j["result"]["path"], "direct");
}

TEST(Cli, ConstructEvenHeightSquares) {
  const json j = run_json("construct --p 7 --m 10 --h 4");
  EXPECT_EQ(j["result"]["path"], "squared");
  EXPECT_EQ(j["result"]["report"]["e"], 2);
  EXPECT_EQ(j["result"]["report"]["h"], 4);
  EXPECT_EQ(j["result"]["report"]["verdict"], "Pass");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("construct --p 7 --m 3 --h 4").code, 1);
  EXPECT_EQ(run("construct --p 8 --m 3 --h 1").code, 1);
  EXPECT_EQ(run("feasible --p 3 --rho 2 --height 1").code, 1);
  EXPECT_EQ(run("check --p 7 --coeffs 1,x").code, 1);
  EXPECT_EQ(run("check --p 7 --coeffs 2,0,1").code, 1);
  EXPECT_EQ(run("check --p 7").code, 1);
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("hilbert --a 0 --b 1 --place 2").code, 1);
  EXPECT_EQ(run("hilbert --a 1 --b 1 --place 4").code, 1);
  EXPECT_EQ(run("lattice --m 8 --n 5").code, 1);
  EXPECT_EQ(run("lattice --m 5 --n 5").code, 1);
  EXPECT_EQ(run("lattice --m 6 --n 5 --split 7=maybe").code, 1);
  EXPECT_TRUE(run("construct --p 7 --m 3 --h 4").out.empty());
}

TEST(Cli, InternalGuardExitCode) {
  // The a-search cap is exhausted before any admissible a.
  EXPECT_EQ(run("construct --p 7 --m 2 --h 2 --a-start 2 --a-cap 2").code, 2);
}

TEST(Cli, CheckVerdicts) {
  json j = run_json("check --p 7 --coeffs 1,1/7,1,1/7,1");
  EXPECT_EQ(j["result"]["verdict"], "Pass");
  EXPECT_EQ(j["result"]["m"], 2);
  EXPECT_EQ(j["result"]["h"], 1);
  EXPECT_EQ(j["result"]["a"], 1);
  EXPECT_EQ(j["result"]["e"], 1);
  j = run_json("check --p 7 --coeffs 1,-1,1");
  EXPECT_EQ(j["result"]["verdict"], "Fail");
  EXPECT_EQ(j["result"]["failed_bullet"], "no_roots_of_unity");
  j = run_json("check --p 5 --coeffs 1,1/7,1,1/7,1");
  EXPECT_EQ(j["result"]["failed_bullet"], "integral_away_from_p");
}

TEST(Cli, GoldenCheckReport) {
  const CliRun r = run("check --p 7 --coeffs 1,1/7,1,1/7,1 --json");
  EXPECT_EQ(r.out, read_file(std::string(GOLDEN_DIR) + "/check_worked.json"));
}

TEST(Cli, ByteStableJson) {
  for (const char* args : {"construct --p 5 --m 6 --h 4 --json", "lattice --m 8 --n 5 --p1 7 --json",
                           "table --p 5 --json", "feasible --p 7 --rho 4 --height 9 --witness --json"}) {
    const CliRun a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST(Cli, TextAndJsonCarryTheSameVerdict) {
  const json j = run_json("check --p 7 --coeffs 1,-1,1");
  const CliRun t = run("check --p 7 --coeffs 1,-1,1");
  EXPECT_NE(t.out.find("result.verdict: " + j["result"]["verdict"].get<std::string>()), std::string::npos);
  EXPECT_NE(t.out.find("result.failed_bullet: " + j["result"]["failed_bullet"].get<std::string>()), std::string::npos);
  EXPECT_NE(t.out.find("result.h: null"), std::string::npos);
}

TEST(Cli, Lattice) {
  json j = run_json("lattice --m 10 --n 1 --disc-square true");
  EXPECT_EQ(j["result"]["N"]["blocks"], json::array({"U"}));
  EXPECT_EQ(j["result"]["bayer"]["hyperbolicity"]["status"], "PASS");

  j = run_json("lattice --m 10 --n 5 --disc-square false");
  EXPECT_EQ(j["result"]["N"]["blocks"], json::parse(R"([{"diag":2},{"diag":-40}])"));
  EXPECT_EQ(j["result"]["no_minus2_certificate"]["certified"], true);
  EXPECT_EQ(j["result"]["degree2_vector"], json::array({1, 0}));

  j = run_json("lattice --m 8 --n 5 --p1 7");
  EXPECT_EQ(j["result"]["p2"], 11);
  const std::string status = j["result"]["bayer"]["hyperbolicity"]["status"];
  EXPECT_TRUE(status == "PASS" || status == "CONDITIONAL-PASS");
  for (const auto& q : j["result"]["bayer"]["hyperbolicity"]["discrepancies"]) EXPECT_EQ(q, 7);

  j = run_json("lattice --m 6 --n 3 --split 3=false --split 5=true");
  EXPECT_EQ(j["inputs"]["split"]["3"], false);
  EXPECT_EQ(j["result"]["T_invariants"]["det"], 3);

  EXPECT_EQ(run("lattice --m 10 --n 5 --disc-square true").code, 1);
}

TEST(Cli, Feasibility) {
  json j = run_json("feasible --p 7 --rho 4 --height 9 --witness");
  EXPECT_EQ(j["result"]["feasible"], true);
  EXPECT_EQ(j["result"]["witness_status"], "Computed");
  EXPECT_EQ(j["result"]["witness"]["report"]["verdict"], "Pass");
  j = run_json("feasible --p 7 --rho 6 --height 9");
  EXPECT_EQ(j["result"]["feasible"], false);
  EXPECT_EQ(j["result"]["reason"], "ArtinViolation");
}

TEST(Cli, TableMatchesPredicate) {
  for (int p : {5, 7}) {
    const json j = run_json("table --p " + std::to_string(p));
    ASSERT_EQ(j["result"]["cells"].size(), 100u);
    for (const auto& c : j["result"]["cells"]) {
      const int rho = c["rho"], h = c["h"];
      EXPECT_EQ(c["feasible"], rho <= 22 - 2 * h);
      EXPECT_EQ(c["witness_status"] == "UnsupportedCase", p == 5 && rho == 2 && h % 2 == 1);
    }
  }
  const CliRun t = run("table --p 5");
  EXPECT_NE(t.out.find("    2  U  +  U"), std::string::npos);
}

TEST(Cli, HilbertAndStrip) {
  json j = run_json("hilbert --a -1 --b -1 --place inf");
  EXPECT_EQ(j["result"]["symbol"], 1);
  j = run_json("hilbert --a -5 --b 5 --place 2");
  EXPECT_EQ(j["result"]["symbol"], 0);
  j = run_json("hilbert --a 2/3 --b -1 --place 3");
  EXPECT_EQ(j["result"]["symbol"], 1);
  j = run_json("strip --coeffs 1,-6/7,6/7,-6/7,6/7,-1");
  EXPECT_EQ(j["result"]["quotient"], "1,1/7,1,1/7,1");
  EXPECT_EQ(j["result"]["removed"], json::array({1}));
}
