#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

// Spawns the installed binary; CHARK_CLI_PATH is injected by the build.

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(CHARK_CLI_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

bool has(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::string write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("cli eq verdicts and exit codes") {
  RunResult r = run_cli("eq 'loop(g1)*loop(g2)' 'loop(g1 g2) + loop(g1^-1 g2)' --samples 8");
  CHECK(r.code == 0);
  CHECK(has(r.out, "equal: yes"));
  CHECK(has(r.out, "false-equal probability"));

  r = run_cli("eq 'loop(g1)' 'loop(g1) + 1' --samples 8");
  CHECK(r.code == 1);
  CHECK(has(r.out, "equal: no"));
  CHECK(has(r.out, "witness: sample"));

  r = run_cli("eq 'arc(e.p1, e.p1)' '0'");
  CHECK(r.code == 0);
  CHECK(has(r.out, "equal: yes"));
}

TEST_CASE("cli errors exit with code 2") {
  CHECK(run_cli("eq 'loop(' '0'").code == 2);
  CHECK(has(run_cli("eq 'loop(' '0'").out, "expected ')' at position 6"));
  CHECK(run_cli("demo nonsense").code == 2);
  CHECK(run_cli("bogus-subcommand").code == 2);
  CHECK(run_cli("eq 'loop(g1)' '2' --field xyz").code == 2);
  CHECK(run_cli("--help").code == 0);
}

TEST_CASE("cli json transcript") {
  RunResult r = run_cli("eq 'loop(g1)' 'loop(g1) + 1' --json --samples 4");
  CHECK(r.code == 1);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["equal"] == false);
  CHECK(j["samples"] == 4);
  CHECK(j["witness_index"] == 0);
  CHECK(j["witness"].contains("matrices"));

  r = run_cli("eq 'loop(g1 g2)' 'loop(g2 g1)' --json --field q --samples 4");
  j = nlohmann::json::parse(r.out);
  CHECK(r.code == 0);
  CHECK(j["equal"] == true);
  CHECK(j["field"] == "Q");
}

TEST_CASE("cli eq-inv verdicts") {
  RunResult r = run_cli("eq-inv 'X(1) + Xi(1)' 'tr(X(1))' --points 20");
  CHECK(r.code == 0);
  CHECK(has(r.out, "equal: yes"));
  CHECK(has(r.out, "1 matrices, 0 vectors"));

  r = run_cli("eq-inv 'tr(X(1) X(2)) + tr(X(1) Xi(2))' 'tr(X(1))*tr(X(2))' --field q");
  CHECK(r.code == 0);

  r = run_cli("eq-inv 'tr(Th(1,1))' '0' --json --points 8");
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["vectors"] == 1);

  r = run_cli("eq-inv 'tr(X(1))' '2' --points 4");
  CHECK(r.code == 1);
  CHECK(has(r.out, "witness: point 0"));

  CHECK(run_cli("eq-inv 'tr(Y(1))' '0'").code == 2);
}

TEST_CASE("cli reduce") {
  RunResult r = run_cli("reduce 'loop(g1)*loop(g1)'");
  CHECK(r.code == 0);
  CHECK(has(r.out, "2 + loop(g1 g1)"));
}

TEST_CASE("cli reps library is refutation-only") {
  std::string reps = write_temp("cli_reps.json",
                                R"([{"matrices": [[["1","1"],["0","1"]]], "decorations": []}])");
  RunResult r = run_cli("eq 'loop(g1)' '2' --reps " + reps);
  CHECK(r.code == 0);
  CHECK(has(r.out, "no probabilistic claim"));
  r = run_cli("eq 'loop(g1)' '3' --reps " + reps);
  CHECK(r.code == 1);
  CHECK(has(r.out, "evaluates 2 vs 3"));
}

TEST_CASE("cli twisted session") {
  std::string tw = write_temp("cli_twist.json", R"({"central": [{"name": "z", "sign": -1}]})");
  RunResult r = run_cli("eq --twist " + tw + " --samples 8 -- 'loop(z g1)' '-loop(g1)'");
  CHECK(r.code == 0);
  r = run_cli("eq --twist " + tw + " 'loop(z g1)' 'loop(g1)'");
  CHECK(r.code == 1);
  r = run_cli("reduce --twist " + tw + " 'loop(z g1)*loop(z)'");
  CHECK(has(r.out, "2*loop(g1)"));
}

TEST_CASE("cli presentation battery") {
  std::string base = "check-presentation --instances 1 --points 4 --samples 4 --max-word-len 3";
  RunResult r = run_cli(base);
  CHECK(r.code == 0);
  CHECK(has(r.out, "all 24 schemas pass"));

  r = run_cli(base + " --mutate R1");
  CHECK(r.code == 1);
  CHECK(has(r.out, "schema R1: 1 instances, FAIL"));
}

TEST_CASE("cli demo") {
  RunResult r = run_cli("demo gr2n --samples 4");
  CHECK(r.code == 0);
  CHECK(has(r.out, "1 = 2 + (-1)"));
  CHECK(has(r.out, "verified"));
}

TEST_CASE("cli curves file") {
  std::string f = write_temp("cli_torus.json", R"({
    "genus": 1, "boundary": 1, "marked": 1,
    "curves": [{"loop": "a1 b1"}, {"arc": {"from": ["e", 1], "to": ["b1", 1]}}]
  })");
  RunResult r = run_cli("curves " + f);
  CHECK(r.code == 0);
  CHECK(has(r.out, "rank 2"));
  CHECK(has(r.out, "loop(a1 b1)"));
  CHECK(has(r.out, "arc(e.p1, b1.p1)"));
  CHECK(has(r.out, "product:"));

  r = run_cli("curves " + f + " --check --sites 2 --samples 6");
  CHECK(r.code == 0);
  CHECK(has(r.out, "all rules hold"));
}
