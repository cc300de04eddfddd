#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "toric/serialize.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(TORIC_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  Run r;
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& rel) { return std::string(TORIC_DATA_DIR) + "/" + rel; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("toric_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

toric::Json json_of(const Run& r) { return toric::Json::parse(r.out); }

}  // namespace

TEST(Cli, AnalyzeFan) {
  auto r = run("analyze-fan " + data("fans/p112.json"));
  ASSERT_EQ(r.code, 0);
  auto j = json_of(r);
  EXPECT_EQ(j["class_group"]["rank"], 1);
  EXPECT_EQ(j["picard"]["index"], 2);
  EXPECT_TRUE(j["completeness"]["complete"].get<bool>());
}

TEST(Cli, InvalidFanVerdictExitsZero) {
  fs::path d = scratch("invalid");
  toric::write_text_file((d / "bad.json").string(), R"({"rank":2,"rays":[[1,0],[0,1],[1,1]],"cones":[[0,1],[0,2]]})");
  auto r = run("analyze-fan " + (d / "bad.json").string());
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(json_of(r)["verdict"], "invalid fan");
}

TEST(Cli, InputErrorsExitTwo) {
  fs::path d = scratch("errors");
  toric::write_text_file((d / "trunc.json").string(), R"({"rank":2,"rays":[[1,0],)");
  toric::write_text_file((d / "schema.json").string(), R"({"rank":2,"rays":[[1,0,0]],"cones":[]})");
  EXPECT_EQ(run("analyze-fan " + (d / "trunc.json").string()).code, 2);
  EXPECT_EQ(run("analyze-fan " + (d / "schema.json").string()).code, 2);
  EXPECT_EQ(run("analyze-fan " + (d / "missing.json").string()).code, 2);
  EXPECT_EQ(run("wps " + data("weights/w123.json") + " bogus-mode").code, 2);
  EXPECT_EQ(run("no-such-command").code, 2);
  EXPECT_EQ(run("torsor " + data("fans/p2.json") + " " + data("actions/trivial3.json")).code, 2);
}

TEST(Cli, Wps) {
  auto r = run("wps " + data("weights/w123.json") + " prop21-chain");
  ASSERT_EQ(r.code, 0);
  auto j = json_of(r);
  ASSERT_EQ(j["chain"].size(), 3u);
  EXPECT_EQ(j["chain"][2], toric::Json::parse("[1,1,1,1,1]"));
  auto n = json_of(run("wps " + data("weights/w234.json") + " normalize"));
  EXPECT_EQ(n["normalization"]["result"], toric::Json::parse("[1,3,2]"));
}

TEST(Cli, Sweep) {
  auto r = run("wps " + data("weights/w111.json") + " strata --sweep-max 3");
  ASSERT_EQ(r.code, 0);
  auto j = json_of(r);
  EXPECT_EQ(j["sweep"]["failures"], toric::Json::array());
  EXPECT_TRUE(j["sweep"]["all_pass"].get<bool>());
  EXPECT_GT(j["sweep"]["checked"].get<int>(), 0);
}

TEST(Cli, TorsorGolden) {
  auto r = run("torsor " + data("fans/p112.json") + " " + data("actions/trivial2.json"));
  ASSERT_EQ(r.code, 0);
  auto j = json_of(r);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["weights"], toric::Json::parse("[1,1,2,1]"));
  auto s = json_of(run("torsor " + data("fans/p1xp1.json") + " " + data("actions/p1xp1_swap.json")));
  EXPECT_EQ(s["weights"], toric::Json::parse("[1,1,1,1,1]"));
}

TEST(Cli, TorsorMathematicalFailureExitsZero) {
  auto r = run("torsor " + data("fans/p2.json") + " " + data("actions/p2_negation.json"));
  EXPECT_EQ(r.code, 0);
  auto j = json_of(r);
  EXPECT_FALSE(j["passed"].get<bool>());
  EXPECT_EQ(j["failed_stage"], "validate_action");
}

TEST(Cli, TorsorOptions) {
  auto r = run("torsor " + data("fans/p112.json") + " " + data("actions/trivial2.json") + " --A 2 --z 0,1");
  ASSERT_EQ(r.code, 0);
  auto j = json_of(r);
  EXPECT_EQ(j["coefficients"]["A"], 2);
  EXPECT_EQ(j["z"], toric::Json::parse("[[0,1]]"));
  EXPECT_EQ(run("torsor " + data("fans/p112.json") + " " + data("actions/trivial2.json") + " --z 0,x").code, 2);
}

TEST(Cli, Cohomology) {
  auto r = run("cohomology " + data("actions/p1_negation.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json_of(r)["h1"]["torsion"], toric::Json::parse("[2]"));
  auto t = run("cohomology " + data("actions/p1xp1_swap.json") + " --module " + data("modules/z2.json"));
  EXPECT_EQ(json_of(t)["h1"]["torsion"], toric::Json::array());
}

TEST(Cli, OutWritesFileAndSummary) {
  fs::path d = scratch("out");
  fs::path f = d / "report.json";
  auto r = run("analyze-fan " + data("fans/cubic_3a2.json") + " --out " + f.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_FALSE(r.out.empty());
  EXPECT_NE(r.out.find("Cl = Z + Z/3"), std::string::npos);
  EXPECT_EQ(r.out.find('"'), std::string::npos);
  auto direct = run("analyze-fan " + data("fans/cubic_3a2.json"));
  EXPECT_EQ(slurp(f), direct.out);
}

TEST(Cli, ByteDeterministic) {
  for (const std::string& args :
       {"analyze-fan " + data("fans/cubic_3a2.json"), "wps " + data("weights/w123.json") + " prop21-chain",
        "torsor " + data("fans/p1xp1.json") + " " + data("actions/p1xp1_swap.json")}) {
    auto a = run(args);
    auto b = run(args);
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST(Cli, CorpusMatchesGenerator) {
  fs::path d = scratch("corpus");
  std::string cmd = std::string(TORIC_DERIVE) + " " + d.string() + " >/dev/null";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  std::size_t count = 0;
  for (const auto& e : fs::recursive_directory_iterator(d)) {
    if (!e.is_regular_file()) continue;
    fs::path rel = fs::relative(e.path(), d);
    EXPECT_EQ(slurp(e.path()), slurp(fs::path(TORIC_DATA_DIR) / rel)) << rel;
    ++count;
  }
  std::size_t shipped = 0;
  for (const auto& e : fs::recursive_directory_iterator(TORIC_DATA_DIR))
    if (e.is_regular_file()) ++shipped;
  EXPECT_EQ(count, shipped);
}
