#include <gtest/gtest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

// Runs the CLI with stdout and stderr merged.
CliResult run(const std::string &args) {
  std::string cmd = std::string(SPARSECSP_CLI) + " " + args + " 2>&1";
  CliResult r;
  FILE *pipe = popen(cmd.c_str(), "r");
  if (!pipe)
    return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) / ("sparsecsp_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    write("r1.txt", "r=2 domains=2\n0 0 1\n0 1 2\n1 1 1\n");
    write("r2.txt", "r=4 domains=3\n0 0 2 2\n1 1 2 2\n0 2 2 2\n1 2 2 2\n0 1 2 2\n2 2 0 1\n");
    write("cut.txt", "r=2 domains=2\n0 1\n1 0\n");
    write("and.txt", "r=3 domains=2\n0 0 0\n0 0 1\n");
    write("pair.txt", "r=2 domains=2\n0 0\n0 1\n");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string &name) const { return (dir_ / name).string(); }
  void write(const std::string &name, const std::string &text) const {
    std::ofstream(dir_ / name) << text;
  }

  fs::path dir_;
};

} // namespace

TEST_F(Cli, AnalyzeWorkedExamples) {
  CliResult r = run("analyze --relation " + path("r1.txt"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("case: 3"), std::string::npos);
  r = run("analyze --json --relation " + path("r2.txt"));
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["case"], 3);
  EXPECT_EQ(j["plentifulness"], 2);
}

TEST_F(Cli, AnalyzeWritesOutFile) {
  CliResult r = run("analyze --relation " + path("cut.txt") + " --out " + path("report.txt"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(slurp(dir_ / "report.txt").find("case: 2"), std::string::npos);
}

TEST_F(Cli, ParseErrorsExitTwoWithLine) {
  write("bad.txt", "r=2 domains=2\n0 1\n0 q\n");
  CliResult r = run("analyze --relation " + path("bad.txt"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("line 3"), std::string::npos);
  EXPECT_EQ(run("analyze --relation " + path("missing.txt")).code, 2);
  EXPECT_EQ(run("analyze").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST_F(Cli, EmptySupportExitsThree) {
  write("empty.txt", "r=2 domains=2\n");
  EXPECT_EQ(run("analyze --relation " + path("empty.txt")).code, 3);
}

TEST_F(Cli, UnknownDemoListsDemos) {
  CliResult r = run("demo nonesuch");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("r2-nonmonotone"), std::string::npos);
  EXPECT_NE(r.out.find("full-relation"), std::string::npos);
}

TEST_F(Cli, FullRelationDemo) {
  CliResult r = run("demo full-relation --seeds 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("single-constraint"), std::string::npos);
}

TEST_F(Cli, PipelineIsDeterministic) {
  const std::string gen = "gen --kind uniform --n 10 --relation " + path("cut.txt");
  ASSERT_EQ(run(gen + " --out " + path("c.txt")).code, 0);
  const std::string sp = "sparsify --relation " + path("cut.txt") + " --instance " +
                         path("c.txt") + " --eps 1/2 --kappa 0.25 --seed 7";
  CliResult a = run(sp + " --out " + path("s1.txt"));
  CliResult b = run(sp + " --out " + path("s2.txt"));
  ASSERT_EQ(a.code, 0);
  EXPECT_NE(a.out.find("mode: iid"), std::string::npos);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(slurp(dir_ / "s1.txt"), slurp(dir_ / "s2.txt"));

  const std::string ver = "verify --relation " + path("cut.txt") + " --instance " +
                          path("c.txt") + " --sparsifier " + path("s1.txt") + " --eps 1/2";
  CliResult v1 = run(ver + " --threads 1");
  CliResult v2 = run(ver + " --threads 3");
  EXPECT_EQ(v1.out, v2.out);
  EXPECT_TRUE(v1.code == 0 || v1.code == 1);
  EXPECT_NE(v1.out.find("max_deviation"), std::string::npos);
}

TEST_F(Cli, VerifyFailureExitsOne) {
  write("c.txt", "kind=uniform n=3 r=2\n0 1\n1 0\n");
  write("s.txt", "kind=uniform n=3 r=2\n0 1 2\n1 0 2\n");
  CliResult r = run("verify --relation " + path("cut.txt") + " --instance " + path("c.txt") +
              " --sparsifier " + path("s.txt") + " --eps 1/4");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("pass: false"), std::string::npos);
  r = run("verify --relation " + path("cut.txt") + " --instance " + path("c.txt") +
          " --sparsifier " + path("c.txt") + " --eps 1/4");
  EXPECT_EQ(r.code, 0);
}

TEST_F(Cli, BudgetErrorExitsThree) {
  ASSERT_EQ(run("gen --kind uniform --n 12 --arity 2 --out " + path("c.txt")).code, 0);
  CliResult r = run("verify --relation " + path("cut.txt") + " --instance " + path("c.txt") +
              " --sparsifier " + path("c.txt") + " --budget 100");
  EXPECT_EQ(r.code, 3);
}

TEST_F(Cli, WitnessAndCensus) {
  CliResult r = run("witness --json --kind rpartite --n 3 --relation " + path("and.txt"));
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["size"], 9);
  EXPECT_EQ(j["disjoint"], true);

  ASSERT_EQ(run("gen --kind rpartite --n 6 --arity 2 --out " + path("p.txt")).code, 0);
  r = run("census --relation " + path("pair.txt") + " --instance " + path("p.txt") +
          " --lambda 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("6 6"), std::string::npos);
  r = run("census --relation " + path("pair.txt") + " --instance " + path("p.txt"));
  EXPECT_EQ(r.code, 3);
}

TEST_F(Cli, RandomGenerationNeedsArity) {
  EXPECT_EQ(run("gen --kind uniform --n 5 --m 3").code, 3);
  CliResult r = run("gen --kind symset --n 5 --m 3 --arity 2 --seed 4");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("kind=symset n=5 r=2", 0), 0u);
}
