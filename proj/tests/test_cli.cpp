#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, bool merge_stderr = false) {
  std::string cmd = std::string(SECLUDED_CLI) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string corpus(const std::string& name) { return std::string(SECLUDED_CORPUS) + "/" + name; }

json first_record(const Run& r) {
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  return json::parse(line);
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("secluded_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(CliSolve, FigureOneOracle) {
  auto r = run("solve --algo oracle --graph " + corpus("figure1.graph") + " --k 5 --l 5");
  ASSERT_EQ(r.code, 0) << r.out;
  auto rec = first_record(r);
  EXPECT_EQ(rec["answer"], true);
  EXPECT_EQ(rec["instance"], "figure1");
  EXPECT_LE(rec["witness"]["length"].get<int>(), 5);
}

TEST(CliSolve, ShortestOnPath) {
  auto r = run("solve --algo shortest --graph " + corpus("p4.graph"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(first_record(r)["value"], 0);
}

TEST(CliSolve, SolversAgreeWithOracle) {
  for (const std::string file : {"figure1.graph", "random10.graph", "grid2x4.graph", "k5.graph"}) {
    for (const std::string flags : {" --k 5 --l 4", " --k 6 --l 3 --exact-k", " --k 5 --l 5 --exact-k --exact-l"}) {
      auto base = " --graph " + corpus(file) + flags;
      auto want = first_record(run("solve --algo oracle" + base))["answer"];
      for (const std::string algo : {"nd", "tc"}) {
        auto r = run("solve --algo " + algo + base + " --max-cover 16");
        ASSERT_EQ(r.code, 0) << algo << base;
        EXPECT_EQ(first_record(r)["answer"], want) << algo << base;
      }
      auto cw = run("solve --algo cw --expr naive --max-labels 12" + base);
      ASSERT_EQ(cw.code, 0) << base;
      EXPECT_EQ(first_record(cw)["answer"], want) << "cw" << base;
    }
  }
}

TEST(CliSolve, CwWithExpressionFile) {
  auto r = run("solve --algo cw --graph " + corpus("k5.graph") + " --expr " + corpus("k5.expr") +
               " --k 5 --l 0 --exact-k --exact-l");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(first_record(r)["answer"], true);
}

TEST(CliSolve, InputErrors) {
  EXPECT_EQ(run("solve --algo cw --graph " + corpus("k5.graph") + " --k 3 --l 0").code, 2);
  EXPECT_EQ(run("solve --algo shortest --graph " + corpus("p4.graph") + " --k 3").code, 2);
  EXPECT_EQ(run("solve --algo oracle --graph " + corpus("p4.graph")).code, 2);
  EXPECT_EQ(run("solve --algo oracle --graph /nonexistent.graph --k 3 --l 0").code, 2);
  EXPECT_EQ(run("solve --algo magic --graph " + corpus("p4.graph")).code, 2);
  EXPECT_EQ(run("solve --algo oracle --graph " + corpus("p4.graph") + " --k 1 --l 0").code, 2);
  EXPECT_EQ(run("solve --algo cw --graph " + corpus("p4.graph") + " --expr " + corpus("k5.expr") + " --k 3 --l 0").code,
            2);
  EXPECT_EQ(run("").code, 2);
}

TEST(CliSolve, CapsExitThree) {
  EXPECT_EQ(run("solve --algo nd --graph " + corpus("random10.graph") + " --k 4 --l 4 --max-modules 3").code, 3);
  EXPECT_EQ(run("solve --algo tc --graph " + corpus("grid2x4.graph") + " --k 4 --l 4 --max-cover 1").code, 3);
  EXPECT_EQ(run("solve --algo cw --expr naive --graph " + corpus("random10.graph") + " --k 4 --l 4").code, 3);
  EXPECT_EQ(run("solve --algo oracle --graph " + corpus("k10.graph") + " --k 10 --l 0 --budget 50").code, 3);
}

TEST(CliSolve, ReportsAreByteIdentical) {
  auto args = "solve --algo tc --graph " + corpus("random10.graph") + " --k 6 --l 5 --exact-k";
  auto a = run(args);
  auto b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(CliSolve, WeightedShortest) {
  auto r = run("solve --algo wshortest --graph " + corpus("weighted6.graph"));
  ASSERT_EQ(r.code, 0);
  auto rec = first_record(r);
  EXPECT_EQ(rec["answer"], true);
  EXPECT_TRUE(rec["witness"].contains("weight"));
}

TEST(CliCrosscheck, ShippedCorpusAgrees) {
  auto r = run("crosscheck --corpus " + std::string(SECLUDED_CORPUS));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("\"disagree\""), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\"summary\""), std::string::npos);
}

TEST(CliCrosscheck, CorruptedGoldenIsDetected) {
  auto dir = scratch("golden");
  fs::copy_file(corpus("figure1.graph"), dir / "figure1.graph");
  std::ofstream(dir / "figure1.answers") << "exact 4 5 true\n";
  auto r = run("crosscheck --corpus " + dir.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("\"disagree\""), std::string::npos);
  fs::remove_all(dir);
}

TEST(CliCrosscheck, EmptyCorpusIsVacuousPass) {
  auto dir = scratch("empty");
  auto r = run("crosscheck --corpus " + dir.string(), true);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("warning"), std::string::npos);
  fs::remove_all(dir);
  EXPECT_EQ(run("crosscheck --corpus " + dir.string()).code, 2);
}

TEST(CliGen, Deterministic) {
  auto a = run("gen --family random --n 10 --p 0.4 --seed 7");
  auto b = run("gen --family random --n 10 --p 0.4 --seed 7");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  auto c = run("gen --family mc-reduction --k 3 --seed 1");
  auto d = run("gen --family mc-reduction --k 3 --seed 1");
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(c.out, d.out);
  EXPECT_NE(c.out.find("ew "), std::string::npos);
  EXPECT_EQ(run("gen --family nothing").code, 2);
}

TEST(CliGen, ShippedRandomMatchesGenerator) {
  std::ifstream in(corpus("random10.graph"));
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(run("gen --family random --n 10 --p 0.4 --seed 7").out, text.str());
}

TEST(CliBench, CsvShape) {
  auto r = run("bench --family clique --sizes 3,4 --solvers oracle,cw,nd,tc,shortest");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "instance,solver,param,k,l,answer,micros,states");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 7) << line;
  }
  // sizes 3 and 4: (2 + 3) k values for each of four solvers, plus two shortest rows
  EXPECT_EQ(rows, 5U * 4U + 2U);
}
