#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.h"

namespace swarmcit::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("swarmcit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto path = dir_ / name;
    std::ofstream(path, std::ios::binary) << text;
    return path.string();
  }

  fs::path dir_;
};

TEST_F(Cli, CombinationsPrintsOnePerLine) {
  const auto r = invoke({"combinations", "-k", "3", "-t", "2"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "0 1\n0 2\n1 2\n");
}

TEST_F(Cli, GenerateThenVerify) {
  const auto r = invoke({"generate", "corpus:spin-s", "--seed", "7"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto suite = write("spin.suite", r.out);
  const auto model = write("spin.model", invoke({"corpus", "--show", "spin-s"}).out);
  const auto v = invoke({"verify", model, suite});
  EXPECT_EQ(v.code, kOk) << v.out;
  EXPECT_EQ(v.out.substr(0, 4), "PASS");
}

TEST_F(Cli, GenerateIsByteIdentical) {
  const auto a = invoke({"generate", "corpus:gpl", "--seed", "3", "--workers", "2"});
  const auto b = invoke({"generate", "corpus:gpl", "--seed", "3", "--workers", "8"});
  ASSERT_EQ(a.code, kOk);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(Cli, GenerateMissingFile) {
  const auto r = invoke({"generate", (dir_ / "missing.file").string()});
  EXPECT_EQ(r.code, kUsage);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST_F(Cli, GenerateBadModelReportsLine) {
  const auto model = write("bad.model", "2\n3\n2 2\n0\n");
  const auto r = invoke({"generate", model});
  EXPECT_EQ(r.code, kUsage);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST_F(Cli, GenerateFormats) {
  const auto csv = invoke({"generate", "corpus:gpl", "--format", "csv"});
  EXPECT_EQ(csv.out.substr(0, 12), "p0,p1,p2,p3\n");
  const auto json = invoke({"generate", "corpus:gpl", "--format", "json-lines"});
  std::istringstream lines(json.out);
  std::string line;
  while (std::getline(lines, line)) {
    EXPECT_EQ(nlohmann::json::parse(line).size(), 4u);
  }
  EXPECT_EQ(invoke({"generate", "corpus:gpl", "--format", "xml"}).code, kUsage);
}

TEST_F(Cli, GenerateUncoverableAndStuck) {
  const auto model = write("stuck.model", "2\n3\n2 2 2\n2\n2 0:0 2:0\n2 1:0 2:1\n");
  const auto ok = invoke({"generate", model});
  EXPECT_EQ(ok.code, kOk);
  EXPECT_NE(ok.err.find("uncoverable 0:0 1:0"), std::string::npos) << ok.err;

  const auto stuck = invoke({"generate", model, "--completion-budget", "0"});
  EXPECT_EQ(stuck.code, kStuck);
  EXPECT_NE(stuck.err.find("  0:0 1:0"), std::string::npos) << stuck.err;
}

TEST_F(Cli, GenerateTimeoutEmitsPartialSuite) {
  const auto r = invoke({"generate", "corpus:gcc", "--timeout", "0.001"});
  EXPECT_EQ(r.code, kTimeout);
  EXPECT_NE(r.err.find("still open"), std::string::npos);
  std::istringstream header(r.out);
  long long rows = -1;
  int k = 0;
  header >> rows >> k;
  EXPECT_GE(rows, 0);
  EXPECT_EQ(k, 199);
}

TEST_F(Cli, VerifyFailureAndJsonReport) {
  const auto model = write("m.model", "2\n3\n2 2 2\n1\n2 0:0 2:0\n");
  const auto suite = write("s.suite", "2 3 2\n0 1 0\n1 1 1\n");
  const auto r = invoke({"verify", model, suite, "--report", "json"});
  EXPECT_EQ(r.code, kVerifyFailed);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j["passed"].get<bool>());
  EXPECT_EQ(j["violating_rows"].size(), 1u);
  EXPECT_EQ(j["violating_rows"][0]["row"], 0);
  EXPECT_GT(j["missing"].size(), 0u);
}

TEST_F(Cli, TuplesDump) {
  const auto model = write("m.model", "2\n3\n2 2 2\n2\n2 0:0 2:0\n2 1:0 2:1\n");
  const auto r = invoke({"tuples", model});
  EXPECT_EQ(r.code, kOk);
  std::istringstream lines(r.out);
  std::string first;
  std::getline(lines, first);
  EXPECT_EQ(first, "0:0 1:0 open");
  EXPECT_NE(r.out.find("0:0 2:0 removed"), std::string::npos);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 12);

  const auto suite = write("s.suite", "1 3 2\n1 1 1\n");
  const auto marked = invoke({"tuples", model, "--suite", suite});
  EXPECT_NE(marked.out.find("0:1 1:1 covered"), std::string::npos);
}

TEST_F(Cli, BenchWritesCsv) {
  const auto csv = (dir_ / "gpl.csv").string();
  const auto r = invoke({"bench", "gpl", "--reps", "2", "--csv", csv});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "name,rep,seed,size,millis,verified");
  std::string row;
  int rows = 0;
  while (std::getline(in, row)) {
    EXPECT_EQ(row.substr(0, 4), "gpl,");
    EXPECT_NE(row.find(",true"), std::string::npos);
    ++rows;
  }
  EXPECT_EQ(rows, 2);
}

TEST_F(Cli, BenchListAndUnknown) {
  const auto list = invoke({"bench", "--list"});
  EXPECT_NE(list.out.find("derived-30\n"), std::string::npos);
  const auto bad = invoke({"bench", "nope"});
  EXPECT_EQ(bad.code, kUsage);
  EXPECT_NE(bad.err.find("spin-v"), std::string::npos);
}

TEST_F(Cli, NotationAndVersion) {
  EXPECT_EQ(invoke({"notation", "corpus:spin-s"}).out,
            "MCA(N; 2, 2^13 4^5)\nconstraints 2^13\n");
  const auto v = invoke({"--version"});
  EXPECT_EQ(v.code, kOk);
  EXPECT_EQ(v.out.substr(0, 9), "swarmcit ");
  EXPECT_NE(v.out.find(" corpus "), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(invoke({"frobnicate"}).code, kUsage);
  EXPECT_EQ(invoke({"combinations", "-k", "3"}).code, kUsage);
  EXPECT_EQ(invoke({"combinations", "-k", "3", "-t", "4"}).code, kUsage);
  EXPECT_EQ(invoke({"generate", "corpus:gpl", "--workers", "3"}).code, kUsage);
  EXPECT_EQ(invoke({"--help"}).code, kOk);
}

}  // namespace
}  // namespace swarmcit::cli
