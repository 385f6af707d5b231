// Copyright 2026 The qmgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "qmgraph/cli.hpp"

namespace qmg {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Outcome r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string fixture(const char* name) { return std::string(QMGRAPH_FIXTURES_DIR) + "/" + name; }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qmgraph-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) const {
    const auto p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }

  fs::path dir_;
};

TEST_F(CliTest, GraphDot) {
  const auto r = run({"graph", "--n", "2", "--format", "dot"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(r.out.rfind("digraph", 0), 0u);
  for (const char* label : {"e", "f", "g", "h", "i", "j"}) {
    EXPECT_NE(r.out.find("label=\"" + std::string(label) + "\""), std::string::npos);
  }
  EXPECT_EQ(run({"graph", "--n", "1"}).code, cli::kExitUsage);
}

TEST_F(CliTest, GraphJsonEdgeCount) {
  const auto r = run({"graph", "--n", "4", "--format", "json"});
  ASSERT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(nlohmann::json::parse(r.out).at("edges").size(), 120u);
}

TEST_F(CliTest, Paths) {
  auto r = run({"paths", "--n", "2"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("count=2, formula=4n-6=2, agree=yes"), std::string::npos);
  r = run({"paths", "--n", "3", "--format", "json"});
  EXPECT_EQ(r.code, cli::kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("count"), 140);
  EXPECT_EQ(j.at("formula"), 6);
  EXPECT_EQ(j.at("agree"), false);
  std::set<std::vector<std::string>> seqs;
  for (const auto& p : j.at("paths")) seqs.insert(p.at("vertices").get<std::vector<std::string>>());
  EXPECT_TRUE(seqs.contains({"x11", "x12", "x21", "x31", "x13", "x22", "x32", "x23", "x33"}));
  EXPECT_TRUE(seqs.contains({"x11", "x13", "x31", "x12", "x21", "x22", "x32", "x23", "x33"}));
  EXPECT_EQ(run({"paths", "--n", "6"}).code, cli::kExitUsage);
}

TEST_F(CliTest, CkVerify) {
  const auto r = run({"ck-verify", "--family", "pi2"});
  EXPECT_EQ(r.code, cli::kExitFindings);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("tool").at("name"), "qmgraph");
  EXPECT_EQ(j.at("config").at("window"), 64);
  EXPECT_EQ(j.at("config").at("seed"), 0);
  EXPECT_DOUBLE_EQ(j.at("config").at("tol").get<double>(), 1e-10);
  EXPECT_TRUE(j.at("interior").contains("min"));
  std::map<std::string, nlohmann::json> checks;
  for (const auto& c : j.at("checks")) checks[c.at("id")] = c;
  EXPECT_EQ(checks.at("pc:P1").at("symbolic"), "pass");
  EXPECT_EQ(checks.at("pc:P2").at("symbolic"), "pass");
  EXPECT_EQ(checks.at("ro:f|g").at("symbolic"), "fail");
  EXPECT_EQ(checks.at("ro:f|g").at("witness").at("row"), 2);
  EXPECT_EQ(run({"ck-verify", "--family", "pi4"}).code, cli::kExitUsage);
}

TEST_F(CliTest, CkVerifyWindowStability) {
  const auto verdicts = [](const std::string& window) {
    const auto j = nlohmann::json::parse(run({"ck-verify", "--family", "pi3", "--window", window}).out);
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& c : j.at("checks")) out.emplace_back(c.at("id"), c.at("symbolic"));
    return out;
  };
  EXPECT_EQ(verdicts("16"), verdicts("256"));
}

TEST_F(CliTest, Channel) {
  for (const char* path : {"0", "1"}) {
    const auto r = run({"channel", "--family", "pi2", "--path", path, "--window", "8"});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("tracePreserving").at("flag"), true);
    EXPECT_EQ(j.at("completelyPositive").at("flag"), true);
    EXPECT_EQ(j.at("stinespring").at("flag"), true);
    EXPECT_EQ(j.at("interior").at("max"), 24);
  }
  EXPECT_EQ(run({"channel", "--family", "pi2", "--path", "9"}).code, cli::kExitUsage);
  const auto r = run({"channel", "--file", fixture("kraus-e11-e12.json")});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(nlohmann::json::parse(r.out).at("confusability").at("dimension"), 4);
}

TEST_F(CliTest, Qubit) {
  auto r = run({"qubit", "factor", "--file", fixture("bell.json")});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(nlohmann::json::parse(r.out).at("result").at("isProduct"), false);
  EXPECT_EQ(run({"qubit", "factor", "--file", fixture("zero-state.json")}).code, cli::kExitUsage);
  r = run({"qubit", "claim", "--q", "2", "--exhaustive"});
  EXPECT_EQ(r.code, cli::kExitFindings);
  EXPECT_EQ(nlohmann::json::parse(r.out).at("result").at("total"), 256);
  r = run({"qubit", "dims", "--i", "4"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(nlohmann::json::parse(r.out).at("result").at("stateDim"), 1024);
}

TEST_F(CliTest, ReportsAreByteIdentical) {
  const std::vector<std::vector<std::string>> configs{
      {"graph", "--n", "3", "--format", "json"},
      {"paths", "--n", "3"},
      {"ck-verify", "--family", "pi3", "--window", "16"},
      {"channel", "--family", "pi2", "--path", "1", "--window", "4", "--seed", "7"},
      {"qubit", "claim", "--q", "5", "--samples", "200", "--seed", "3"},
  };
  for (const auto& args : configs) {
    const auto a = run(args);
    const auto b = run(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST_F(CliTest, AtomicOutputFile) {
  const auto target = (dir_ / "report.json").string();
  const auto r = run({"ck-verify", "--family", "pi2", "--window", "16", "--out", target});
  EXPECT_EQ(r.code, cli::kExitFindings);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(target);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto direct = run({"ck-verify", "--family", "pi2", "--window", "16"}).out;
  // Only the echoed --out differs from a run to stdout.
  auto a = nlohmann::json::parse(buf.str());
  auto b = nlohmann::json::parse(direct);
  a["config"].erase("out");
  b["config"].erase("out");
  EXPECT_EQ(a, b);
  EXPECT_FALSE(fs::exists(target + ".tmp"));
  EXPECT_EQ(nlohmann::json::parse(buf.str()).at("config").at("out"), target);
}

TEST_F(CliTest, MalformedInputsExitWithUsage) {
  const std::vector<std::pair<std::string, std::string>> bad_files{
      {"empty.json", ""},
      {"garbage.json", "not json at all"},
      {"truncated.json", R"({"q": 2, "amplitudes": [[1, 0)"},
      {"array.json", "[1, 2, 3]"},
      {"noq.json", R"({"amplitudes": [[1, 0], [0, 0]]})"},
      {"badq.json", R"({"q": 0, "amplitudes": [[1, 0]]})"},
      {"hugeq.json", R"({"q": 99, "amplitudes": [[1, 0]]})"},
      {"strq.json", R"({"q": "two", "amplitudes": [[1, 0], [0, 0]]})"},
      {"short.json", R"({"q": 2, "amplitudes": [[1, 0], [0, 0]]})"},
      {"pair.json", R"({"q": 1, "amplitudes": [[1], [0, 0]]})"},
      {"strings.json", R"({"q": 1, "amplitudes": [["a", "b"], [0, 0]]})"},
      {"unnormalized.json", R"({"q": 1, "amplitudes": [[1, 0], [1, 0]]})"},
      {"kraus-empty.json", R"({"kraus": []})"},
      {"kraus-missing.json", R"({"ops": []})"},
      {"kraus-dim.json", R"({"kraus": [{"dim": 2, "entries": [[1, 0]]}]})"},
      {"kraus-zero-dim.json", R"({"kraus": [{"dim": 0, "entries": []}]})"},
      {"kraus-mixed.json",
       R"({"kraus": [{"dim": 1, "entries": [[1, 0]]}, {"dim": 2, "entries": [[1,0],[0,0],[0,0],[1,0]]}]})"},
      {"kraus-nan.json", R"({"kraus": [{"dim": 1, "entries": [[1e999, 0]]}]})"},
      {"family-empty.json", "{}"},
      {"family-noiso.json", R"({"family": "x", "n": 2, "isometries": {}})"},
      {"family-n1.json", R"({"family": "x", "n": 1, "isometries": {}})"},
      {"family-badterm.json",
       R"({"family": "x", "n": 2, "isometries": {"e": {"terms": [{"coeff": [1, 0], "row": [-1, 0], "col": [3, 0]}]}}})"},
  };
  std::vector<std::vector<std::string>> cases;
  for (const auto& [name, text] : bad_files) {
    const auto path = write(name, text);
    cases.push_back({"qubit", "factor", "--file", path});
    cases.push_back({"channel", "--file", path});
    cases.push_back({"ck-verify", "--file", path});
  }
  const std::vector<std::vector<std::string>> bad_args{
      {},
      {"frobnicate"},
      {"graph"},
      {"graph", "--n"},
      {"graph", "--n", "x"},
      {"graph", "--n", "-3"},
      {"graph", "--n", "2", "--format", "svg"},
      {"graph", "--n", "99999999999999999999"},
      {"paths", "--n", "1"},
      {"paths", "--n", "7"},
      {"paths", "--n", "3", "--format", "dot"},
      {"ck-verify"},
      {"ck-verify", "--family"},
      {"ck-verify", "--family", ""},
      {"ck-verify", "--family", "pi2", "--file", fixture("pi2-family.json")},
      {"ck-verify", "--family", "pi2", "--window", "0"},
      {"ck-verify", "--family", "pi2", "--window", "-1"},
      {"ck-verify", "--family", "pi2", "--window", "1e9"},
      {"ck-verify", "--family", "pi2", "--tol", "0"},
      {"ck-verify", "--family", "pi2", "--tol", "-1"},
      {"ck-verify", "--family", "pi2", "--tol", "abc"},
      {"ck-verify", "--file", "/nonexistent/family.json"},
      {"channel"},
      {"channel", "--family", "pi2", "--path", "-1"},
      {"channel", "--family", "pi2", "--path", "abc"},
      {"channel", "--family", "pi2", "--path", ""},
      {"qubit", "claim", "--q", "", "--samples", "3"},
      {"channel", "--family", "pi2", "--format", "dot"},
      {"channel", "--family", "pi3", "--path", "0", "--window", "64"},
      {"qubit"},
      {"qubit", "factor"},
      {"qubit", "factor", "--file", "/nonexistent/state.json"},
      {"qubit", "claim"},
      {"qubit", "claim", "--q", "2"},
      {"qubit", "claim", "--q", "2", "--exhaustive", "--samples", "5"},
      {"qubit", "claim", "--q", "3", "--exhaustive"},
      {"qubit", "claim", "--q", "1", "--samples", "5"},
      {"qubit", "dims", "--i", "1"},
      {"qubit", "dims"},
      {"qubit", "teleport"},
      {"--seed", "abc", "graph", "--n", "2"},
      {"graph", "--n", "2", "--out", "/nonexistent/dir/out.dot"},
      {"graph", "--n", "2", "--bogus"},
  };
  cases.insert(cases.end(), bad_args.begin(), bad_args.end());
  ASSERT_GE(cases.size(), 50u);
  for (const auto& args : cases) {
    std::string joined;
    for (const auto& a : args) joined += a + " ";
    Outcome r;
    ASSERT_NO_THROW(r = run(args)) << joined;
    EXPECT_EQ(r.code, cli::kExitUsage) << joined << "\n" << r.out.substr(0, 200);
    EXPECT_FALSE(r.err.empty()) << joined;
  }
}

}  // namespace
}  // namespace qmg
