// Copyright 2026 The ctx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "ctx/cli.hpp"
#include "ctx/document.hpp"
#include "ctx/monotone.hpp"
#include "fixtures.hpp"

namespace ctx {
namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("ctx_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    write("si.json", save_document(make_simplest_scenario()));
    write("table.json", save_document(testing::table_behavior()));
    write("uniform.json", save_document(Behavior::uniform(make_simplest_scenario())));
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  int run(std::vector<std::string> args) {
    std::ostringstream o, e;
    const int code = run_cli(args, o, e);
    out_ = o.str();
    err_ = e.str();
    return code;
  }
  Json result() const { return Json::parse(out_); }

  fs::path dir_;
  std::string out_, err_;
};

TEST_F(Cli, CheckReportsH7) {
  ASSERT_EQ(run({"check", "--scenario", path("si.json"), "--behavior", path("table.json")}), kExitOk) << err_;
  const Json r = result();
  EXPECT_TRUE(r["contextual"].get<bool>());
  EXPECT_EQ(r["violated"], "h7");
  EXPECT_EQ(out_.find('\n'), out_.size() - 1);
}

TEST_F(Cli, CheckUniformReturnsModel) {
  ASSERT_EQ(run({"check", "--scenario", path("si.json"), "--behavior", path("uniform.json")}), kExitOk);
  EXPECT_FALSE(result()["contextual"].get<bool>());
  EXPECT_TRUE(result().contains("model"));
}

TEST_F(Cli, DistanceMatchesLibraryBitForBit) {
  ASSERT_EQ(run({"distance", "--scenario", path("si.json"), "--behavior", path("uniform.json")}), kExitOk);
  EXPECT_EQ(result()["d"].get<double>(), 0.0);
  ASSERT_EQ(run({"distance", "--scenario", path("si.json"), "--behavior", path("table.json")}), kExitOk);
  const Json lib = l1_distance(make_simplest_scenario(), load_behavior(save_document(testing::table_behavior())));
  EXPECT_EQ(result()["d"].dump(), lib.dump());
}

TEST_F(Cli, VerticesCounts) {
  ASSERT_EQ(run({"vertices", "--scenario", path("si.json")}), kExitOk);
  EXPECT_EQ(result()["count"], 36);
  EXPECT_EQ(result()["contextual"], 8);
  ASSERT_EQ(run({"vertices", "--scenario", path("si.json"), "--list"}), kExitOk);
  EXPECT_EQ(result()["vertices"].size(), 36u);
}

TEST_F(Cli, ValidateReportsViolations) {
  write("bad.json", R"({"kind":"behavior","probs":[[[1.5,-0.5],[0.5,0.5],[0.5,0.5],[0.5,0.5]],
                                                 [[0.5,0.5],[0.5,0.5],[0.5,0.5],[0.5,0.5]]]})");
  ASSERT_EQ(run({"validate", "--scenario", path("si.json"), "--behavior", path("bad.json")}), kExitOk);
  EXPECT_FALSE(result()["ok"].get<bool>());
  EXPECT_FALSE(result()["behavior"]["violations"].empty());
  EXPECT_EQ(run({"check", "--scenario", path("si.json"), "--behavior", path("bad.json")}), kExitInvalidInput);
  EXPECT_TRUE(out_.empty());
}

TEST_F(Cli, ApplyEraseComposePower) {
  write("alpha.json", save_document(simplest_permutation(Generator::alpha)));
  ASSERT_EQ(run({"apply", "--scenario", path("si.json"), "--behavior", path("table.json"), "--operation",
                 path("alpha.json")}),
            kExitOk)
      << err_;
  EXPECT_EQ(result()["transport"][0]["status"], "transported");
  ASSERT_EQ(run({"erase", "--scenario", path("si.json"), "--behavior", path("table.json"), "--keep", "1"}), kExitOk);
  EXPECT_EQ(result()["scenario"]["meas"], 1);
  ASSERT_EQ(run({"compose", "--scenario", path("si.json"), "--scenario2", path("si.json"), "--behavior",
                 path("table.json"), "--behavior2", path("uniform.json")}),
            kExitOk);
  EXPECT_EQ(result()["scenario"]["preps"], 8);
  EXPECT_EQ(result()["behavior"]["probs"].size(), 4u);
  ASSERT_EQ(run({"power", "--scenario", path("si.json"), "-n", "3"}), kExitOk);
  EXPECT_EQ(result()["scenario"]["meas"], 6);
}

TEST_F(Cli, SimulateSecondaryDemoWitnessCloning) {
  ASSERT_EQ(run({"simulate", "--simulating", path("table.json"), "--target", path("table.json")}), kExitOk);
  EXPECT_TRUE(result()["feasible"].get<bool>());
  EXPECT_TRUE(result().contains("free_operation"));
  ASSERT_EQ(run({"secondary", "--scenario", path("si.json"), "--behavior", path("table.json")}), kExitOk);
  EXPECT_NEAR(result()["objective"].get<double>(), 0.0, 1e-12);
  ASSERT_EQ(run({"quantum-demo"}), kExitOk);
  EXPECT_EQ(result()["violated"], "h7");
  EXPECT_NEAR(result()["inequalities"]["h7"].get<double>(), std::sqrt(2.0) - 1.0, 1e-12);
  ASSERT_EQ(run({"witness", "-n", "2"}), kExitOk);
  EXPECT_EQ(result()["facets"].size(), 16u);
  ASSERT_EQ(run({"--seed", "5", "cloning"}), kExitOk);
  EXPECT_TRUE(result()["verified"].get<bool>());
  EXPECT_TRUE(result()["sample"]["agrees"].get<bool>());
  EXPECT_EQ(result()["scenario"]["prep_equivs"].size(), 3u);
}

TEST_F(Cli, TextFormatAndOutputFile) {
  ASSERT_EQ(run({"--format", "text", "--output", path("out.json"), "vertices", "--scenario", path("si.json")}), kExitOk);
  EXPECT_TRUE(out_.empty());
  EXPECT_NE(err_.find("36 vertices"), std::string::npos);
  std::ifstream in(path("out.json"));
  EXPECT_EQ(Json::parse(in)["count"], 36);
}

TEST_F(Cli, FailuresExitTwoWithoutOutput) {
  EXPECT_EQ(run({"check", "--scenario", path("si.json"), "--behavior", path("table.json"), "--bogus"}),
            kExitInvalidInput);
  EXPECT_TRUE(out_.empty());
  EXPECT_NE(err_.find("--behavior"), std::string::npos);
  EXPECT_EQ(run({"frobnicate"}), kExitInvalidInput);
  EXPECT_EQ(run({}), kExitInvalidInput);
  EXPECT_EQ(run({"check", "--scenario", path("missing.json"), "--behavior", path("table.json")}), kExitInvalidInput);
  EXPECT_NE(err_.find("missing.json"), std::string::npos);
  write("broken.json", "{\"kind\": ");
  EXPECT_EQ(run({"check", "--scenario", path("broken.json"), "--behavior", path("table.json")}), kExitInvalidInput);
  EXPECT_TRUE(out_.empty());
  EXPECT_EQ(run({"check", "--scenario", path("table.json"), "--behavior", path("table.json")}), kExitInvalidInput);
}

}  // namespace
}  // namespace ctx
