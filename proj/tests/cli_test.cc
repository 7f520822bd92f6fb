// Copyright 2026 The DLM Authors
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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>

#include "dlm/logistic.h"
#include "support/fixtures.h"

namespace dlm {
namespace {

using testing::data_path;
using testing::read_file;
using testing::TempDir;

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  std::string cmd = std::string(DLM_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {};
  Outcome o;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) o.out.append(buf, n);
  int status = ::pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

TEST(Cli, GenerateSucceeds) {
  TempDir dir("cli_gen");
  Outcome o = run("generate --ontology " + q(data_path("birdman.nt")) + " --patterns P5 --out " + q(dir.path()));
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("P5: 1 questions"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(dir / "questions.tsv"));
}

TEST(Cli, HelpAndVersionExitZero) {
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("--version").code, 0);
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("generate").code, 1);
  EXPECT_EQ(run("generate --ontology x.ttl --seed notanumber").code, 1);
}

TEST(Cli, InputErrorsExitOne) {
  TempDir dir("cli_input");
  const std::string out = " --out " + q(dir.path());
  EXPECT_EQ(run("generate --ontology " + q(dir / "missing.ttl") + out).code, 1);
  testing::write_file(dir / "broken.ttl", "@prefix : <http://x#> .\n:a :b ( :c ) .\n");
  EXPECT_EQ(run("generate --ontology " + q(dir / "broken.ttl") + out).code, 1);
  EXPECT_EQ(run("generate --ontology " + q(data_path("birdman.nt")) + " --thetas expert=9" + out).code, 1);
  EXPECT_EQ(run("generate --ontology " + q(data_path("birdman.nt")) + " --limit 0" + out).code, 1);
  EXPECT_EQ(run("generate --ontology " + q(data_path("birdman.nt")) + " --format rdfxml" + out).code, 1);
  EXPECT_EQ(run("generate --ontology " + q(data_path("birdman.nt")) + " --patterns P7" + out).code, 1);
  EXPECT_EQ(run("report --predictions " + q(data_path("dsa_gold.csv")) + " --gold " + q(data_path("birdman.nt")) + out).code, 1);
}

TEST(Cli, ReportPrintsMatchRate) {
  TempDir dir("cli_report");
  Outcome o = run("report --predictions " + q(data_path("dsa_predictions.csv")) + " --gold " +
                  q(data_path("dsa_gold.csv")) + " --out " + q(dir.path()));
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("87.5%"), std::string::npos);
  EXPECT_NE(o.out.find("non-classifiable: 1"), std::string::npos);
}

TEST(Cli, EndToEndOnMovieFixture) {
  TempDir dir("cli_e2e");
  const std::string out = " --out " + q(dir.path());
  const std::string onto = " --ontology " + q(data_path("movie.ttl"));
  ASSERT_EQ(run("generate" + onto + out).code, 0);
  ASSERT_EQ(run("featurize" + onto + " --questions " + q(dir / "questions.tsv") + out).code, 0);
  std::string labeled;
  for (LearnerCategory c : kAllCategories) {
    std::string name(category_name(c));
    testing::write_records_file(dir / (name + ".txt"), testing::synthetic_records(c, 200, 3));
    labeled += " --" + name + " " + q(dir / (name + ".txt"));
  }
  ASSERT_EQ(run("rank-features" + labeled + out).code, 0);
  ASSERT_EQ(run("train" + labeled + " --masks " + q(dir / "masks.txt") + " --epochs 300" + out).code, 0);
  Outcome p = run("predict --models " + q(dir.path()) + " --features " + q(dir / "features.txt") + out);
  ASSERT_EQ(p.code, 0);
  EXPECT_NE(p.out.find("classifiable"), std::string::npos);
  Outcome again = run("predict --models " + q(dir.path()) + onto + " --questions " + q(dir / "questions.tsv") +
                      " --out " + q(dir / "second"));
  ASSERT_EQ(again.code, 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "second" / "predictions.csv"));
  for (const char* f : {"generate", "featurize", "rank-features", "train", "predict"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / (std::string(f) + ".config.json"))) << f;
  }
}

TEST(Cli, CalibrateAcceptsThetas) {
  TempDir dir("cli_cal");
  testing::write_file(dir / "r.csv",
                      "item,learner,category,correct\n"
                      "q,a,expert,1\nq,b,intermediate,0\nq,c,beginner,0\n");
  Outcome o = run("calibrate --responses " + q(dir / "r.csv") +
                  " --thetas expert=1.25,intermediate=0,beginner=-1.25 --seed 3 --out " + q(dir.path()));
  EXPECT_EQ(o.code, 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "calibration.csv"));
  EXPECT_NE(read_file(dir / "calibrate.config.json").find("\"seed\": 3"), std::string::npos);
}

}  // namespace
}  // namespace dlm
