// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// Runs the built command-line tool and checks exit codes and outputs.

#include <gtest/gtest.h>

#include <cstdio>
#include <sys/wait.h>

#include "mtjbist/csv.hpp"
#include "test_util.hpp"

namespace mtjbist {
namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string &args) {
  const std::string cmd = std::string(MTJBIST_CLI_PATH) + " " + args + " 2>&1";
  RunResult r;
  FILE *p = ::popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, p)) r.out += buf;
  const int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run("--help").code, 0); }

TEST(Cli, UnknownSubcommandIsUsageError) { EXPECT_EQ(run("frobnicate").code, 1); }

TEST(Cli, MissingConfigIsUsageError) {
  const auto r = run("--config /nonexistent/x.conf bist run");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("cannot open"), std::string::npos);
}

TEST(Cli, HealthyArrayBistExitsZero) {
  testing::TempDir dir("cli");
  EXPECT_EQ(run("--out " + dir.path().string() + " bist run").code, 0);
  const CsvTable t = read_csv(dir.path() / "bist_results.csv");
  EXPECT_EQ(t.header, (std::vector<std::string>{"half_period_ns", "pattern_hex", "error_flag", "faulted_indices"}));
  EXPECT_EQ(t.rows.size(), 256u);
}

TEST(Cli, AttackAtHighFrequencyExitsTwo) {
  testing::TempDir dir("cli");
  testing::spit(dir.path() / "a.conf", "attack.targets=0\nattack.multipliers=1.3\nhalf_period_ns=1.0\n");
  const auto r = run("--config " + (dir.path() / "a.conf").string() + " --out " + dir.path().string() +
                     " bist run --pattern 80");
  EXPECT_EQ(r.code, 2) << r.out;
  const CsvTable t = read_csv(dir.path() / "bist_results.csv");
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0][2], "1");
  EXPECT_EQ(t.rows[0][3], "0");
}

TEST(Cli, SweepWritesSummary) {
  testing::TempDir dir("cli");
  testing::spit(dir.path() / "a.conf", "attack.targets=0\nattack.multipliers=1.3\n");
  const auto r = run("--config " + (dir.path() / "a.conf").string() + " --out " + dir.path().string() +
                     " bist sweep --pattern 80 --half-periods 3,2,1.5,1");
  EXPECT_EQ(r.code, 2);
  const CsvTable s = read_csv(dir.path() / "sweep_summary.csv");
  ASSERT_EQ(s.rows.size(), 1u);
  EXPECT_EQ(s.rows[0][1], "1.5");
}

TEST(Cli, AttackInjectWritesArray) {
  testing::TempDir dir("cli");
  const auto r = run("--out " + dir.path().string() + " attack inject --targets 2,5 --multipliers 1.3");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("malicious: 2 5"), std::string::npos) << r.out;
  EXPECT_EQ(read_csv(dir.path() / "array.csv").rows.size(), 16u);
}

TEST(Cli, KatanVectorsAndRoundTrip) {
  EXPECT_EQ(run("katan enc --key ffffffffffffffffffff --pt 00000000").out, "7e1ff945\n");
  EXPECT_EQ(run("katan dec --key 00000000000000000000 --ct 432e61da").out, "ffffffff\n");
  EXPECT_EQ(run("katan enc --key 0 --pt zz").code, 1);
}

TEST(Cli, TraceDetectPipeline) {
  testing::TempDir dir("cli");
  const std::string base = "--seed 4 --out ";
  const auto d = dir.path();
  ASSERT_EQ(run(base + (d / "ref").string() + " trace gen --circuit crc --reference").code, 0);
  ASSERT_EQ(run(base + (d / "hold").string() + " trace gen --circuit crc --holdout").code, 0);
  ASSERT_EQ(run(base + (d / "troj").string() + " trace gen --circuit crc --condition trojan --n 5").code, 0);
  const auto e = run(base + (d / "eval").string() + " detect eval --dataset " + (d / "troj").string() +
                     " --reference " + (d / "ref" / "reference.csv").string() + " --holdout " +
                     (d / "hold").string());
  ASSERT_EQ(e.code, 0) << e.out;
  const CsvTable ev = read_csv(d / "eval" / "evaluation.csv");
  EXPECT_EQ(ev.header, (std::vector<std::string>{"index", "value", "decision"}));
  EXPECT_EQ(ev.rows.size(), 5u);
  const auto s = run("--out " + (d / "score").string() + " detect score --evaluation " +
                     (d / "eval" / "evaluation.csv").string() + " --threshold-file " +
                     (d / "eval" / "threshold.csv").string());
  ASSERT_EQ(s.code, 0) << s.out;
  const CsvTable conf = read_csv(d / "score" / "confusion.csv");
  EXPECT_EQ(conf.header, (std::vector<std::string>{"sensitivity", "tp", "fp", "tn", "fn"}));
  ASSERT_EQ(conf.rows.size(), 3u);
  EXPECT_EQ(conf.rows[1][1], "5");  // every Trojan trace rejected at 0.10
  EXPECT_EQ(run("detect eval --dataset " + (d / "troj").string() + " --reference " +
                (d / "ref" / "reference.csv").string())
                .code,
            1);
}

TEST(Cli, ExperimentAndReport) {
  testing::TempDir dir("cli");
  testing::spit(dir.path() / "c.conf", "trace.n_patterns=4\n");
  const auto r = run("--config " + (dir.path() / "c.conf").string() + " --out " + (dir.path() / "e").string() + " exp2");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto rep = run("report " + (dir.path() / "e").string());
  EXPECT_EQ(rep.code, 0);
  EXPECT_NE(rep.out.find("confusion"), std::string::npos) << rep.out;
}

}  // namespace
}  // namespace mtjbist
