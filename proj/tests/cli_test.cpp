// Copyright 2026 The scfv Authors
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

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "scfv/io.hpp"

namespace scfv {
namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run scfcheck(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string(SCFCHECK_PATH) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (const std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(SCFV_DATA_DIR) + "/" + name; }

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

TEST(CliOrdersTest, Counts) {
  const auto weak = scfcheck("orders --k 3 --kind weak");
  EXPECT_EQ(weak.status, 0);
  EXPECT_EQ(count_lines(weak.out), 13u + 1);
  EXPECT_NE(weak.out.find("total: 13"), std::string::npos);
  EXPECT_EQ(count_lines(scfcheck("orders --k 3 --kind strict").out), 6u + 1);
  EXPECT_EQ(count_lines(scfcheck("orders --k 5 --kind single-peaked --strict").out), 16u + 1);
  const auto j = parse_json(scfcheck("orders --k 4 --kind weak --format json").out);
  EXPECT_EQ(j["count"], 75);
  EXPECT_EQ(j["orders"].size(), 75u);
  EXPECT_EQ(j["seed"], 1);
}

TEST(CliOrdersTest, BadArguments) {
  EXPECT_EQ(scfcheck("orders --k 9 --kind weak").status, 1);
  EXPECT_EQ(scfcheck("orders --kind weak").status, 1);
  EXPECT_EQ(scfcheck("frobnicate").status, 1);
  EXPECT_EQ(scfcheck("--help").status, 0);
}

TEST(CliDomainTest, CompleteIncompleteMalformed) {
  EXPECT_EQ(scfcheck("domain complete " + data("weak3.domain")).status, 0);
  EXPECT_EQ(scfcheck("domain complete " + data("sp5.domain")).status, 0);
  const auto gap = scfcheck("domain complete " + data("gap.orders") + " --format json");
  EXPECT_EQ(gap.status, 2);
  const auto j = parse_json(gap.out);
  EXPECT_FALSE(j["complete"].get<bool>());
  EXPECT_EQ(j["voters"][0]["gap"]["P"], "a~b>c");
  EXPECT_EQ(j["voters"][0]["gap"]["Q"], "a~b>c");
  EXPECT_EQ(j["voters"][0]["gap"]["a"], "a");
  EXPECT_EQ(j["voters"][0]["gap"]["b"], "c");
  const auto bad = scfcheck("domain complete " + data("malformed.domain"), true);
  EXPECT_EQ(bad.status, 1);
  EXPECT_NE(bad.out.find("line 4"), std::string::npos);
  EXPECT_EQ(scfcheck("domain complete /nonexistent/file").status, 1);
}

TEST(CliCheckTest, InverseTiebreakRule) {
  const auto r = scfcheck("check " + data("inverse-tiebreak.json") +
                          " --properties isp,pr,dictator --format json --no-timing");
  EXPECT_EQ(r.status, 2);
  const auto j = parse_json(r.out);
  ASSERT_EQ(j["reports"].size(), 3u);
  EXPECT_FALSE(j["reports"][0]["holds"].get<bool>());
  EXPECT_FALSE(j["reports"][1]["holds"].get<bool>());
  EXPECT_TRUE(j["reports"][2]["holds"].get<bool>());
  EXPECT_EQ(j["reports"][2]["witness"]["voter"], 1);
}

TEST(CliCheckTest, PinnedIspWitnessAndRecheck) {
  const auto dir = std::filesystem::temp_directory_path() / "scfv_cli_test";
  std::filesystem::create_directories(dir);
  const auto report = (dir / "isp.json").string();
  const auto r = scfcheck("check " + data("inverse-tiebreak.json") +
                          " --properties isp --isp-deviation inverse --isp-fix '1=a~b>c' --isp-fix '2=b>a>c'"
                          " --format json --no-timing > " + report);
  EXPECT_EQ(r.status, 2);
  const auto j = parse_json(read_file(report));
  const auto& w = j["reports"][0]["witness"];
  EXPECT_EQ(w["truthful"][0], "a~b>c");
  EXPECT_EQ(w["truthful"][1], "b>a>c");
  EXPECT_EQ(w["deviation"][0], "c>a>b");
  EXPECT_EQ(w["outcome_true"], "a");
  EXPECT_EQ(w["outcome_dev"], "b");
  EXPECT_EQ(scfcheck("check " + data("inverse-tiebreak.json") + " --recheck-witness " + report).status, 0);

  // A tampered witness is rejected.
  Json forged = j;
  forged["reports"][0]["witness"]["outcome_dev"] = "c";
  write_file(dir / "forged.json", forged.dump());
  EXPECT_EQ(scfcheck("check " + data("inverse-tiebreak.json") + " --recheck-witness " +
                     (dir / "forged.json").string()).status, 1);
  std::filesystem::remove_all(dir);
}

TEST(CliCheckTest, HoldingRules) {
  EXPECT_EQ(scfcheck("check " + data("constant.json") + " --properties isp,gsp,pr,apr").status, 0);
  const auto m = scfcheck("check " + data("median5.json") + " --properties isp,gsp,pr,apr --no-timing");
  EXPECT_EQ(m.status, 0);
  EXPECT_EQ(m.out.find("FAILS"), std::string::npos);
  EXPECT_EQ(scfcheck("check " + data("plurality3.json") + " --properties isp").status, 2);
}

TEST(CliVerifyTest, TheoremSuites) {
  const auto apr = scfcheck("verify prop-apr-gsp --voters 2 --orders-per-voter 3 --k 3 --format json --no-timing");
  EXPECT_EQ(apr.status, 0);
  const auto j = parse_json(apr.out);
  EXPECT_EQ(j["status"], "holds");
  EXPECT_EQ(j["checked"], 19683);
  const auto r3 = scfcheck("verify thm-range3 --voters 2 --orders-per-voter 3 --k 3 --no-timing");
  EXPECT_EQ(r3.status, 0);
  EXPECT_NE(r3.out.find("(equal)"), std::string::npos);
  EXPECT_EQ(scfcheck("verify thm-range3 --domain " + data("weak-pair.domain")).status, 0);
  EXPECT_EQ(scfcheck("verify thm-complete --rule median-peaks --k 5 --voters 2").status, 0);
  EXPECT_EQ(scfcheck("verify summary-equivalence --orders-per-voter 2 --k 3").status, 0);
  const auto futile = parse_json(scfcheck("verify search-isp-not-pr --k 3 --format json").out);
  EXPECT_EQ(futile["status"], "provably-futile");
}

TEST(CliVerifyTest, JsonIsDeterministicAcrossParallelism) {
  const std::string args = "verify prop-apr-gsp --orders-per-voter 3 --format json --no-timing";
  const auto a = scfcheck("--parallelism 1 " + args);
  const auto b = scfcheck("--parallelism 4 " + args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());
  const auto seeded = parse_json(scfcheck("--seed 99 " + args).out);
  EXPECT_EQ(seeded["seed"], 99);
}

TEST(CliVerifyTest, Errors) {
  EXPECT_EQ(scfcheck("verify no-such-theorem").status, 1);
  EXPECT_EQ(scfcheck("verify thm-complete").status, 1);
  EXPECT_EQ(scfcheck("verify thm-range3 --kind weak").status, 1);
  EXPECT_EQ(scfcheck("verify prop-apr-gsp --orders-per-voter 7").status, 1);
}

TEST(CliQuotientTest, ReplicatedSociety) {
  const auto r = scfcheck("quotient --rule median-peaks --p " + data("society_p.txt") + " --q " +
                          data("society_q.txt") + " --format json");
  EXPECT_EQ(r.status, 0);
  const auto j = parse_json(r.out);
  EXPECT_EQ(j["alpha"], 3);
  EXPECT_EQ(j["voters"], 100);
  EXPECT_TRUE(j["samples_agree"].get<bool>());
  EXPECT_TRUE(j["lift_validated"].get<bool>());
  EXPECT_EQ(j["witness_lift"]["voter"], 31);

  const auto same = scfcheck("quotient --rule median-peaks --p " + data("society_p.txt") + " --q " +
                             data("society_p.txt"));
  EXPECT_EQ(same.status, 0);
  EXPECT_NE(same.out.find("no witness needed"), std::string::npos);
}

TEST(CliQuotientTest, MixedDomainsAreRejected) {
  const auto dir = std::filesystem::temp_directory_path() / "scfv_cli_quotient";
  std::filesystem::create_directories(dir);
  write_file(dir / "d.txt",
             "alternatives: a,b,c,d\nvoter 1: @universal-strict\nvoter 2: @universal-weak\n"
             "voter 3: @universal-strict\nvoter 4: @universal-strict\n");
  write_file(dir / "p.txt", "alternatives: a,b,c,d\na>b>c>d\nb>a>c>d\nc>a>b>d\nd>a>b>c\n");
  write_file(dir / "q.txt", "alternatives: a,b,c,d\nb>a>c>d\nc>a>b>d\nd>a>b>c\na>b>c>d\n");
  const auto r = scfcheck("quotient --rule plurality-tiebreak --domain " + (dir / "d.txt").string() + " --p " +
                              (dir / "p.txt").string() + " --q " + (dir / "q.txt").string(),
                          true);
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("neither case"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(CliNewScfTest, WritesLoadableFile) {
  const auto r = scfcheck("new-scf --rule dictator-tiebreak --rule-voter 2 --k 3 --voters 2 --kind strict --tabulate");
  EXPECT_EQ(r.status, 0);
  const auto doc = load_scf(r.out);
  EXPECT_TRUE(doc.scf.is_table());
  EXPECT_EQ(doc.scf.table().size(), 36u);
}

}  // namespace
}  // namespace scfv
