/*
 * Copyright (C) 2026 The iccsmell Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "iccsmell/cli.hpp"
#include "iccsmell/fixtures.hpp"
#include "iccsmell/report.hpp"

using namespace iccsmell;
using namespace iccsmell::testing;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

constexpr const char* kSm03Manifest =
    "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n"
    "<manifest xmlns:android=\"http://schemas.android.com/apk/res/android\"\n"
    "    package=\"cli.sm03\">\n"
    "  <permission android:name=\"cli.sm03.ACCESS\"/>\n"
    "  <application android:taskAffinity=\"\">\n"
    "    <activity android:name=\".Main\"/>\n"
    "  </application>\n"
    "</manifest>\n";

}  // namespace

TEST_CASE("analyze: benign project exits 0") {
  TempDir dir("cli-benign");
  write_file(dir.path() / "AndroidManifest.xml", kPlainManifest);
  write_file(dir.path() / "src/Main.java", "class Main {}\n");
  CliRun run = cli({"analyze", dir.path().string()});
  CHECK(run.code == 0);
  CHECK(run.out.find("no findings") != std::string::npos);
}

TEST_CASE("analyze: findings exit 1 and mention the smell") {
  TempDir dir("cli-sm03");
  write_file(dir.path() / "AndroidManifest.xml", kSm03Manifest);
  CliRun run = cli({"analyze", dir.path().string()});
  CHECK(run.code == 1);
  CHECK(run.out.find("SM03") != std::string::npos);
}

TEST_CASE("analyze: empty directory exits 2") {
  TempDir dir("cli-empty");
  CliRun run = cli({"analyze", dir.path().string()});
  CHECK(run.code == 2);
  CHECK(run.err.find("error") != std::string::npos);
}

TEST_CASE("analyze: json output to a file parses back") {
  TempDir dir("cli-json");
  write_file(dir.path() / "AndroidManifest.xml", kSm03Manifest);
  fs::path out_file = dir.path() / "report.json";
  CliRun run = cli({"analyze", dir.path().string(), "--format", "json", "--out",
                    out_file.string()});
  CHECK(run.code == 1);
  Report report = parse_report(read_file(out_file));
  CHECK(report.app_id == "cli.sm03");
  CHECK(report.per_smell_counts.at(Smell::SM03) == 1);
}

TEST_CASE("analyze: detector flags narrow the run") {
  TempDir dir("cli-flags");
  write_file(dir.path() / "AndroidManifest.xml", kSm03Manifest);
  CHECK(cli({"analyze", dir.path().string(), "--disable", "SM03"}).code == 0);
  CHECK(cli({"analyze", dir.path().string(), "--enable", "SM12"}).code == 0);
  CHECK(cli({"analyze", dir.path().string(), "--enable", "SM03"}).code == 1);
  CHECK(cli({"analyze", dir.path().string(), "--enable", "SM99"}).code == 2);
}

TEST_CASE("analyze: strict SM01 mode reports suppressed grants") {
  TempDir corpus("cli-strict");
  fixtures::materialize(corpus.path());
  fs::path project = corpus.path() / "sm01_grant_with_revoke";
  CHECK(cli({"analyze", project.string()}).code == 0);
  CliRun strict = cli({"analyze", project.string(), "--strict-sm01"});
  CHECK(strict.code == 1);
  CHECK(strict.out.find("SM01") != std::string::npos);
}

TEST_CASE("analyze: minimum confidence filters low findings") {
  TempDir corpus("cli-minconf");
  fixtures::materialize(corpus.path());
  fs::path project = corpus.path() / "sm04_unknown_intent";  // one low finding
  CHECK(cli({"analyze", project.string()}).code == 1);
  CHECK(cli({"analyze", project.string(), "--min-confidence", "medium"}).code ==
        0);
}

TEST_CASE("analyze: config file applies and CLI overrides it") {
  TempDir dir("cli-config");
  write_file(dir.path() / "AndroidManifest.xml", kSm03Manifest);
  write_file(dir.path() / "smell.conf", "enable=SM12\n");
  CHECK(cli({"analyze", dir.path().string(), "--config",
             (dir.path() / "smell.conf").string()})
            .code == 0);
  CHECK(cli({"analyze", dir.path().string(), "--config",
             (dir.path() / "smell.conf").string(), "--enable", "SM03"})
            .code == 1);
}

TEST_CASE("usage errors exit 2, help exits 0") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"analyze"}).code == 2);
  CHECK(cli({"batch"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("batch: per-project reports, index, isolation from broken projects") {
  TempDir corpus("cli-batch");
  fixtures::materialize(corpus.path());
  fs::create_directories(corpus.path() / "broken_project");  // no manifest

  std::vector<std::string> args{"batch"};
  std::vector<std::string> projects;
  for (const auto& entry : fs::directory_iterator(corpus.path())) {
    if (entry.is_directory()) projects.push_back(entry.path().string());
  }
  std::sort(projects.begin(), projects.end());
  for (const std::string& p : projects) args.push_back(p);
  TempDir out_dir("cli-batch-out");
  args.insert(args.end(), {"--out", out_dir.path().string(), "--jobs", "4"});

  CliRun run = cli(args);
  CHECK(run.code == 0);  // broken project does not abort the batch
  CHECK(run.err.find("broken_project") != std::string::npos);

  size_t report_count = 0;
  for (const auto& entry : fs::directory_iterator(out_dir.path())) {
    if (entry.path().filename() != "index.json") ++report_count;
  }
  CHECK(report_count == fixtures::corpus().size());

  std::string index = read_file(out_dir.path() / "index.json");
  CHECK(index.find("\"status\": \"error\"") != std::string::npos);
  CHECK(index.find("fix.sm03.nolevel") != std::string::npos);

  // Batch isolation: a batch report byte-equals the single-project report.
  fs::path one = out_dir.path() / "fix.sm01.grant.json";
  REQUIRE(fs::exists(one));
  fs::path single_out = out_dir.path() / "single.json";
  CHECK(cli({"analyze", (corpus.path() / "sm01_grant_no_revoke").string(),
             "--format", "json", "--out", single_out.string()})
            .code == 1);
  CHECK(read_file(one) == read_file(single_out));
}

TEST_CASE("batch: every project failing exits 2") {
  TempDir broken("cli-batch-broken");
  fs::create_directories(broken.path() / "a");
  fs::create_directories(broken.path() / "b");
  TempDir out_dir("cli-batch-broken-out");
  CliRun run = cli({"batch", (broken.path() / "a").string(),
                    (broken.path() / "b").string(), "--out",
                    out_dir.path().string()});
  CHECK(run.code == 2);
}

TEST_CASE("stats: csv outputs from batch reports, external counts included") {
  TempDir corpus("cli-stats");
  fixtures::materialize(corpus.path());
  std::vector<std::string> args{"batch"};
  for (const auto& entry : fs::directory_iterator(corpus.path())) {
    if (entry.is_directory()) args.push_back(entry.path().string());
  }
  std::sort(args.begin() + 1, args.end());
  TempDir reports("cli-stats-reports");
  args.insert(args.end(), {"--out", reports.path().string()});
  REQUIRE(cli(args).code == 0);

  TempDir stats_out("cli-stats-out");
  write_file(stats_out.path() / "external.csv",
             "app_id,category,count\nfix.sm01.grant,Lint:Security,3\n");
  CliRun run =
      cli({"stats", reports.path().string(), "--external-counts",
           (stats_out.path() / "external.csv").string(), "--out",
           stats_out.path().string()});
  CHECK(run.code == 0);

  std::string prevalence = read_file(stats_out.path() / "prevalence.csv");
  CHECK(prevalence.rfind("category,prevalence\n", 0) == 0);
  CHECK(prevalence.find("SM01,") != std::string::npos);

  std::string distribution = read_file(stats_out.path() / "distribution.csv");
  CHECK(distribution.rfind("distinct_categories,app_count\n", 0) == 0);

  std::string correlation = read_file(stats_out.path() / "correlation.csv");
  CHECK(correlation.find("Lint:Security") != std::string::npos);

  // Determinism: a second run produces identical bytes.
  TempDir stats_out2("cli-stats-out2");
  REQUIRE(cli({"stats", reports.path().string(), "--external-counts",
               (stats_out.path() / "external.csv").string(), "--out",
               stats_out2.path().string()})
              .code == 0);
  CHECK(read_file(stats_out2.path() / "prevalence.csv") == prevalence);
  CHECK(read_file(stats_out2.path() / "distribution.csv") == distribution);
}

TEST_CASE("golden report renderings for the SM03 fixture") {
  TempDir corpus("cli-golden");
  fixtures::materialize(corpus.path());
  fs::path project = corpus.path() / "sm03_missing_level";

  std::ostringstream out, err;
  int code = run_cli({"analyze", project.string()}, out, err);
  CHECK(code == 1);
  CHECK(out.str() ==
        "Report for fix.sm03.nolevel\n"
        "  1 finding(s) in 1 smell category\n"
        "\n"
        "AndroidManifest.xml:4:3 [SM03/high] Incorrect Protection Level — "
        "custom permission \"fix.sm03.nolevel.ACCESS\" declares no "
        "protectionLevel\n"
        "  mitigation: Declare an explicit protection level; guard sensitive "
        "features with \"dangerous\" or \"signature\".\n"
        "  threats: denial_of_service, intent_spoofing, intent_hijacking\n");

  std::ostringstream json_out, json_err;
  code = run_cli({"analyze", project.string(), "--format", "json"}, json_out,
                 json_err);
  CHECK(code == 1);
  CHECK(json_out.str() ==
        "{\n"
        "  \"schema\": 1,\n"
        "  \"app_id\": \"fix.sm03.nolevel\",\n"
        "  \"findings\": [\n"
        "    {\n"
        "      \"smell\": \"SM03\",\n"
        "      \"title\": \"Incorrect Protection Level\",\n"
        "      \"file\": \"AndroidManifest.xml\",\n"
        "      \"line\": 4,\n"
        "      \"column\": 3,\n"
        "      \"confidence\": \"high\",\n"
        "      \"message\": \"custom permission \\\"fix.sm03.nolevel.ACCESS\\\" "
        "declares no protectionLevel\",\n"
        "      \"threats\": [\n"
        "        \"denial_of_service\",\n"
        "        \"intent_spoofing\",\n"
        "        \"intent_hijacking\"\n"
        "      ],\n"
        "      \"mitigation\": \"Declare an explicit protection level; guard "
        "sensitive features with \\\"dangerous\\\" or \\\"signature\\\".\"\n"
        "    }\n"
        "  ],\n"
        "  \"diagnostics\": [],\n"
        "  \"counts\": {\n"
        "    \"SM01\": 0,\n"
        "    \"SM02\": 0,\n"
        "    \"SM03\": 1,\n"
        "    \"SM04\": 0,\n"
        "    \"SM05\": 0,\n"
        "    \"SM06\": 0,\n"
        "    \"SM07\": 0,\n"
        "    \"SM08\": 0,\n"
        "    \"SM09\": 0,\n"
        "    \"SM10\": 0,\n"
        "    \"SM11\": 0,\n"
        "    \"SM12\": 0\n"
        "  },\n"
        "  \"distinct_smell_categories\": 1\n"
        "}\n");
}

TEST_CASE("corpus statistics match the hand-counted fixture ground truth") {
  // Apps with at least one finding of each smell, counted by hand from the
  // expected.json manifests (35 fixtures total):
  //   SM01 1, SM02 3, SM03 1, SM04 2, SM05 2, SM06 3,
  //   SM07 2, SM08 1, SM09 3, SM10 2, SM11 1, SM12 3
  // Distinct-category distribution: 12 apps clean, 22 with one smell,
  // 1 (sm08_urimatcher) with two.
  TempDir corpus("cli-golden-stats");
  fixtures::materialize(corpus.path());
  std::vector<std::string> args{"batch"};
  for (const auto& entry : fs::directory_iterator(corpus.path())) {
    if (entry.is_directory()) args.push_back(entry.path().string());
  }
  std::sort(args.begin() + 1, args.end());
  TempDir reports("cli-golden-reports");
  args.insert(args.end(), {"--out", reports.path().string()});
  REQUIRE(cli(args).code == 0);

  TempDir stats_out("cli-golden-stats-out");
  REQUIRE(cli({"stats", reports.path().string(), "--out",
               stats_out.path().string()})
              .code == 0);

  CHECK(read_file(stats_out.path() / "prevalence.csv") ==
        "category,prevalence\n"
        "SM01,0.028571\n"
        "SM02,0.085714\n"
        "SM03,0.028571\n"
        "SM04,0.057143\n"
        "SM05,0.057143\n"
        "SM06,0.085714\n"
        "SM07,0.057143\n"
        "SM08,0.028571\n"
        "SM09,0.085714\n"
        "SM10,0.057143\n"
        "SM11,0.028571\n"
        "SM12,0.085714\n");

  CHECK(read_file(stats_out.path() / "distribution.csv") ==
        "distinct_categories,app_count\n"
        "0,12\n"
        "1,22\n"
        "2,1\n"
        "3,0\n"
        "4,0\n"
        "5,0\n"
        "6,0\n"
        "7,0\n"
        "8,0\n"
        "9,0\n"
        "10,0\n"
        "11,0\n"
        "12,0\n");
}

TEST_CASE("stats: no reports found exits 2") {
  TempDir empty("cli-stats-empty");
  CliRun run = cli({"stats", empty.path().string()});
  CHECK(run.code == 2);
}

TEST_CASE("stats: explicit report files are accepted") {
  TempDir corpus("cli-stats-file");
  fixtures::materialize(corpus.path());
  TempDir reports("cli-stats-file-reports");
  fs::path report = reports.path() / "one.json";
  REQUIRE(cli({"analyze", (corpus.path() / "sm03_missing_level").string(),
               "--format", "json", "--out", report.string()})
              .code == 1);
  TempDir out("cli-stats-file-out");
  CHECK(cli({"stats", report.string(), "--out", out.path().string()}).code == 0);
  std::string prevalence = read_file(out.path() / "prevalence.csv");
  CHECK(prevalence.find("SM03,1.000000") != std::string::npos);
}

TEST_CASE("fixtures: self-check passes, materialize writes the corpus") {
  CliRun check = cli({"fixtures", "--self-check"});
  CHECK(check.code == 0);
  CHECK(check.out.find("self-check passed") != std::string::npos);

  TempDir dir("cli-fixtures");
  CliRun mat = cli({"fixtures", "--materialize", dir.path().string()});
  CHECK(mat.code == 0);
  size_t dirs = 0;
  for (const auto& entry : fs::directory_iterator(dir.path())) {
    if (entry.is_directory()) ++dirs;
  }
  CHECK(dirs >= 24);
  CHECK(dirs == fixtures::corpus().size());

  // A tampered expected file must fail the directory self-check.
  CHECK(cli({"fixtures", "--check-dir", dir.path().string()}).code == 0);
  fs::path victim = dir.path() / "sm03_missing_level" / "expected.json";
  std::string expected = read_file(victim);
  write_file(victim, "{\n  \"findings\": []\n}\n");
  CliRun tampered = cli({"fixtures", "--check-dir", dir.path().string()});
  CHECK(tampered.code == 1);
  CHECK(tampered.out.find("FAIL sm03_missing_level") != std::string::npos);
}
