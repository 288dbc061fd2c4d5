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

#include "iccsmell/cli.hpp"

#include <atomic>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "iccsmell/detectors.hpp"
#include "iccsmell/fixtures.hpp"
#include "iccsmell/report.hpp"
#include "iccsmell/stats.hpp"

namespace iccsmell {

namespace fs = std::filesystem;

namespace {

struct DetectorFlags {
  std::string config_path;
  std::string min_confidence;
  std::vector<std::string> enable;
  std::vector<std::string> disable;
  bool strict_sm01 = false;
};

void add_detector_flags(CLI::App* cmd, DetectorFlags& flags) {
  cmd->add_option("--config", flags.config_path,
                  "Detector configuration file (key=value)");
  cmd->add_option("--min-confidence", flags.min_confidence,
                  "Minimum reported confidence: low|medium|high")
      ->check(CLI::IsMember({"low", "medium", "high"}));
  cmd->add_option("--enable", flags.enable,
                  "Restrict analysis to these smells (repeatable, SMxx)");
  cmd->add_option("--disable", flags.disable,
                  "Exclude these smells (repeatable, SMxx)");
  cmd->add_flag("--strict-sm01", flags.strict_sm01,
                "Report SM01 grants even when a revocation exists");
}

DetectorConfig resolve_config(const DetectorFlags& flags, std::ostream& err) {
  DetectorConfig config;
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) throw std::runtime_error("cannot read config " + flags.config_path);
    std::vector<Diagnostic> diags;
    config = DetectorConfig::parse(in, &diags);
    for (const Diagnostic& d : diags) {
      err << flags.config_path << ":" << d.location.line << ": " << d.message
          << "\n";
    }
  }
  if (!flags.min_confidence.empty()) {
    config.min_confidence = *confidence_from_id(flags.min_confidence);
  }
  auto to_smells = [](const std::vector<std::string>& ids) {
    std::set<Smell> smells;
    for (const std::string& id : ids) {
      auto smell = smell_from_id(id);
      if (!smell) throw std::runtime_error("unknown smell id \"" + id + "\"");
      smells.insert(*smell);
    }
    return smells;
  };
  if (!flags.enable.empty()) config.enabled = to_smells(flags.enable);
  for (Smell s : to_smells(flags.disable)) config.enabled.erase(s);
  if (flags.strict_sm01) config.sm01_strict = true;
  return config;
}

std::string render(const Report& report, const std::string& format) {
  if (format == "json") return render_json(report);
  if (format == "xml") return render_xml(report);
  return render_text(report);
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << bytes;
}

std::string sanitize_filename(const std::string& name) {
  std::string out;
  for (char c : name) {
    bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '.' ||
              c == '_' || c == '-';
    out.push_back(ok ? c : '_');
  }
  return out.empty() ? "app" : out;
}

Report analyze_project(const fs::path& project, const DetectorConfig& config) {
  AppModel app = build_app_model(project);
  std::vector<Diagnostic> detector_diags;
  std::vector<Finding> findings = run_all(app, config, &detector_diags);
  return build_report(app, std::move(findings), std::move(detector_diags));
}

int cmd_analyze(const std::string& project, const std::string& format,
                const std::string& out_path, const DetectorConfig& config,
                std::ostream& out, std::ostream& err) {
  Report report;
  try {
    report = analyze_project(project, config);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  std::string rendered = render(report, format);
  if (out_path.empty()) {
    out << rendered;
  } else {
    write_file(out_path, rendered);
  }
  return report.findings.empty() ? 0 : 1;
}

struct BatchEntry {
  std::string project;
  bool ok = false;
  Report report;
  std::string error;
};

int cmd_batch(const std::vector<std::string>& projects,
              const std::string& format, const std::string& out_dir, int jobs,
              const DetectorConfig& config, std::ostream& err) {
  fs::create_directories(out_dir);

  std::vector<BatchEntry> entries(projects.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= projects.size()) return;
      entries[i].project = projects[i];
      try {
        entries[i].report = analyze_project(projects[i], config);
        entries[i].ok = true;
      } catch (const std::exception& e) {
        entries[i].error = e.what();
      }
    }
  };
  size_t thread_count =
      std::min<size_t>(std::max(jobs, 1), std::max<size_t>(projects.size(), 1));
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (size_t i = 0; i < thread_count; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::string ext = format == "json" ? ".json" : (format == "xml" ? ".xml" : ".txt");
  std::set<std::string> used_names;
  std::vector<std::pair<const BatchEntry*, std::string>> written;
  for (const BatchEntry& entry : entries) {
    if (!entry.ok) {
      err << entry.project << ": " << entry.error << "\n";
      written.emplace_back(&entry, "");
      continue;
    }
    std::string base = sanitize_filename(entry.report.app_id);
    std::string name = base + ext;
    for (int suffix = 2; used_names.count(name); ++suffix) {
      name = base + "-" + std::to_string(suffix) + ext;
    }
    used_names.insert(name);
    write_file(fs::path(out_dir) / name, render(entry.report, format));
    written.emplace_back(&entry, name);
  }

  std::sort(written.begin(), written.end(), [](const auto& a, const auto& b) {
    int rank_a = a.first->ok ? 0 : 1;
    int rank_b = b.first->ok ? 0 : 1;
    const std::string& ida = a.first->ok ? a.first->report.app_id : a.first->project;
    const std::string& idb = b.first->ok ? b.first->report.app_id : b.first->project;
    return std::tie(rank_a, ida, a.first->project) <
           std::tie(rank_b, idb, b.first->project);
  });

  nlohmann::ordered_json index;
  index["schema"] = 1;
  index["apps"] = nlohmann::ordered_json::array();
  for (const auto& [entry, name] : written) {
    nlohmann::ordered_json j;
    if (entry->ok) {
      j["app_id"] = entry->report.app_id;
      j["project"] = entry->project;
      j["report"] = name;
      j["findings"] = entry->report.findings.size();
      j["status"] = "ok";
    } else {
      j["project"] = entry->project;
      j["status"] = "error";
      j["error"] = entry->error;
    }
    index["apps"].push_back(std::move(j));
  }
  write_file(fs::path(out_dir) / "index.json", index.dump(2) + "\n");

  bool all_failed = !entries.empty() &&
                    std::all_of(entries.begin(), entries.end(),
                                [](const BatchEntry& e) { return !e.ok; });
  return all_failed ? 2 : 0;
}

int cmd_stats(const std::vector<std::string>& inputs,
              const std::string& external_counts, const std::string& out_dir,
              std::ostream& err) {
  std::vector<std::string> report_files;
  for (const std::string& input : inputs) {
    if (fs::is_directory(input)) {
      for (const auto& entry : fs::directory_iterator(input)) {
        if (!entry.is_regular_file()) continue;
        std::string name = entry.path().filename().string();
        if (name == "index.json") continue;
        if (entry.path().extension() == ".json")
          report_files.push_back(entry.path().string());
      }
    } else if (fs::is_regular_file(input)) {
      report_files.push_back(input);
    } else {
      err << "error: no such file or directory: " << input << "\n";
      return 2;
    }
  }
  std::sort(report_files.begin(), report_files.end());
  if (report_files.empty()) {
    err << "error: no report files found\n";
    return 2;
  }

  std::vector<Report> reports;
  for (const std::string& file : report_files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      err << "error: cannot read " << file << "\n";
      return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      reports.push_back(parse_report(buf.str()));
    } catch (const MalformedReport& e) {
      err << "error: " << file << ": " << e.what() << "\n";
      return 2;
    }
  }

  std::vector<AppStatsVector> vectors = stats_vectors(reports);
  std::vector<std::string> categories;
  for (Smell s : kAllSmells) categories.emplace_back(smell_id(s));
  if (!external_counts.empty()) {
    std::ifstream in(external_counts, std::ios::binary);
    if (!in) {
      err << "error: cannot read " << external_counts << "\n";
      return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      for (std::string& cat : merge_external_counts(vectors, buf.str())) {
        categories.push_back(std::move(cat));
      }
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
  }

  fs::create_directories(out_dir);
  CorpusSummary summary = aggregate(reports);
  CorrelationMatrix matrix = correlate_categories(vectors, categories);
  write_file(fs::path(out_dir) / "prevalence.csv", prevalence_csv(summary));
  write_file(fs::path(out_dir) / "distribution.csv", distribution_csv(summary));
  write_file(fs::path(out_dir) / "correlation.csv", correlation_csv(matrix));
  return 0;
}

int cmd_fixtures(const std::string& materialize_dir, bool self_check,
                 const std::string& check_dir, std::ostream& out,
                 std::ostream& err) {
  if (!materialize_dir.empty()) {
    try {
      fixtures::materialize(materialize_dir);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
    out << "materialized " << fixtures::corpus().size() << " fixtures to "
        << materialize_dir << "\n";
    return 0;
  }
  if (self_check || !check_dir.empty()) {
    std::vector<fixtures::SelfCheckResult> results;
    if (check_dir.empty()) {
      results = fixtures::self_check();
    } else {
      if (!fs::is_directory(check_dir)) {
        err << "error: no such directory: " << check_dir << "\n";
        return 2;
      }
      results = fixtures::self_check_dir(check_dir);
      if (results.empty()) {
        err << "error: no fixtures (subdirectories with expected.json) under "
            << check_dir << "\n";
        return 2;
      }
    }
    int failures = 0;
    for (const fixtures::SelfCheckResult& r : results) {
      if (r.passed) {
        out << "ok   " << r.fixture << "\n";
      } else {
        ++failures;
        out << "FAIL " << r.fixture << ": " << r.detail << "\n";
      }
    }
    out << (failures == 0 ? "self-check passed\n" : "self-check FAILED\n");
    return failures == 0 ? 0 : 1;
  }
  err << "error: fixtures requires --materialize <dir>, --self-check or "
         "--check-dir <dir>\n";
  return 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"iccsmell - Android ICC security smell analyzer"};
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Analyze one project");
  std::string project;
  std::string format = "text";
  std::string out_path;
  DetectorFlags analyze_flags;
  analyze->add_option("project", project, "Project root directory")->required();
  analyze->add_option("--format", format, "Output format: text|json|xml")
      ->check(CLI::IsMember({"text", "json", "xml"}));
  analyze->add_option("--out", out_path, "Write the report to this file");
  add_detector_flags(analyze, analyze_flags);

  // batch
  auto* batch = app.add_subcommand("batch", "Analyze many projects");
  std::vector<std::string> projects;
  std::string batch_format = "json";
  std::string batch_out = "reports";
  int jobs = 1;
  DetectorFlags batch_flags;
  batch->add_option("projects", projects, "Project root directories")
      ->required();
  batch->add_option("--format", batch_format, "Report format: text|json|xml")
      ->check(CLI::IsMember({"text", "json", "xml"}));
  batch->add_option("--out", batch_out, "Directory for report files and index");
  batch->add_option("--jobs", jobs, "Analyze up to N projects in parallel")
      ->check(CLI::PositiveNumber);
  add_detector_flags(batch, batch_flags);

  // stats
  auto* stats = app.add_subcommand("stats", "Aggregate report files");
  std::vector<std::string> stat_inputs;
  std::string external_counts;
  std::string stats_out = ".";
  stats->add_option("reports", stat_inputs,
                    "Report files or directories of .json reports")
      ->required();
  stats->add_option("--external-counts", external_counts,
                    "CSV of app_id,category,count side data");
  stats->add_option("--out", stats_out, "Directory for the CSV outputs");

  // fixtures
  auto* fixtures_cmd =
      app.add_subcommand("fixtures", "Bundled ground-truth corpus");
  std::string materialize_dir;
  std::string check_dir;
  bool self_check = false;
  fixtures_cmd->add_option("--materialize", materialize_dir,
                           "Write the fixture corpus to this directory");
  fixtures_cmd->add_flag("--self-check", self_check,
                         "Analyze every fixture and compare with expected.json");
  fixtures_cmd->add_option("--check-dir", check_dir,
                           "Self-check an already materialized corpus");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    int code = app.exit(e, out, msg);
    err << msg.str();
    return code == 0 ? 0 : 2;
  }

  try {
    if (analyze->parsed()) {
      return cmd_analyze(project, format, out_path,
                         resolve_config(analyze_flags, err), out, err);
    }
    if (batch->parsed()) {
      return cmd_batch(projects, batch_format, batch_out, jobs,
                       resolve_config(batch_flags, err), err);
    }
    if (stats->parsed()) {
      return cmd_stats(stat_inputs, external_counts, stats_out, err);
    }
    if (fixtures_cmd->parsed()) {
      return cmd_fixtures(materialize_dir, self_check, check_dir, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no command given\n";
  return 2;
}

}  // namespace iccsmell
