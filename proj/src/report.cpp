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

#include "iccsmell/report.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

namespace iccsmell {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c); break;
    }
  }
  return out;
}

std::string location_str(const SourceLocation& loc) {
  return loc.file + ":" + std::to_string(loc.line) + ":" +
         std::to_string(loc.column);
}

}  // namespace

Report build_report(const AppModel& app, std::vector<Finding> findings,
                    std::vector<Diagnostic> extra_diags) {
  Report report;
  report.app_id = app.manifest.package_name;
  report.findings = std::move(findings);
  std::sort(report.findings.begin(), report.findings.end(), finding_order);

  report.diagnostics = app.diagnostics;
  for (const SourceUnit& unit : app.units) {
    for (const Diagnostic& d : unit.diagnostics) report.diagnostics.push_back(d);
  }
  for (Diagnostic& d : extra_diags) report.diagnostics.push_back(std::move(d));

  for (Smell s : kAllSmells) report.per_smell_counts[s] = 0;
  for (const Finding& f : report.findings) ++report.per_smell_counts[f.smell];
  for (const auto& [smell, count] : report.per_smell_counts) {
    if (count > 0) ++report.distinct_smell_categories;
  }
  return report;
}

std::string render_text(const Report& report) {
  std::ostringstream out;
  out << "Report for " << report.app_id << "\n";
  if (report.findings.empty()) {
    out << "  no findings\n";
  } else {
    out << "  " << report.findings.size() << " finding(s) in "
        << report.distinct_smell_categories << " smell categor"
        << (report.distinct_smell_categories == 1 ? "y" : "ies") << "\n";
  }
  for (const Finding& f : report.findings) {
    const SmellInfo& info = smell_info(f.smell);
    out << "\n"
        << location_str(f.location) << " [" << smell_id(f.smell) << "/"
        << confidence_id(f.confidence) << "] " << info.title << " — "
        << f.message << "\n";
    out << "  mitigation: " << f.mitigation_hint << "\n";
    out << "  threats: ";
    for (size_t i = 0; i < f.threat_classes.size(); ++i) {
      if (i) out << ", ";
      out << threat_id(f.threat_classes[i]);
    }
    out << "\n";
  }
  if (!report.diagnostics.empty()) {
    out << "\ndiagnostics:\n";
    for (const Diagnostic& d : report.diagnostics) {
      out << "  " << location_str(d.location) << " [" << severity_id(d.severity)
          << "/" << d.code << "] " << d.message << "\n";
    }
  }
  return out.str();
}

std::string render_json(const Report& report) {
  ordered_json doc;
  doc["schema"] = 1;
  doc["app_id"] = report.app_id;
  doc["findings"] = ordered_json::array();
  for (const Finding& f : report.findings) {
    ordered_json j;
    j["smell"] = std::string(smell_id(f.smell));
    j["title"] = std::string(smell_info(f.smell).title);
    j["file"] = f.location.file;
    j["line"] = f.location.line;
    j["column"] = f.location.column;
    j["confidence"] = std::string(confidence_id(f.confidence));
    j["message"] = f.message;
    j["threats"] = ordered_json::array();
    for (ThreatClass t : f.threat_classes) j["threats"].push_back(std::string(threat_id(t)));
    j["mitigation"] = f.mitigation_hint;
    doc["findings"].push_back(std::move(j));
  }
  doc["diagnostics"] = ordered_json::array();
  for (const Diagnostic& d : report.diagnostics) {
    ordered_json j;
    j["file"] = d.location.file;
    j["line"] = d.location.line;
    j["column"] = d.location.column;
    j["severity"] = std::string(severity_id(d.severity));
    j["code"] = d.code;
    j["message"] = d.message;
    doc["diagnostics"].push_back(std::move(j));
  }
  doc["counts"] = ordered_json::object();
  for (Smell s : kAllSmells) {
    doc["counts"][std::string(smell_id(s))] = report.per_smell_counts.at(s);
  }
  doc["distinct_smell_categories"] = report.distinct_smell_categories;
  // Messages can quote bytes from analyzed sources; invalid UTF-8 is replaced
  // rather than aborting the dump.
  return doc.dump(2, ' ', false, ordered_json::error_handler_t::replace) + "\n";
}

std::string render_xml(const Report& report) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<report schema=\"1\" app_id=\"" << xml_escape(report.app_id)
      << "\">\n";
  out << "  <findings>\n";
  for (const Finding& f : report.findings) {
    out << "    <finding smell=\"" << smell_id(f.smell) << "\" file=\""
        << xml_escape(f.location.file) << "\" line=\"" << f.location.line
        << "\" column=\"" << f.location.column << "\" confidence=\""
        << confidence_id(f.confidence) << "\">\n";
    out << "      <title>" << xml_escape(smell_info(f.smell).title)
        << "</title>\n";
    out << "      <message>" << xml_escape(f.message) << "</message>\n";
    out << "      <threats>\n";
    for (ThreatClass t : f.threat_classes) {
      out << "        <threat>" << threat_id(t) << "</threat>\n";
    }
    out << "      </threats>\n";
    out << "      <mitigation>" << xml_escape(f.mitigation_hint)
        << "</mitigation>\n";
    out << "    </finding>\n";
  }
  out << "  </findings>\n";
  out << "  <diagnostics>\n";
  for (const Diagnostic& d : report.diagnostics) {
    out << "    <diagnostic file=\"" << xml_escape(d.location.file)
        << "\" line=\"" << d.location.line << "\" column=\""
        << d.location.column << "\" severity=\"" << severity_id(d.severity)
        << "\" code=\"" << xml_escape(d.code) << "\">" << xml_escape(d.message)
        << "</diagnostic>\n";
  }
  out << "  </diagnostics>\n";
  out << "  <counts>\n";
  for (Smell s : kAllSmells) {
    out << "    <count smell=\"" << smell_id(s) << "\" value=\""
        << report.per_smell_counts.at(s) << "\"/>\n";
  }
  out << "  </counts>\n";
  out << "  <distinct_smell_categories>" << report.distinct_smell_categories
      << "</distinct_smell_categories>\n";
  out << "</report>\n";
  return out.str();
}

namespace {

const ordered_json& require(const ordered_json& obj, const char* key,
                            const char* where) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw MalformedReport(std::string(where) + " is missing key \"" + key + "\"");
  return *it;
}

std::string require_string(const ordered_json& obj, const char* key,
                           const char* where) {
  const ordered_json& v = require(obj, key, where);
  if (!v.is_string())
    throw MalformedReport(std::string(where) + " key \"" + key +
                          "\" is not a string");
  return v.get<std::string>();
}

int require_int(const ordered_json& obj, const char* key, const char* where) {
  const ordered_json& v = require(obj, key, where);
  if (!v.is_number_integer())
    throw MalformedReport(std::string(where) + " key \"" + key +
                          "\" is not an integer");
  return v.get<int>();
}

void warn_unknown_keys(const ordered_json& obj,
                       const std::set<std::string>& known, const char* where,
                       Report& report) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!known.count(it.key())) {
      report.diagnostics.push_back(
          {{"<report>", 1, 1},
           Severity::warning,
           "unknown_key",
           std::string(where) + " key \"" + it.key() + "\" ignored"});
    }
  }
}

}  // namespace

Report parse_report(std::string_view bytes) {
  ordered_json doc = ordered_json::parse(bytes, nullptr, false);
  if (doc.is_discarded()) throw MalformedReport("not valid JSON");
  if (!doc.is_object()) throw MalformedReport("top level is not an object");

  Report report;
  if (require_int(doc, "schema", "report") != 1)
    throw MalformedReport("unsupported schema version");
  report.app_id = require_string(doc, "app_id", "report");

  const ordered_json& findings = require(doc, "findings", "report");
  if (!findings.is_array()) throw MalformedReport("findings is not an array");
  for (const auto& j : findings) {
    if (!j.is_object()) throw MalformedReport("finding is not an object");
    auto smell = smell_from_id(require_string(j, "smell", "finding"));
    if (!smell) throw MalformedReport("unknown smell id in finding");
    auto confidence = confidence_from_id(require_string(j, "confidence", "finding"));
    if (!confidence) throw MalformedReport("unknown confidence in finding");
    SourceLocation loc{require_string(j, "file", "finding"),
                       require_int(j, "line", "finding"),
                       require_int(j, "column", "finding")};
    if (loc.line < 1 || loc.column < 1)
      throw MalformedReport("finding location is not 1-based");
    report.findings.push_back(make_finding(
        *smell, std::move(loc), *confidence,
        require_string(j, "message", "finding")));
    warn_unknown_keys(j,
                      {"smell", "title", "file", "line", "column", "confidence",
                       "message", "threats", "mitigation"},
                      "finding", report);
  }

  const ordered_json& diagnostics = require(doc, "diagnostics", "report");
  if (!diagnostics.is_array())
    throw MalformedReport("diagnostics is not an array");
  for (const auto& j : diagnostics) {
    if (!j.is_object()) throw MalformedReport("diagnostic is not an object");
    Diagnostic d;
    d.location = {require_string(j, "file", "diagnostic"),
                  require_int(j, "line", "diagnostic"),
                  require_int(j, "column", "diagnostic")};
    std::string severity = require_string(j, "severity", "diagnostic");
    if (severity != "info" && severity != "warning" && severity != "error")
      throw MalformedReport("unknown diagnostic severity \"" + severity + "\"");
    d.severity = severity_from_id(severity);
    d.code = require_string(j, "code", "diagnostic");
    d.message = require_string(j, "message", "diagnostic");
    report.diagnostics.push_back(std::move(d));
  }

  const ordered_json& counts = require(doc, "counts", "report");
  if (!counts.is_object()) throw MalformedReport("counts is not an object");
  for (Smell s : kAllSmells) {
    std::string id(smell_id(s));
    report.per_smell_counts[s] =
        counts.contains(id) ? require_int(counts, id.c_str(), "counts") : 0;
  }
  report.distinct_smell_categories =
      require_int(doc, "distinct_smell_categories", "report");

  // Cross-check against the parsed findings.
  std::map<Smell, int> recount;
  for (Smell s : kAllSmells) recount[s] = 0;
  for (const Finding& f : report.findings) ++recount[f.smell];
  int distinct = 0;
  for (const auto& [smell, count] : recount) {
    if (count > 0) ++distinct;
  }
  if (recount != report.per_smell_counts)
    throw MalformedReport("counts disagree with findings");
  if (distinct != report.distinct_smell_categories)
    throw MalformedReport("distinct_smell_categories disagrees with findings");

  warn_unknown_keys(doc,
                    {"schema", "app_id", "findings", "diagnostics", "counts",
                     "distinct_smell_categories"},
                    "report", report);
  return report;
}

}  // namespace iccsmell
