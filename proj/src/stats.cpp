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

#include "iccsmell/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace iccsmell {

namespace {

std::string format6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

// CSV quoting for category names and app ids.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

}  // namespace

CorpusSummary aggregate(const std::vector<Report>& reports) {
  if (reports.empty()) throw EmptyCorpus();
  CorpusSummary summary;
  summary.app_count = static_cast<int>(reports.size());
  summary.distribution.assign(13, 0);
  std::map<Smell, int> apps_with;
  for (Smell s : kAllSmells) apps_with[s] = 0;
  for (const Report& report : reports) {
    for (Smell s : kAllSmells) {
      if (report.per_smell_counts.at(s) > 0) ++apps_with[s];
    }
    int distinct = report.distinct_smell_categories;
    distinct = std::clamp(distinct, 0, 12);
    ++summary.distribution[static_cast<size_t>(distinct)];
  }
  for (Smell s : kAllSmells) {
    summary.prevalence[std::string(smell_id(s))] =
        static_cast<double>(apps_with[s]) / static_cast<double>(reports.size());
  }
  return summary;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw DegenerateInput("sequence lengths differ");
  if (x.size() < 2) throw DegenerateInput("need at least two observations");

  // Incremental centered sums; the co-moment update uses the symmetric
  // dx*dy*(n-1)/n form so pearson(x, y) and pearson(y, x) are bit-identical.
  long double mean_x = 0, mean_y = 0, m2x = 0, m2y = 0, cxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    long double n = static_cast<long double>(i + 1);
    long double dx = x[i] - mean_x;
    long double dy = y[i] - mean_y;
    long double w = (n - 1) / n;
    cxy += dx * dy * w;
    m2x += dx * dx * w;
    m2y += dy * dy * w;
    mean_x += dx / n;
    mean_y += dy / n;
  }
  if (m2x == 0) throw DegenerateInput("first sequence is constant");
  if (m2y == 0) throw DegenerateInput("second sequence is constant");
  return static_cast<double>(cxy / sqrtl(m2x) / sqrtl(m2y));
}

MannWhitneyResult mann_whitney_u(std::span<const double> a,
                                 std::span<const double> b) {
  if (a.empty() || b.empty()) throw DegenerateInput("empty sample");
  size_t na = a.size(), nb = b.size(), n = na + nb;

  struct Obs {
    double value;
    bool first_sample;
  };
  std::vector<Obs> pooled;
  pooled.reserve(n);
  for (double v : a) pooled.push_back({v, true});
  for (double v : b) pooled.push_back({v, false});
  std::sort(pooled.begin(), pooled.end(),
            [](const Obs& x, const Obs& y) { return x.value < y.value; });

  // Midranks; accumulate the tie-correction term sum(t^3 - t).
  std::vector<double> ranks(n);
  long double tie_term = 0;
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j < n && pooled[j].value == pooled[i].value) ++j;
    double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (size_t k = i; k < j; ++k) ranks[k] = midrank;
    long double t = static_cast<long double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }

  double rank_sum_a = 0;
  for (size_t k = 0; k < n; ++k) {
    if (pooled[k].first_sample) rank_sum_a += ranks[k];
  }

  MannWhitneyResult result;
  result.u_first =
      rank_sum_a - static_cast<double>(na) * (static_cast<double>(na) + 1) / 2.0;
  result.u_second = static_cast<double>(na) * static_cast<double>(nb) -
                    result.u_first;

  long double mean_u = static_cast<long double>(na) * nb / 2.0L;
  long double variance =
      (static_cast<long double>(na) * nb / 12.0L) *
      ((n + 1) - tie_term / (static_cast<long double>(n) * (n - 1)));
  if (variance <= 0) {
    result.z = 0;
    result.p_two_tailed = 1;
    return result;
  }
  long double diff = result.u_first - mean_u;
  long double numerator = 0;
  if (diff > 0) numerator = diff - 0.5L;      // continuity correction
  else if (diff < 0) numerator = diff + 0.5L;
  result.z = static_cast<double>(numerator / sqrtl(variance));
  result.p_two_tailed =
      static_cast<double>(erfcl(fabsl(numerator / sqrtl(variance)) / sqrtl(2.0L)));
  return result;
}

CorrelationMatrix correlate_categories(const std::vector<AppStatsVector>& vectors,
                                       const std::vector<std::string>& categories) {
  if (vectors.empty()) throw EmptyCorpus();
  CorrelationMatrix matrix;
  matrix.categories = categories;
  std::sort(matrix.categories.begin(), matrix.categories.end());
  size_t m = matrix.categories.size();
  matrix.cells.assign(m * m, std::nullopt);

  std::vector<std::vector<double>> columns(m);
  std::vector<bool> constant(m, true);
  for (size_t c = 0; c < m; ++c) {
    columns[c].reserve(vectors.size());
    for (const AppStatsVector& v : vectors) {
      auto it = v.counts.find(matrix.categories[c]);
      columns[c].push_back(
          it == v.counts.end() ? 0.0 : static_cast<double>(it->second));
    }
    for (double value : columns[c]) {
      if (value != columns[c][0]) {
        constant[c] = false;
        break;
      }
    }
  }

  for (size_t r = 0; r < m; ++r) {
    for (size_t c = r; c < m; ++c) {
      if (constant[r] || constant[c] || vectors.size() < 2) continue;
      double value = (r == c) ? 1.0 : pearson(columns[r], columns[c]);
      matrix.at(r, c) = value;
      matrix.at(c, r) = value;
    }
  }
  return matrix;
}

std::vector<AppStatsVector> stats_vectors(const std::vector<Report>& reports) {
  std::vector<AppStatsVector> out;
  out.reserve(reports.size());
  for (const Report& report : reports) {
    AppStatsVector v;
    v.app_id = report.app_id;
    for (const auto& [smell, count] : report.per_smell_counts) {
      v.counts[std::string(smell_id(smell))] = count;
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::string> merge_external_counts(
    std::vector<AppStatsVector>& vectors, std::string_view csv_bytes) {
  std::istringstream in{std::string(csv_bytes)};
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("external counts file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "app_id,category,count")
    throw std::runtime_error(
        "external counts must start with header app_id,category,count");

  std::set<std::string> external;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto c1 = line.find(',');
    auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
    if (c2 == std::string::npos)
      throw std::runtime_error("external counts line " + std::to_string(line_no) +
                               ": expected app_id,category,count");
    std::string app_id = line.substr(0, c1);
    std::string category = line.substr(c1 + 1, c2 - c1 - 1);
    std::string count_str = line.substr(c2 + 1);
    if (app_id.empty() || category.empty())
      throw std::runtime_error("external counts line " + std::to_string(line_no) +
                               ": empty field");
    long long count = 0;
    try {
      size_t used = 0;
      count = std::stoll(count_str, &used);
      if (used != count_str.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::runtime_error("external counts line " + std::to_string(line_no) +
                               ": count is not an integer");
    }
    if (count < 0)
      throw std::runtime_error("external counts line " + std::to_string(line_no) +
                               ": negative count");
    external.insert(category);
    auto it = std::find_if(vectors.begin(), vectors.end(),
                           [&](const AppStatsVector& v) {
                             return v.app_id == app_id;
                           });
    if (it == vectors.end()) {
      AppStatsVector v;
      v.app_id = app_id;
      for (Smell s : kAllSmells) v.counts[std::string(smell_id(s))] = 0;
      v.counts[category] += count;
      vectors.push_back(std::move(v));
    } else {
      it->counts[category] += count;
    }
  }
  return {external.begin(), external.end()};
}

std::string prevalence_csv(const CorpusSummary& summary) {
  std::ostringstream out;
  out << "category,prevalence\n";
  for (const auto& [category, value] : summary.prevalence) {
    out << csv_field(category) << "," << format6(value) << "\n";
  }
  return out.str();
}

std::string distribution_csv(const CorpusSummary& summary) {
  std::ostringstream out;
  out << "distinct_categories,app_count\n";
  for (size_t i = 0; i < summary.distribution.size(); ++i) {
    out << i << "," << summary.distribution[i] << "\n";
  }
  return out.str();
}

std::string correlation_csv(const CorrelationMatrix& matrix) {
  std::ostringstream out;
  out << "category";
  for (const std::string& c : matrix.categories) out << "," << csv_field(c);
  out << "\n";
  for (size_t r = 0; r < matrix.categories.size(); ++r) {
    out << csv_field(matrix.categories[r]);
    for (size_t c = 0; c < matrix.categories.size(); ++c) {
      const auto& cell = matrix.at(r, c);
      out << "," << (cell ? format6(*cell) : "NA");
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace iccsmell
