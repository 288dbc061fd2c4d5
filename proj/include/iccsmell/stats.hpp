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

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "iccsmell/report.hpp"

namespace iccsmell {

/// Per-app issue counts per category. Categories are the smell ids plus any
/// externally supplied issue categories.
struct AppStatsVector {
  std::string app_id;
  std::map<std::string, long long> counts;
};

struct CorpusSummary {
  int app_count = 0;
  std::map<std::string, double> prevalence;  // smell id -> fraction of apps
  std::vector<int> distribution;  // index = distinct smell categories, 0..12
};

/// Prevalence of each smell (fraction of apps with at least one finding) and
/// the distribution of distinct smell categories per app.
/// Throws EmptyCorpus.
CorpusSummary aggregate(const std::vector<Report>& reports);

/// Pearson product-moment correlation coefficient. Accumulates centered
/// products incrementally in extended precision.
/// Throws DegenerateInput on length mismatch, length < 2 or zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

struct MannWhitneyResult {
  double u_first = 0;   // U statistic of the first sample
  double u_second = 0;  // U statistic of the second sample
  double z = 0;         // normal approximation, tie-corrected, with
                        // continuity correction
  double p_two_tailed = 1;
};

/// Rank-sum Mann-Whitney U with midrank tie handling.
/// Throws DegenerateInput on an empty sample.
MannWhitneyResult mann_whitney_u(std::span<const double> a,
                                 std::span<const double> b);

struct CorrelationMatrix {
  std::vector<std::string> categories;  // lexicographic
  // Row-major; disengaged cells mark correlations undefined because a column
  // is constant.
  std::vector<std::optional<double>> cells;

  std::optional<double>& at(size_t row, size_t col) {
    return cells[row * categories.size() + col];
  }
  const std::optional<double>& at(size_t row, size_t col) const {
    return cells[row * categories.size() + col];
  }
};

/// Pairwise Pearson over per-app count columns. Constant columns yield
/// undefined cells. Throws EmptyCorpus.
CorrelationMatrix correlate_categories(const std::vector<AppStatsVector>& vectors,
                                       const std::vector<std::string>& categories);

/// One AppStatsVector per report: counts keyed by smell id.
std::vector<AppStatsVector> stats_vectors(const std::vector<Report>& reports);

/// Merges `app_id,category,count` CSV rows into the vectors; unknown apps are
/// added with zero smell counts. Returns the external category names.
/// Throws std::runtime_error on malformed input.
std::vector<std::string> merge_external_counts(
    std::vector<AppStatsVector>& vectors, std::string_view csv_bytes);

// Deterministic CSV emitters: header row, lexicographic category order,
// real values with 6 decimal places.
std::string prevalence_csv(const CorpusSummary& summary);
std::string distribution_csv(const CorpusSummary& summary);
std::string correlation_csv(const CorrelationMatrix& matrix);

}  // namespace iccsmell
