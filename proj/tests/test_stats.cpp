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

#include <cmath>
#include <random>

#include "iccsmell/stats.hpp"

using namespace iccsmell;

namespace {

// Independent direct-formula implementation used as the oracle.
double pearson_oracle(const std::vector<double>& x,
                      const std::vector<double>& y) {
  double mean_x = 0, mean_y = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= static_cast<double>(x.size());
  mean_y /= static_cast<double>(y.size());
  double num = 0, den_x = 0, den_y = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - mean_x) * (y[i] - mean_y);
    den_x += (x[i] - mean_x) * (x[i] - mean_x);
    den_y += (y[i] - mean_y) * (y[i] - mean_y);
  }
  return num / std::sqrt(den_x * den_y);
}

// Exhaustive pairwise comparison count: sum over all (a_i, b_j) of
// [a_i > b_j] + 0.5 * [a_i == b_j].
double u_oracle(const std::vector<double>& a, const std::vector<double>& b) {
  double u = 0;
  for (double va : a) {
    for (double vb : b) {
      if (va > vb) u += 1;
      else if (va == vb) u += 0.5;
    }
  }
  return u;
}

Report report_with(const std::string& app_id,
                   const std::map<Smell, int>& nonzero) {
  Report report;
  report.app_id = app_id;
  for (Smell s : kAllSmells) report.per_smell_counts[s] = 0;
  for (const auto& [smell, count] : nonzero) {
    report.per_smell_counts[smell] = count;
    for (int i = 0; i < count; ++i) {
      report.findings.push_back(make_finding(
          smell, {"f.java", i + 1, 1}, Confidence::high, "synthetic"));
    }
  }
  for (const auto& [smell, count] : report.per_smell_counts) {
    if (count > 0) ++report.distinct_smell_categories;
  }
  return report;
}

}  // namespace

TEST_CASE("pearson: perfect correlations") {
  std::vector<double> x{1, 2, 3, 4, 7};
  std::vector<double> neg{-1, -2, -3, -4, -7};
  CHECK(pearson(x, x) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(pearson(x, neg) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("pearson: agrees with the direct formula oracle") {
  std::vector<double> x{1, 2, 3, 4};
  std::vector<double> y{2, 4, 5, 9};
  double got = pearson(x, y);
  CHECK(std::fabs(got - pearson_oracle(x, y)) < 1e-12);
  CHECK(got == doctest::Approx(11.0 / std::sqrt(130.0)).epsilon(1e-12));
}

TEST_CASE("pearson: degenerate inputs are rejected") {
  std::vector<double> x{1, 2, 3};
  std::vector<double> konst{5, 5, 5};
  std::vector<double> shorter{1, 2};
  std::vector<double> single{1};
  CHECK_THROWS_AS((void)pearson(x, konst), DegenerateInput);
  CHECK_THROWS_AS((void)pearson(konst, x), DegenerateInput);
  CHECK_THROWS_AS((void)pearson(x, shorter), DegenerateInput);
  CHECK_THROWS_AS((void)pearson(single, single), DegenerateInput);
}

TEST_CASE("pearson: symmetry and affine invariance on random samples") {
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> value(-50.0, 50.0);
  std::uniform_int_distribution<size_t> length(2, 80);
  for (int round = 0; round < 200; ++round) {
    size_t n = length(rng);
    std::vector<double> x(n), y(n);
    for (size_t i = 0; i < n; ++i) {
      x[i] = value(rng);
      y[i] = value(rng);
    }
    x[0] += 1.0;  // guards against an (unlikely) constant draw
    y[0] += 1.0;
    double r = pearson(x, y);
    CHECK(std::fabs(r) <= 1.0 + 1e-12);
    CHECK(pearson(y, x) == r);  // bit-exact by construction
    std::vector<double> scaled(n), negated(n);
    for (size_t i = 0; i < n; ++i) {
      scaled[i] = 2.0 * x[i] + 1.0;
      negated[i] = -3.0 * x[i] + 7.0;
    }
    CHECK(pearson(scaled, y) == doctest::Approx(r).epsilon(1e-9));
    CHECK(pearson(negated, y) == doctest::Approx(-r).epsilon(1e-9));
  }
}

TEST_CASE("mann-whitney: complete separation and identical samples") {
  std::vector<double> lo{1, 2, 3};
  std::vector<double> hi{4, 5, 6};
  MannWhitneyResult sep = mann_whitney_u(lo, hi);
  CHECK(sep.u_first == 0.0);
  CHECK(sep.u_second == 9.0);
  CHECK(sep.z < 0);

  std::vector<double> same{2, 2, 5, 9};
  MannWhitneyResult tie = mann_whitney_u(same, same);
  CHECK(tie.u_first == same.size() * same.size() / 2.0);
  CHECK(tie.z == 0.0);
  CHECK(tie.p_two_tailed == 1.0);
}

TEST_CASE("mann-whitney: matches the pairwise-count oracle exactly") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<size_t> size_dist(2, 50);
  std::uniform_int_distribution<int> value_dist(0, 9);  // many ties
  for (int round = 0; round < 500; ++round) {
    std::vector<double> a(size_dist(rng)), b(size_dist(rng));
    for (double& v : a) v = value_dist(rng);
    for (double& v : b) v = value_dist(rng);
    MannWhitneyResult result = mann_whitney_u(a, b);
    CHECK(result.u_first == u_oracle(a, b));
    CHECK(result.u_first + result.u_second ==
          static_cast<double>(a.size() * b.size()));

    // Invariance under a strictly increasing transform.
    std::vector<double> ta(a), tb(b);
    for (double& v : ta) v = v * v * v + 2 * v;
    for (double& v : tb) v = v * v * v + 2 * v;
    CHECK(mann_whitney_u(ta, tb).u_first == result.u_first);
  }
}

TEST_CASE("mann-whitney: rejects empty samples, p is a probability") {
  std::vector<double> some{1, 2};
  std::vector<double> none;
  CHECK_THROWS_AS(mann_whitney_u(some, none), DegenerateInput);
  CHECK_THROWS_AS(mann_whitney_u(none, some), DegenerateInput);
  MannWhitneyResult r = mann_whitney_u(std::vector<double>{1, 2, 3, 4, 9},
                                       std::vector<double>{2, 3, 3, 8});
  CHECK(r.p_two_tailed >= 0.0);
  CHECK(r.p_two_tailed <= 1.0);
}

TEST_CASE("aggregate: prevalence and distribution") {
  std::vector<Report> reports;
  reports.push_back(report_with("a", {{Smell::SM12, 2}}));
  reports.push_back(report_with("b", {}));
  CorpusSummary summary = aggregate(reports);
  CHECK(summary.app_count == 2);
  CHECK(summary.prevalence.at("SM12") == 0.5);
  CHECK(summary.prevalence.at("SM01") == 0.0);
  CHECK(summary.distribution[0] == 1);
  CHECK(summary.distribution[1] == 1);

  int total = 0;
  for (int bin : summary.distribution) total += bin;
  CHECK(total == summary.app_count);
}

TEST_CASE("aggregate: all-empty corpus and empty corpus") {
  std::vector<Report> empties{report_with("a", {}), report_with("b", {}),
                              report_with("c", {})};
  CorpusSummary summary = aggregate(empties);
  for (const auto& [category, value] : summary.prevalence) CHECK(value == 0.0);
  CHECK(summary.distribution[0] == 3);
  CHECK_THROWS_AS(aggregate({}), EmptyCorpus);
}

TEST_CASE("correlate: identical, constant and independent columns") {
  std::vector<AppStatsVector> vectors;
  std::mt19937 rng(909);
  std::uniform_int_distribution<int> count(0, 20);
  for (int i = 0; i < 1000; ++i) {
    AppStatsVector v;
    v.app_id = "app" + std::to_string(i);
    long long shared = count(rng);
    v.counts["alpha"] = shared;
    v.counts["alpha_twin"] = shared;
    v.counts["noise"] = count(rng);
    v.counts["always7"] = 7;
    vectors.push_back(std::move(v));
  }
  CorrelationMatrix matrix = correlate_categories(
      vectors, {"alpha", "alpha_twin", "noise", "always7"});
  REQUIRE(matrix.categories ==
          std::vector<std::string>{"alpha", "alpha_twin", "always7", "noise"});

  auto idx = [&](const std::string& name) {
    return static_cast<size_t>(
        std::find(matrix.categories.begin(), matrix.categories.end(), name) -
        matrix.categories.begin());
  };
  CHECK(matrix.at(idx("alpha"), idx("alpha_twin")).value() ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::fabs(matrix.at(idx("alpha"), idx("noise")).value()) < 0.1);
  CHECK(!matrix.at(idx("always7"), idx("alpha")).has_value());
  CHECK(!matrix.at(idx("always7"), idx("always7")).has_value());

  for (size_t r = 0; r < matrix.categories.size(); ++r) {
    CHECK(matrix.at(r, r).value_or(1.0) == 1.0);
    for (size_t c = 0; c < matrix.categories.size(); ++c) {
      CHECK(matrix.at(r, c) == matrix.at(c, r));
      if (matrix.at(r, c)) CHECK(std::fabs(*matrix.at(r, c)) <= 1.0 + 1e-12);
    }
  }
  CHECK_THROWS_AS(correlate_categories({}, {"a"}), EmptyCorpus);
}

TEST_CASE("stats vectors carry the per-smell counts") {
  std::vector<Report> reports{report_with("a", {{Smell::SM04, 3}})};
  std::vector<AppStatsVector> vectors = stats_vectors(reports);
  REQUIRE(vectors.size() == 1);
  CHECK(vectors[0].counts.at("SM04") == 3);
  CHECK(vectors[0].counts.at("SM01") == 0);
  CHECK(vectors[0].counts.size() == 12);
}

TEST_CASE("external counts merge and validate") {
  std::vector<AppStatsVector> vectors =
      stats_vectors({report_with("a", {{Smell::SM12, 1}})});
  auto categories = merge_external_counts(
      vectors, "app_id,category,count\na,Security,4\nb,Security,2\n");
  CHECK(categories == std::vector<std::string>{"Security"});
  REQUIRE(vectors.size() == 2);
  CHECK(vectors[0].counts.at("Security") == 4);
  CHECK(vectors[1].counts.at("Security") == 2);
  CHECK(vectors[1].counts.at("SM12") == 0);

  CHECK_THROWS(merge_external_counts(vectors, "wrong,header,here\n"));
  CHECK_THROWS(merge_external_counts(vectors,
                                     "app_id,category,count\na,Security,NaN\n"));
  CHECK_THROWS(merge_external_counts(vectors,
                                     "app_id,category,count\na,Security,-1\n"));
}

TEST_CASE("csv emitters are deterministic with fixed formats") {
  std::vector<Report> reports;
  reports.push_back(report_with("a", {{Smell::SM12, 1}}));
  reports.push_back(report_with("b", {{Smell::SM12, 1}, {Smell::SM04, 2}}));
  reports.push_back(report_with("c", {}));
  CorpusSummary summary = aggregate(reports);

  std::string prev = prevalence_csv(summary);
  CHECK(prev.rfind("category,prevalence\n", 0) == 0);
  CHECK(prev.find("SM12,0.666667\n") != std::string::npos);
  CHECK(prev.find("SM04,0.333333\n") != std::string::npos);
  CHECK(prev.find("SM01,0.000000\n") != std::string::npos);
  CHECK(prevalence_csv(summary) == prev);

  std::string dist = distribution_csv(summary);
  CHECK(dist.rfind("distinct_categories,app_count\n", 0) == 0);
  CHECK(std::count(dist.begin(), dist.end(), '\n') == 14);  // header + 13 bins
  CHECK(dist.find("\n0,1\n") != std::string::npos);
  CHECK(dist.find("\n1,1\n") != std::string::npos);
  CHECK(dist.find("\n2,1\n") != std::string::npos);

  std::vector<AppStatsVector> vectors;
  for (int i = 0; i < 4; ++i) {
    AppStatsVector v;
    v.app_id = "app" + std::to_string(i);
    v.counts["x"] = i;
    v.counts["y"] = i * 2;
    v.counts["k"] = 3;
    vectors.push_back(std::move(v));
  }
  CorrelationMatrix matrix = correlate_categories(vectors, {"x", "y", "k"});
  std::string corr = correlation_csv(matrix);
  CHECK(corr ==
        "category,k,x,y\n"
        "k,NA,NA,NA\n"
        "x,NA,1.000000,1.000000\n"
        "y,NA,1.000000,1.000000\n");

  CorrelationMatrix empty;
  CHECK(correlation_csv(empty) == "category\n");
}
