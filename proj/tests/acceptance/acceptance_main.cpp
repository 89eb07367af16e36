// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"
#include "shapemetrics/clopper_pearson.hpp"
#include "shapemetrics/experiments.hpp"
#include "shapemetrics/io.hpp"
#include "shapemetrics/metrics.hpp"
#include "shapemetrics/min_enclosing_circle.hpp"
#include "shapemetrics/rasterizer.hpp"
#include "shapemetrics/simulators.hpp"

using namespace shapemetrics;

namespace {

// Tolerances and thresholds.
constexpr double kCiDecimals = 5e-5;  // 4 decimal places
constexpr double kMecTolerance = 1e-9;
constexpr double kTraceTolerance = 1e-9;
constexpr double kOneSecond = 1.0;
constexpr double kOneMinute = 60.0;
constexpr double kFiveMinutes = 300.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

ExperimentSpec suite_experiment(const std::string& name, std::uint64_t seed) {
  for (ExperimentSpec& s : default_suite(seed))
    if (s.name == name) return s;
  throw std::invalid_argument("no experiment " + name);
}

std::vector<ExperimentResult> over_seeds(const std::string& name, std::uint64_t n_seeds) {
  std::vector<ExperimentResult> out;
  for (std::uint64_t seed = 1; seed <= n_seeds; ++seed) out.push_back(run_experiment(suite_experiment(name, seed)));
  return out;
}

std::string accuracy_list(const std::vector<ExperimentResult>& rs) {
  std::string s;
  for (const auto& r : rs) s += (s.empty() ? "" : " ") + io::format_double(r.accuracy, 4);
  return s;
}

Outcome ci_exactness() {
  struct Case {
    int s, n;
    double low, high;
  };
  const Case cases[] = {{21, 40, 0.3613, 0.6849},
                        {40, 40, 0.9119, 1.0000},
                        {78, 80, 0.9126, 0.9970},
                        {76, 80, 0.8769, 0.9862},
                        {75, 80, 0.8601, 0.9794}};
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (const Case& c : cases) {
    const Interval ci = clopper_pearson(c.s, c.n);
    worst = std::max({worst, std::abs(ci.low - c.low), std::abs(ci.high - c.high)});
  }
  const double t = seconds_since(t0);
  return {worst < kCiDecimals && t < kOneSecond, fmt("max abs error %.2e, %.3f s", worst, t)};
}

Outcome means_only() {
  const auto t0 = Clock::now();
  const auto rs = over_seeds("normal_means", 10);
  const double t = seconds_since(t0);
  std::vector<double> acc;
  int contains = 0;
  for (const auto& r : rs) {
    acc.push_back(r.accuracy);
    contains += r.ci_low <= 0.5 && 0.5 <= r.ci_high;
  }
  std::sort(acc.begin(), acc.end());
  const double median = (acc[4] + acc[5]) / 2.0;
  return {median >= 0.30 && median <= 0.70 && contains >= 8 && t < kOneMinute,
          fmt("median %.4f, %d/10 CIs contain 0.5, %.1f s", median, contains, t)};
}

Outcome covariance_normals() {
  const auto t0 = Clock::now();
  const auto corr = over_seeds("normal_correlation", 5);
  const auto scale = over_seeds("normal_scale", 5);
  const double t = seconds_since(t0);
  bool ok = t < kOneMinute;
  for (const auto& r : corr) ok &= r.accuracy >= 0.95;
  for (const auto& r : scale) ok &= r.accuracy >= 0.95;
  return {ok, "correlation [" + accuracy_list(corr) + "], scale [" + accuracy_list(scale) + "], " +
                  fmt("%.1f s", t)};
}

Outcome thresholded(const std::string& name, double threshold) {
  const auto t0 = Clock::now();
  const auto rs = over_seeds(name, 5);
  const double t = seconds_since(t0);
  const auto hits = std::count_if(rs.begin(), rs.end(), [&](const auto& r) { return r.accuracy >= threshold; });
  return {hits >= 4, "[" + accuracy_list(rs) + "] " + fmt("%d/5 >= %.2f, %.1f s", int(hits), threshold, t)};
}

Outcome geometry_oracle() {
  Rng rng(8);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = 1 + rng.below(30);
    const double span = static_cast<double>(2 + rng.below(60));
    std::vector<Point> pts;
    for (std::uint64_t i = 0; i < n; ++i)
      pts.push_back({std::floor(rng.uniform(0, span)), std::floor(rng.uniform(0, span))});
    worst = std::max(worst, std::abs(min_enclosing_circle(pts).radius - oracle::min_enclosing_circle(pts).r));
  }
  return {worst <= kMecTolerance, fmt("200 sets, max radius error %.2e", worst)};
}

Outcome metric_invariance() {
  const std::pair<Family, const char*> scenarios[] = {
      {Family::normal_pair, "standard"}, {Family::normal_pair, "correlated"}, {Family::mixture, "3"},
      {Family::qq, "major"},             {Family::function, "sine"},          {Family::function, "poly"},
      {Family::residual, "cone"},        {Family::residual, "binom"}};
  const double shifts[] = {1.0, -37.0, 1024.0};
  const double scales[] = {0.25, 2.0, 64.0};
  int images = 0, failures = 0;
  double worst_trace = 0.0;
  for (int i = 0; i < 120; ++i) {
    const auto& [family, variant] = scenarios[i % 8];
    const std::size_t n = 50 + static_cast<std::size_t>(i) * 8;
    const PointSet pts = testing::dyadic(simulate({family, variant, n, static_cast<std::uint64_t>(1000 + i)}));
    const GridSpec grid{20 + i % 90, 20 + (i * 7) % 90};
    const BinaryImage img = rasterize(pts, grid);
    const MetricVector m = metric_vector(img);
    ++images;

    bool ok = m.sp > 0.0 && m.sp <= 1.0 && m.eccentricity >= 1.0;
    const oracle::Cov cov = oracle::pixel_covariance(img);
    const double trace = cov.xx + cov.yy + 2.0 / 12.0;
    worst_trace = std::max(worst_trace, std::abs(m.eig1 + m.eig2 - trace));
    ok &= std::abs(m.eig1 + m.eig2 - trace) <= kTraceTolerance;

    for (double dx : shifts) {
      PointSet moved = pts;
      for (Point& p : moved) {
        p.x += dx;
        p.y -= 3.0 * dx;
      }
      ok &= metric_vector(rasterize(moved, grid)) == m;
    }
    for (double s : scales) {
      PointSet scaled = pts;
      for (Point& p : scaled) {
        p.x *= s;
        p.y *= s;
      }
      ok &= metric_vector(rasterize(scaled, grid)) == m;
    }
    failures += !ok;
  }
  return {images >= 100 && failures == 0,
          fmt("%d images, %d failures, max trace error %.2e", images, failures, worst_trace)};
}

Outcome cart_oracle() {
  Rng rng(10);
  int mismatches = 0, split_count = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto rows = static_cast<std::size_t>(20 + rng.below(31));
    const int classes = 2 + static_cast<int>(rng.below(3));
    const LabeledDataset d = testing::random_dataset(rng, rows, classes, trial % 3 == 0 ? 3 : 0);
    const CvParams params;
    const TreeModel tree = grow(d, params);
    const auto want = oracle::best_root_split(d, params.min_leaf);
    if (!want) {
      mismatches += !tree.root().is_leaf();
      continue;
    }
    ++split_count;
    mismatches += tree.root().feature != want->feature || tree.root().threshold != want->threshold;
  }
  return {mismatches == 0, fmt("50 datasets (%d split), %d mismatches", split_count, mismatches)};
}

struct SuiteFiles {
  std::string results;
  std::string usage;
};

SuiteFiles suite_files(const SuiteReport& r) {
  std::ostringstream results, usage;
  io::write_results_csv(results, r);
  io::write_usage_csv(usage, r);
  return {results.str(), usage.str()};
}

Outcome determinism(SuiteReport& first) {
  const auto t0 = Clock::now();
  first = run_suite({});
  const double t = seconds_since(t0);
  const SuiteReport second = run_suite({});
  const SuiteFiles a = suite_files(first), b = suite_files(second);
  return {first.complete && a.results == b.results && a.usage == b.usage && t < kFiveMinutes,
          fmt("results/usage identical: %s, one suite run %.1f s", a.results == b.results && a.usage == b.usage ? "yes" : "no", t)};
}

Outcome usage_accounting(const SuiteReport& report) {
  int internal = 0;
  std::vector<TreeModel> trees;
  for (const auto& e : report.entries)
    if (e.result) {
      trees.push_back(e.result->tree);
      internal += static_cast<int>(e.result->tree.internal_count());
    }
  const auto usage = feature_usage(trees);
  const int total = std::accumulate(usage.begin(), usage.end(), 0);

  std::string expected = "metric,count\n";
  for (std::size_t f = 0; f < kMetricCount; ++f)
    expected += std::string(kMetricNames[f]) + "," + std::to_string(report.usage[f]) + "\n";
  const bool ordered = suite_files(report).usage == expected;

  std::string counts;
  for (int u : report.usage) counts += (counts.empty() ? "" : "/") + std::to_string(u);
  return {trees.size() == 7 && total == internal && report.internal_nodes == internal && usage == report.usage &&
              ordered,
          fmt("usage %s sums to %d, internal nodes %d, reference 6/0/3/4/2/0/1", counts.c_str(), total, internal)};
}

}  // namespace

int main() {
  int failed = 0;
  const auto report = [&](int id, const char* name, const std::function<Outcome()>& check) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %2d %-28s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
    failed += !o.pass;
  };

  SuiteReport suite;
  report(1, "ci_exactness", ci_exactness);
  report(2, "means_only_normals", means_only);
  report(3, "covariance_normals", covariance_normals);
  report(4, "gaussian_mixtures", [] { return thresholded("mixtures", 0.90); });
  report(5, "qq_outliers", [] { return thresholded("qq_outliers", 0.85); });
  report(6, "functions", [] { return thresholded("functions", 0.85); });
  report(7, "residual_patterns", [] { return thresholded("residuals", 0.85); });
  report(8, "geometry_oracle", geometry_oracle);
  report(9, "metric_invariance", metric_invariance);
  report(10, "cart_oracle", cart_oracle);
  report(11, "determinism", [&] { return determinism(suite); });
  report(12, "usage_accounting", [&] { return usage_accounting(suite); });

  std::printf("%d/12 criteria passed\n", 12 - failed);
  return failed == 0 ? 0 : 1;
}
