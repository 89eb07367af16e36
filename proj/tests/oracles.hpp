#pragma once

// Brute-force reference computations. Deliberately slow and written without
// calling into the library paths they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "shapemetrics/cart.hpp"
#include "shapemetrics/types.hpp"

namespace oracle {

using shapemetrics::Point;

struct Circle {
  double cx = 0.0, cy = 0.0, r = 0.0;
};

inline bool covers(const Circle& c, const std::vector<Point>& pts) {
  for (const Point& p : pts)
    if (std::sqrt((p.x - c.cx) * (p.x - c.cx) + (p.y - c.cy) * (p.y - c.cy)) > c.r + 1e-7) return false;
  return true;
}

/// O(n^4): every pair diameter and every non-collinear triple circumcircle.
inline Circle min_enclosing_circle(const std::vector<Point>& pts) {
  Circle best{pts[0].x, pts[0].y, std::numeric_limits<double>::infinity()};
  const bool all_same = std::all_of(pts.begin(), pts.end(), [&](const Point& p) { return p == pts[0]; });
  if (all_same) return {pts[0].x, pts[0].y, 0.0};
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point &a = pts[i], &b = pts[j];
      Circle c{(a.x + b.x) / 2, (a.y + b.y) / 2, std::hypot(a.x - b.x, a.y - b.y) / 2};
      if (c.r < best.r && covers(c, pts)) best = c;
      for (std::size_t k = j + 1; k < n; ++k) {
        const Point& p = pts[k];
        // Perpendicular bisectors of ab and ac: solve 2x2 system.
        const double a11 = 2 * (b.x - a.x), a12 = 2 * (b.y - a.y);
        const double a21 = 2 * (p.x - a.x), a22 = 2 * (p.y - a.y);
        const double r1 = b.x * b.x - a.x * a.x + b.y * b.y - a.y * a.y;
        const double r2 = p.x * p.x - a.x * a.x + p.y * p.y - a.y * a.y;
        const double det = a11 * a22 - a12 * a21;
        if (std::abs(det) < 1e-9) continue;
        const double cx = (r1 * a22 - r2 * a12) / det;
        const double cy = (a11 * r2 - a21 * r1) / det;
        Circle t{cx, cy, std::hypot(a.x - cx, a.y - cy)};
        if (t.r < best.r && covers(t, pts)) best = t;
      }
    }
  return best;
}

/// Number of distinct occupied cells, binning by floor((v - lo) * bins / extent).
inline std::size_t occupied_bins(const std::vector<Point>& pts, int bins_x, int bins_y) {
  double xlo = pts[0].x, xhi = xlo, ylo = pts[0].y, yhi = ylo;
  for (const Point& p : pts) {
    xlo = std::min(xlo, p.x);
    xhi = std::max(xhi, p.x);
    ylo = std::min(ylo, p.y);
    yhi = std::max(yhi, p.y);
  }
  std::set<std::pair<long, long>> cells;
  for (const Point& p : pts) {
    long i = static_cast<long>(std::floor((p.x - xlo) * bins_x / (xhi - xlo)));
    long j = static_cast<long>(std::floor((p.y - ylo) * bins_y / (yhi - ylo)));
    cells.insert({std::min<long>(i, bins_x - 1), std::min<long>(j, bins_y - 1)});
  }
  return cells.size();
}

/// Exposed 4-neighbour edges of every white pixel.
inline int crack_perimeter(const shapemetrics::BinaryImage& img) {
  const long w = static_cast<long>(img.width()), h = static_cast<long>(img.height());
  const auto white = [&](long c, long r) {
    return c >= 0 && r >= 0 && c < w && r < h && img.at(static_cast<std::size_t>(c), static_cast<std::size_t>(r));
  };
  int edges = 0;
  for (long r = 0; r < h; ++r)
    for (long c = 0; c < w; ++c)
      if (white(c, r)) edges += !white(c - 1, r) + !white(c + 1, r) + !white(c, r - 1) + !white(c, r + 1);
  return edges;
}

/// Two-pass population covariance of white pixel indices.
struct Cov {
  double xx = 0, xy = 0, yy = 0;
};
inline Cov pixel_covariance(const shapemetrics::BinaryImage& img) {
  std::vector<Point> px;
  for (std::size_t r = 0; r < img.height(); ++r)
    for (std::size_t c = 0; c < img.width(); ++c)
      if (img.at(c, r)) px.push_back({double(c), double(r)});
  double mx = 0, my = 0;
  for (const Point& p : px) {
    mx += p.x;
    my += p.y;
  }
  mx /= px.size();
  my /= px.size();
  Cov cov;
  for (const Point& p : px) {
    cov.xx += (p.x - mx) * (p.x - mx);
    cov.xy += (p.x - mx) * (p.y - my);
    cov.yy += (p.y - my) * (p.y - my);
  }
  cov.xx /= px.size();
  cov.xy /= px.size();
  cov.yy /= px.size();
  return cov;
}

struct RootSplit {
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
};

inline double gini(const std::vector<int>& counts, int n) {
  if (n == 0) return 0.0;
  double s = 1.0;
  for (int c : counts) s -= (double(c) / n) * (double(c) / n);
  return s;
}

/// Exhaustive search over every feature and every midpoint between
/// consecutive distinct values. Gain = Gini(parent) - weighted child Gini.
inline std::optional<RootSplit> best_root_split(const shapemetrics::LabeledDataset& d, int min_leaf) {
  const int n = static_cast<int>(d.size());
  const int k = d.class_count();
  std::vector<int> total(k, 0);
  for (int l : d.labels) ++total[l];
  const double parent = gini(total, n);
  std::optional<RootSplit> best;
  double best_gain = 1e-12;
  for (int f = 0; f < 7; ++f) {
    std::vector<double> values;
    for (const auto& row : d.features) values.push_back(row[f]);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t u = 0; u + 1 < values.size(); ++u) {
      const double thr = (values[u] + values[u + 1]) / 2;
      std::vector<int> lc(k, 0), rc(k, 0);
      int nl = 0, nr = 0;
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (d.features[i][f] < thr) {
          ++lc[d.labels[i]];
          ++nl;
        } else {
          ++rc[d.labels[i]];
          ++nr;
        }
      }
      if (nl < min_leaf || nr < min_leaf) continue;
      const double gain = parent - (double(nl) / n) * gini(lc, nl) - (double(nr) / n) * gini(rc, nr);
      if (gain > best_gain + 1e-12) {
        best_gain = gain;
        best = RootSplit{f, thr, gain};
      }
    }
  }
  return best;
}

/// log of the binomial pmf.
inline double log_pmf(int k, int n, double p) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * std::log(p) +
         (n - k) * std::log1p(-p);
}

/// P(X >= s) for X ~ Bin(n, p).
inline double upper_tail(int s, int n, double p) {
  double t = 0.0;
  for (int k = s; k <= n; ++k) t += std::exp(log_pmf(k, n, p));
  return t;
}

/// P(X <= s) for X ~ Bin(n, p).
inline double lower_tail(int s, int n, double p) {
  double t = 0.0;
  for (int k = 0; k <= s; ++k) t += std::exp(log_pmf(k, n, p));
  return t;
}

}  // namespace oracle
