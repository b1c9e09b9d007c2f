// Independent reference implementations used only by tests. Each oracle is
// built by a different construction than the library path it checks: the
// convolution oracle scatters into the full-size result and crops, the ROC
// oracle rescans the whole map per threshold, the AUC oracle integrates by
// Gauss-Legendre quadrature, and the bridge oracle flood-fills coordinates
// on the 3x3 grid.
#pragma once

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "edgebench/eval.hpp"
#include "edgebench/image.hpp"

namespace oracles {

using edgebench::BinaryEdgeMap;
using edgebench::GrayImage;
using edgebench::Kernel;
using edgebench::ScoreMap;

// Full convolution accumulated naively, then cropped to the central block
// starting at floor(kernel/2) per axis.
inline GrayImage conv2_same(const GrayImage& img, const Kernel& k) {
  const int fr = img.rows() + k.rows() - 1;
  const int fc = img.cols() + k.cols() - 1;
  std::vector<double> full(static_cast<std::size_t>(fr) * fc, 0.0);
  for (int ir = 0; ir < img.rows(); ++ir)
    for (int ic = 0; ic < img.cols(); ++ic)
      for (int kr = 0; kr < k.rows(); ++kr)
        for (int kc = 0; kc < k.cols(); ++kc)
          full[static_cast<std::size_t>(ir + kr) * fc + (ic + kc)] +=
              img(ir, ic) * k(kr, kc);

  const int off_r = k.rows() / 2;
  const int off_c = k.cols() / 2;
  GrayImage out(img.rows(), img.cols());
  for (int r = 0; r < img.rows(); ++r)
    for (int c = 0; c < img.cols(); ++c)
      out(r, c) = full[static_cast<std::size_t>(r + off_r) * fc + (c + off_c)];
  return out;
}

// Normalized Gaussian evaluated directly on the 2D grid (no outer product).
inline Kernel gaussian_grid(double sigma, int stepsize) {
  const int side = 2 * stepsize + 1;
  Kernel k(side, side);
  double total = 0.0;
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c) {
      const double y = r - stepsize, x = c - stepsize;
      k(r, c) = std::exp(-(x * x + y * y) / (2.0 * sigma * sigma));
      total += k(r, c);
    }
  for (auto& w : k.data()) w /= total;
  return k;
}

// First-derivative-of-Gaussian sampled analytically: -x * exp(...) over the
// raw (unnormalized) grid sum.
inline Kernel gaussian_derivative_x(double sigma, int stepsize) {
  const int side = 2 * stepsize + 1;
  double total = 0.0;
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c) {
      const double y = r - stepsize, x = c - stepsize;
      total += std::exp(-(x * x + y * y) / (2.0 * sigma * sigma));
    }
  Kernel k(side, side);
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c) {
      const double y = r - stepsize, x = c - stepsize;
      k(r, c) = -x / (sigma * sigma) *
                std::exp(-(x * x + y * y) / (2.0 * sigma * sigma)) / total;
    }
  return k;
}

struct RocOraclePoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

// Threshold enumeration with a full rescan per threshold.
inline std::vector<RocOraclePoint> roc_points(const ScoreMap& s,
                                              const BinaryEdgeMap& gt) {
  std::set<double, std::greater<double>> thresholds(s.data().begin(),
                                                    s.data().end());
  std::int64_t pos = 0, neg = 0;
  for (auto b : gt.data()) b ? ++pos : ++neg;

  std::vector<RocOraclePoint> points;
  points.push_back({0.0, 0.0});

  std::vector<double> sweep;
  sweep.push_back(*thresholds.begin() + 1.0);  // sentinel above max
  sweep.insert(sweep.end(), thresholds.begin(), thresholds.end());
  for (double t : sweep) {
    std::int64_t tp = 0, fp = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s.data()[i] >= t) gt.data()[i] ? ++tp : ++fp;
    }
    points.push_back({static_cast<double>(fp) / neg,
                      static_cast<double>(tp) / pos});
  }
  points.push_back({1.0, 1.0});
  return points;
}

inline double roc_auc(const ScoreMap& s, const BinaryEdgeMap& gt) {
  const auto pts = roc_points(s, gt);
  double area = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    area += (pts[i].fpr - pts[i - 1].fpr) * (pts[i].tpr + pts[i - 1].tpr) *
            0.5;
  return area;
}

// Integrates the piecewise-linear curve segment by segment with two-point
// Gauss-Legendre quadrature (exact for linear integrands).
inline double trapezoid_by_quadrature(
    const std::vector<edgebench::RocPoint>& pts) {
  const double node = 1.0 / std::sqrt(3.0);
  double area = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double x1 = pts[i - 1].fpr, x2 = pts[i].fpr;
    const double y1 = pts[i - 1].tpr, y2 = pts[i].tpr;
    const double half = (x2 - x1) / 2.0, mid = (x1 + x2) / 2.0;
    auto y_at = [&](double x) {
      return x2 == x1 ? (y1 + y2) / 2.0
                      : y1 + (y2 - y1) * (x - x1) / (x2 - x1);
    };
    area += half * (y_at(mid - half * node) + y_at(mid + half * node));
  }
  return area;
}

// Number of 8-connected components among the 8 neighbors of a 3x3 center,
// flood-filled over grid coordinates.
inline int ring_components(unsigned pattern) {
  bool cell[3][3] = {};
  int bit = 0;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      if (r == 1 && c == 1) continue;
      cell[r][c] = (pattern >> bit++) & 1u;
    }

  bool seen[3][3] = {};
  int components = 0;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      if (!cell[r][c] || seen[r][c]) continue;
      ++components;
      std::vector<std::pair<int, int>> stack{{r, c}};
      seen[r][c] = true;
      while (!stack.empty()) {
        auto [cr, cc] = stack.back();
        stack.pop_back();
        for (int dr = -1; dr <= 1; ++dr)
          for (int dc = -1; dc <= 1; ++dc) {
            const int nr = cr + dr, nc = cc + dc;
            if (nr < 0 || nr > 2 || nc < 0 || nc > 2) continue;
            if (nr == 1 && nc == 1) continue;  // center never joins
            if (cell[nr][nc] && !seen[nr][nc]) {
              seen[nr][nc] = true;
              stack.emplace_back(nr, nc);
            }
          }
      }
    }
  }
  return components;
}

}  // namespace oracles
