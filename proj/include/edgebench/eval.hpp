// Pixel-level classifier evaluation: confusion counting, TPR/TNR/FPR,
// ROC construction by exact threshold sweep, trapezoidal AUC, the Canny
// low/high sweep and the LoG sigma/stepsize sweeps.
#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "edgebench/detectors.hpp"
#include "edgebench/image.hpp"
#include "edgebench/kernels.hpp"

namespace edgebench {

struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;
};

struct Rates {
  double tpr = 0.0;
  double tnr = 1.0;
  double fpr = 0.0;
};

struct RocPoint {
  double threshold = 0.0;
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // ascending FPR, ties by ascending TPR
  double auc = 0.0;
};

// Ground truth with no edge pixels (or no non-edge pixels) cannot anchor a
// ROC curve.
struct DegenerateGroundTruthError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline ConfusionCounts confusion(const BinaryEdgeMap& pred,
                                 const BinaryEdgeMap& gt) {
  if (!pred.same_size(gt))
    throw std::invalid_argument("confusion: dimension mismatch");
  ConfusionCounts c;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool p = pred.data()[i] != 0;
    const bool g = gt.data()[i] != 0;
    if (g)
      p ? ++c.tp : ++c.fn;
    else
      p ? ++c.fp : ++c.tn;
  }
  return c;
}

// tpr = tp/(tp+fn), tnr = tn/(tn+fp), fpr = 1 - tnr. Degenerate
// denominators resolve to tpr = 0 and tnr = 1 so the rates are total.
inline Rates rates(const ConfusionCounts& c) {
  Rates r;
  const std::int64_t pos = c.tp + c.fn;
  const std::int64_t neg = c.tn + c.fp;
  r.tpr = pos > 0 ? static_cast<double>(c.tp) / static_cast<double>(pos) : 0.0;
  r.tnr = neg > 0 ? static_cast<double>(c.tn) / static_cast<double>(neg) : 1.0;
  r.fpr = 1.0 - r.tnr;
  return r;
}

// Trapezoidal area over the FPR axis. Input must be sorted by ascending
// FPR; ties contribute zero width.
inline double trapezoid_auc(const std::vector<RocPoint>& points) {
  double area = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const RocPoint& a = points[i - 1];
    const RocPoint& b = points[i];
    if (b.fpr < a.fpr)
      throw std::invalid_argument("trapezoid_auc: points not sorted by FPR");
    area += (b.fpr - a.fpr) * (a.tpr + b.tpr) * 0.5;
  }
  return area;
}

// Exact threshold sweep: every distinct score value is a threshold
// (prediction rule: score >= t), plus a sentinel above the maximum. The
// curve is therefore the complete attainable (FPR, TPR) set, with (0,0)
// and (1,1) endpoints attached.
inline RocCurve roc_from_scores(const ScoreMap& s, const BinaryEdgeMap& gt) {
  if (!s.same_size(gt))
    throw std::invalid_argument("roc_from_scores: dimension mismatch");

  std::int64_t pos = 0;
  for (std::size_t i = 0; i < gt.size(); ++i) pos += gt.data()[i] ? 1 : 0;
  const std::int64_t neg = static_cast<std::int64_t>(gt.size()) - pos;
  if (pos == 0 || neg == 0)
    throw DegenerateGroundTruthError(
        "roc_from_scores: ground truth is all-edge or all-non-edge");

  std::vector<std::pair<double, std::uint8_t>> cells(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    cells[i] = {s.data()[i], gt.data()[i]};
  std::sort(cells.begin(), cells.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  RocCurve curve;
  curve.points.reserve(cells.size() + 3);
  constexpr double inf = std::numeric_limits<double>::infinity();
  curve.points.push_back({inf, 0.0, 0.0});
  curve.points.push_back({cells.front().first + 1.0, 0.0, 0.0});

  std::int64_t tp = 0, fp = 0;
  std::size_t i = 0;
  while (i < cells.size()) {
    const double t = cells[i].first;
    while (i < cells.size() && cells[i].first == t) {
      cells[i].second ? ++tp : ++fp;
      ++i;
    }
    curve.points.push_back({t, static_cast<double>(fp) / neg,
                            static_cast<double>(tp) / pos});
  }

  curve.points.push_back({-inf, 1.0, 1.0});
  curve.auc = trapezoid_auc(curve.points);
  return curve;
}

// Hysteresis-threshold sweep for Canny: numtrials low values evenly spaced
// over [0, maxmag/2] with high = 2*low, running only the trials whose high
// stays below maxmag. Skipped trials are omitted from the curve. The
// gradient field (and suppressed magnitude, when enabled) is computed once
// and shared by all trials.
inline RocCurve canny_roc(const GrayImage& img, const Kernel& g,
                          const BinaryEdgeMap& gt, int numtrials,
                          bool nms_enabled) {
  if (numtrials < 2)
    throw std::invalid_argument("canny_roc: numtrials must be >= 2");
  if (!img.same_size(gt))
    throw std::invalid_argument("canny_roc: dimension mismatch");

  GradientField f = canny_gradient(img, g);
  const double maxmag = f.max_magnitude;
  const ScoreMap base =
      nms_enabled ? non_max_suppression(f) : std::move(f.mag);

  const double half = maxmag / 2.0;
  RocCurve curve;
  for (int i = 0; i < numtrials; ++i) {
    const double low =
        i == numtrials - 1 ? half : half * i / (numtrials - 1);
    const double high = low * 2.0;
    if (!(high < maxmag)) continue;
    const Rates r = rates(confusion(hysteresis(base, low, high), gt));
    curve.points.push_back({low, r.fpr, r.tpr});
  }

  std::sort(curve.points.begin(), curve.points.end(),
            [](const RocPoint& a, const RocPoint& b) {
              return a.fpr != b.fpr ? a.fpr < b.fpr : a.tpr < b.tpr;
            });
  constexpr double inf = std::numeric_limits<double>::infinity();
  curve.points.insert(curve.points.begin(), {inf, 0.0, 0.0});
  curve.points.push_back({-inf, 1.0, 1.0});
  curve.auc = trapezoid_auc(curve.points);
  return curve;
}

// ROC per sigma for the LoG+Sobel magnitude construction at a fixed
// stepsize.
inline std::vector<std::pair<double, RocCurve>> sweep_log_sigma(
    const GrayImage& img, const BinaryEdgeMap& gt,
    const std::vector<double>& sigmas, int stepsize) {
  if (sigmas.empty())
    throw std::invalid_argument("sweep_log_sigma: empty sigma list");
  std::vector<std::pair<double, RocCurve>> out;
  out.reserve(sigmas.size());
  for (double sigma : sigmas) {
    const ScoreMap s =
        laplacian_sobel_score(img, log_kernel({sigma, stepsize}));
    out.emplace_back(sigma, roc_from_scores(s, gt));
  }
  return out;
}

// ROC per stepsize at a fixed sigma.
inline std::vector<std::pair<int, RocCurve>> sweep_log_stepsize(
    const GrayImage& img, const BinaryEdgeMap& gt, double sigma,
    const std::vector<int>& stepsizes) {
  if (stepsizes.empty())
    throw std::invalid_argument("sweep_log_stepsize: empty stepsize list");
  std::vector<std::pair<int, RocCurve>> out;
  out.reserve(stepsizes.size());
  for (int stepsize : stepsizes) {
    const ScoreMap s =
        laplacian_sobel_score(img, log_kernel({sigma, stepsize}));
    out.emplace_back(stepsize, roc_from_scores(s, gt));
  }
  return out;
}

}  // namespace edgebench
