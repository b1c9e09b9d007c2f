// The six detection pipelines. Roberts/Sobel/first-order-Gaussian reduce to
// gradient_score; Laplacian and LoG get both a sign-change view
// (zero_cross_*) and a Sobel-magnitude view (laplacian_sobel_score); Canny
// is built from scratch so non-maximum suppression can be switched off.
#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "edgebench/image.hpp"
#include "edgebench/kernels.hpp"

namespace edgebench {

struct GradientField {
  ScoreMap mag;
  Grid<double> dir;  // atan2(gy, gx), radians in (-pi, pi]
  double max_magnitude = 0.0;
};

struct CannyParams {
  GaussianParams gauss{1.0, 4};
  double low_threshold = 10.0;
  double high_threshold = 20.0;
  bool nms_enabled = true;
};

struct CannyResult {
  BinaryEdgeMap edges;
  double max_magnitude = 0.0;  // of the raw (pre-suppression) gradient
};

// Convolve with both kernels of a derivative pair and take |gx| + |gy|.
inline ScoreMap gradient_score(const GrayImage& img,
                               const std::pair<Kernel, Kernel>& pair) {
  return magnitude(convolve_same(img, pair.first),
                   convolve_same(img, pair.second));
}

// Sign-change detector that keeps the pixel's absolute intensity so the
// result can be swept over thresholds. A pixel scores |value| when it is
// strictly positive (negative) and any of the three neighbors below/right
// (i+1,j), (i+1,j+1), (i,j+1) has the opposite strict sign. The last row
// and last column are never assigned; pixels exactly 0 never score.
inline ScoreMap zero_cross_intensity(const GrayImage& img) {
  const int rows = img.rows(), cols = img.cols();
  ScoreMap out(rows, cols, 0.0);
  for (int i = 0; i + 1 < rows; ++i) {
    for (int j = 0; j + 1 < cols; ++j) {
      const double v = img(i, j);
      if (v > 0.0) {
        if (img(i + 1, j) < 0.0 || img(i + 1, j + 1) < 0.0 ||
            img(i, j + 1) < 0.0)
          out(i, j) = v;
      } else if (v < 0.0) {
        if (img(i + 1, j) > 0.0 || img(i + 1, j + 1) > 0.0 ||
            img(i, j + 1) > 0.0)
          out(i, j) = -v;
      }
    }
  }
  return out;
}

// Binary view of the detector above; stands in for a built-in 'zerocross'
// edge call when only an on/off map is wanted.
inline BinaryEdgeMap zero_cross_binary(const GrayImage& img) {
  const ScoreMap s = zero_cross_intensity(img);
  BinaryEdgeMap b(s.rows(), s.cols());
  for (std::size_t i = 0; i < s.size(); ++i)
    b.data()[i] = s.data()[i] > 0.0 ? 1 : 0;
  return b;
}

// Second-derivative filter followed by Sobel magnitude; `lap` is either the
// plain Laplacian or a LoG mask.
inline ScoreMap laplacian_sobel_score(const GrayImage& img, const Kernel& lap) {
  return gradient_score(convolve_same(img, lap), sobel_pair());
}

// Gaussian smoothing, Sobel gradients, L1 magnitude plus direction.
inline GradientField canny_gradient(const GrayImage& img, const Kernel& g) {
  const GrayImage smoothed = convolve_same(img, g);
  const auto [sx, sy] = sobel_pair();
  const GrayImage gx = convolve_same(smoothed, sx);
  const GrayImage gy = convolve_same(smoothed, sy);

  GradientField f{magnitude(gx, gy), Grid<double>(img.rows(), img.cols()),
                  0.0};
  for (std::size_t i = 0; i < f.dir.size(); ++i) {
    f.dir.data()[i] = std::atan2(gy.data()[i], gx.data()[i]);
    f.max_magnitude = std::max(f.max_magnitude, f.mag.data()[i]);
  }
  return f;
}

// Directional thinning over four angle bins. Directions are mapped to
// degrees in [0, 180): negatives get +180, and exactly 180 (atan2 == pi)
// folds to 0 so the horizontal bin covers it. A pixel survives iff its
// magnitude is >= both neighbors along the binned direction; the one-pixel
// boundary ring is always zero.
inline ScoreMap non_max_suppression(const GradientField& f) {
  if (!f.mag.same_size(f.dir))
    throw std::invalid_argument("non_max_suppression: field size mismatch");
  const int rows = f.mag.rows(), cols = f.mag.cols();
  ScoreMap out(rows, cols, 0.0);

  constexpr double rad_to_deg = 180.0 / std::numbers::pi;
  for (int i = 1; i + 1 < rows; ++i) {
    for (int j = 1; j + 1 < cols; ++j) {
      double deg = f.dir(i, j) * rad_to_deg;
      if (deg < 0.0) deg += 180.0;
      if (deg >= 180.0) deg = 0.0;

      double q, r;
      if (deg < 22.5 || deg >= 157.5) {
        q = f.mag(i, j + 1);
        r = f.mag(i, j - 1);
      } else if (deg < 67.5) {
        q = f.mag(i + 1, j - 1);
        r = f.mag(i - 1, j + 1);
      } else if (deg < 112.5) {
        q = f.mag(i + 1, j);
        r = f.mag(i - 1, j);
      } else {
        q = f.mag(i - 1, j - 1);
        r = f.mag(i + 1, j + 1);
      }

      const double m = f.mag(i, j);
      if (m >= q && m >= r) out(i, j) = m;
    }
  }
  return out;
}

namespace detail {

// Neighbor bit layout around a pixel:
//   0 1 2
//   3 . 4
//   5 6 7
inline int ring_component_count(unsigned pattern) {
  static constexpr std::array<std::pair<int, int>, 8> offs = {
      {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1}}};
  bool seen[8] = {};
  int components = 0;
  for (int start = 0; start < 8; ++start) {
    if (!(pattern & (1u << start)) || seen[start]) continue;
    ++components;
    int stack[8];
    int top = 0;
    stack[top++] = start;
    seen[start] = true;
    while (top > 0) {
      const int cur = stack[--top];
      for (int next = 0; next < 8; ++next) {
        if (!(pattern & (1u << next)) || seen[next]) continue;
        const int dr = offs[cur].first - offs[next].first;
        const int dc = offs[cur].second - offs[next].second;
        if (dr >= -1 && dr <= 1 && dc >= -1 && dc <= 1) {
          seen[next] = true;
          stack[top++] = next;
        }
      }
    }
  }
  return components;
}

// bridge rule per neighbor pattern: set a 0-pixel iff its set neighbors
// fall in two or more 8-connected components within the 3x3 ring.
inline const std::array<bool, 256>& bridge_lut() {
  static const std::array<bool, 256> lut = [] {
    std::array<bool, 256> t{};
    for (unsigned p = 0; p < 256; ++p)
      t[p] = ring_component_count(p) >= 2;
    return t;
  }();
  return lut;
}

}  // namespace detail

// Morphological bridge: 1-pixels stay 1; a 0-pixel becomes 1 iff it
// connects otherwise-disconnected neighbors. Neighbors outside the map
// count as 0.
inline BinaryEdgeMap bridge(const BinaryEdgeMap& b) {
  const int rows = b.rows(), cols = b.cols();
  const auto& lut = detail::bridge_lut();
  BinaryEdgeMap out(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (b(i, j)) {
        out(i, j) = 1;
        continue;
      }
      unsigned pattern = 0;
      int bit = 0;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          if (b.at_or(i + dr, j + dc, 0)) pattern |= 1u << bit;
          ++bit;
        }
      }
      out(i, j) = lut[pattern] ? 1 : 0;
    }
  }
  return out;
}

// Two-threshold decision: strong = score > high, weak = score > low (both
// strict), edges = bridge(strong) AND weak.
inline BinaryEdgeMap hysteresis(const ScoreMap& s, double low, double high) {
  if (low > high)
    throw std::invalid_argument("hysteresis: low threshold exceeds high");
  const int rows = s.rows(), cols = s.cols();
  BinaryEdgeMap strong(rows, cols), weak(rows, cols);
  for (std::size_t i = 0; i < s.size(); ++i) {
    strong.data()[i] = s.data()[i] > high ? 1 : 0;
    weak.data()[i] = s.data()[i] > low ? 1 : 0;
  }
  const BinaryEdgeMap bridged = bridge(strong);
  BinaryEdgeMap edges(rows, cols);
  for (std::size_t i = 0; i < edges.size(); ++i)
    edges.data()[i] = (bridged.data()[i] && weak.data()[i]) ? 1 : 0;
  return edges;
}

// Full pipeline: smooth+gradient, optional non-maximum suppression,
// hysteresis. max_magnitude is always taken before suppression so a
// threshold sweep covers the same range with and without NMS.
inline CannyResult canny(const GrayImage& img, const CannyParams& p) {
  if (p.low_threshold > p.high_threshold)
    throw std::invalid_argument("canny: low threshold exceeds high");
  GradientField f = canny_gradient(img, gaussian_kernel(p.gauss));
  const ScoreMap base =
      p.nms_enabled ? non_max_suppression(f) : std::move(f.mag);
  return {hysteresis(base, p.low_threshold, p.high_threshold),
          f.max_magnitude};
}

}  // namespace edgebench
