// Image and kernel containers plus the pixel-level primitives every
// detector builds on: MATLAB-compatible 'same' convolution, L1 gradient
// magnitude, grayscale conversion and global thresholding.
#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace edgebench {

// Row-major 2D grid. Images, score maps and kernels all use this shape;
// the aliases below name the role a grid plays in a given signature.
template <typename T>
class Grid {
 public:
  Grid() = default;

  Grid(int rows, int cols, T fill = T{})
      : rows_(rows),
        cols_(cols),
        data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
              fill) {
    if (rows <= 0 || cols <= 0)
      throw std::invalid_argument("Grid: dimensions must be positive");
  }

  static Grid from_rows(std::initializer_list<std::initializer_list<T>> rows) {
    if (rows.size() == 0 || rows.begin()->size() == 0)
      throw std::invalid_argument("Grid::from_rows: empty initializer");
    Grid g(static_cast<int>(rows.size()),
           static_cast<int>(rows.begin()->size()));
    int r = 0;
    for (const auto& row : rows) {
      if (row.size() != static_cast<std::size_t>(g.cols_))
        throw std::invalid_argument("Grid::from_rows: ragged rows");
      int c = 0;
      for (const T& v : row) g(r, c++) = v;
      ++r;
    }
    return g;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  std::size_t size() const { return data_.size(); }

  bool in_bounds(int r, int c) const {
    return r >= 0 && r < rows_ && c >= 0 && c < cols_;
  }

  T& operator()(int r, int c) {
    assert(in_bounds(r, c));
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  const T& operator()(int r, int c) const {
    assert(in_bounds(r, c));
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }

  // Zero-padded read: out-of-bounds coordinates yield `outside`.
  T at_or(int r, int c, T outside) const {
    return in_bounds(r, c) ? (*this)(r, c) : outside;
  }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  template <typename U>
  bool same_size(const Grid<U>& other) const {
    return rows_ == other.rows() && cols_ == other.cols();
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

// Pixels are real-valued on the 0..255 scale when freshly loaded; filter
// responses (gradients, Laplacian output) ride in the same type and may be
// negative or exceed 255.
using GrayImage = Grid<double>;

// Per-pixel non-negative edge strength.
using ScoreMap = Grid<double>;

// Small convolution mask, applied flipped (true convolution).
using Kernel = Grid<double>;

// Per-pixel edge decision; nonzero means edge.
using BinaryEdgeMap = Grid<std::uint8_t>;

// True 2D convolution (kernel flipped in both axes) with zero padding,
// cropped to the input size exactly like conv2(A, K, 'same'): the output
// is the central block of the full convolution, offset floor(k/2) per axis.
inline GrayImage convolve_same(const GrayImage& img, const Kernel& k) {
  if (img.empty()) throw std::invalid_argument("convolve_same: empty image");
  if (k.empty()) throw std::invalid_argument("convolve_same: empty kernel");

  const int rows = img.rows(), cols = img.cols();
  const int kr = k.rows(), kc = k.cols();
  const int off_r = kr / 2, off_c = kc / 2;

  GrayImage out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (int i = 0; i < kr; ++i) {
        const int sr = r + off_r - i;
        if (sr < 0 || sr >= rows) continue;
        for (int j = 0; j < kc; ++j) {
          const int sc = c + off_c - j;
          if (sc < 0 || sc >= cols) continue;
          acc += k(i, j) * img(sr, sc);
        }
      }
      out(r, c) = acc;
    }
  }
  return out;
}

// L1 gradient magnitude: |gx| + |gy| per pixel.
inline ScoreMap magnitude(const GrayImage& gx, const GrayImage& gy) {
  if (!gx.same_size(gy))
    throw std::invalid_argument("magnitude: dimension mismatch");
  ScoreMap m(gx.rows(), gx.cols());
  for (std::size_t i = 0; i < m.size(); ++i)
    m.data()[i] = std::abs(gx.data()[i]) + std::abs(gy.data()[i]);
  return m;
}

// Rec.601 luma; stays on the 0..255 scale.
inline GrayImage to_grayscale(const GrayImage& r, const GrayImage& g,
                              const GrayImage& b) {
  if (!r.same_size(g) || !r.same_size(b))
    throw std::invalid_argument("to_grayscale: dimension mismatch");
  GrayImage out(r.rows(), r.cols());
  for (std::size_t i = 0; i < out.size(); ++i)
    out.data()[i] =
        0.299 * r.data()[i] + 0.587 * g.data()[i] + 0.114 * b.data()[i];
  return out;
}

// Edge iff score >= t. Equality counts as edge so that sweeping the exact
// score multiset reaches every attainable confusion matrix.
inline BinaryEdgeMap threshold(const ScoreMap& s, double t) {
  if (!std::isfinite(t))
    throw std::invalid_argument("threshold: non-finite threshold");
  BinaryEdgeMap b(s.rows(), s.cols());
  for (std::size_t i = 0; i < s.size(); ++i)
    b.data()[i] = s.data()[i] >= t ? 1 : 0;
  return b;
}

}  // namespace edgebench
