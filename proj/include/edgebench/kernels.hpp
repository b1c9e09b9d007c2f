// Constructors for every named filter mask: Roberts and Sobel pairs,
// normalized Gaussian, first-derivative-of-Gaussian pair, the 4-neighbor
// Laplacian, and the Laplacian-of-Gaussian built by kernel convolution.
#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "edgebench/image.hpp"

namespace edgebench {

// sigma is the Gaussian standard deviation in pixels; stepsize is the mask
// half-width, so the mask side is 2*stepsize + 1 (stepsize 6 -> 13x13).
struct GaussianParams {
  double sigma = 2.0;
  int stepsize = 6;
};

inline void validate(const GaussianParams& p) {
  if (!(p.sigma > 0.0))
    throw std::invalid_argument("GaussianParams: sigma must be positive");
  if (p.stepsize < 1)
    throw std::invalid_argument("GaussianParams: stepsize must be >= 1");
}

inline std::pair<Kernel, Kernel> roberts_pair() {
  return {Kernel::from_rows({{1, 0}, {0, -1}}),
          Kernel::from_rows({{0, 1}, {-1, 0}})};
}

// Gy is the transpose of Gx with positive weights on the bottom row
// (positive downward gradient).
inline std::pair<Kernel, Kernel> sobel_pair() {
  return {Kernel::from_rows({{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}}),
          Kernel::from_rows({{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}})};
}

// 1D pdf samples at integer offsets -stepsize..stepsize, outer product,
// then the 2D mask is normalized to sum 1 so smoothed images keep the
// 0..255 scale.
inline Kernel gaussian_kernel(const GaussianParams& p) {
  validate(p);
  const int s = p.stepsize;
  const int side = 2 * s + 1;
  const double inv_two_sigma_sq = 1.0 / (2.0 * p.sigma * p.sigma);
  const double norm = 1.0 / (p.sigma * std::sqrt(2.0 * std::numbers::pi));

  std::vector<double> pdf(side);
  for (int i = 0; i < side; ++i) {
    const double x = static_cast<double>(i - s);
    pdf[i] = norm * std::exp(-x * x * inv_two_sigma_sq);
  }

  Kernel k(side, side);
  double total = 0.0;
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c) {
      k(r, c) = pdf[r] * pdf[c];
      total += k(r, c);
    }
  for (double& w : k.data()) w /= total;
  return k;
}

// Kx(x, y) = -x / sigma^2 * G(x, y) on the normalized Gaussian samples;
// Ky is the same construction with -y / sigma^2. Both masks sum to 0.
inline std::pair<Kernel, Kernel> gaussian_derivative_pair(
    const GaussianParams& p) {
  const Kernel g = gaussian_kernel(p);
  const int s = p.stepsize;
  const int side = 2 * s + 1;
  const double inv_sigma_sq = 1.0 / (p.sigma * p.sigma);

  Kernel kx(side, side), ky(side, side);
  for (int r = 0; r < side; ++r) {
    const double y = static_cast<double>(r - s);
    for (int c = 0; c < side; ++c) {
      const double x = static_cast<double>(c - s);
      kx(r, c) = -x * inv_sigma_sq * g(r, c);
      ky(r, c) = -y * inv_sigma_sq * g(r, c);
    }
  }
  return {kx, ky};
}

inline Kernel laplacian_kernel() {
  return Kernel::from_rows({{0, 1, 0}, {1, -4, 1}, {0, 1, 0}});
}

namespace detail {

// Full (uncropped) kernel-kernel convolution; output side grows by the
// other kernel's side minus one.
inline Kernel convolve_full(const Kernel& a, const Kernel& b) {
  Kernel out(a.rows() + b.rows() - 1, a.cols() + b.cols() - 1, 0.0);
  for (int ar = 0; ar < a.rows(); ++ar)
    for (int ac = 0; ac < a.cols(); ++ac)
      for (int br = 0; br < b.rows(); ++br)
        for (int bc = 0; bc < b.cols(); ++bc)
          out(ar + br, ac + bc) += a(ar, ac) * b(br, bc);
  return out;
}

}  // namespace detail

// Laplacian combined with the Gaussian as one mask: the full convolution of
// the two kernels, (2*stepsize + 3) on a side. Sums to 0 because the
// Laplacian does.
inline Kernel log_kernel(const GaussianParams& p) {
  validate(p);
  return detail::convolve_full(laplacian_kernel(), gaussian_kernel(p));
}

}  // namespace edgebench
