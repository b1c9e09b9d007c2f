#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "edgebench/image.hpp"

namespace testutil {

using edgebench::BinaryEdgeMap;
using edgebench::GrayImage;
using edgebench::Kernel;
using edgebench::ScoreMap;

inline std::filesystem::path fixture_dir() {
  return std::filesystem::path(EDGEBENCH_FIXTURE_DIR);
}

inline std::filesystem::path fixture(const std::string& name) {
  return fixture_dir() / name;
}

inline GrayImage random_image(std::mt19937& rng, int rows, int cols,
                              double lo = -255.0, double hi = 255.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  GrayImage img(rows, cols);
  for (auto& v : img.data()) v = dist(rng);
  return img;
}

inline Kernel random_kernel(std::mt19937& rng, int rows, int cols) {
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  Kernel k(rows, cols);
  for (auto& v : k.data()) v = dist(rng);
  return k;
}

// Scores drawn from a small integer set so ties across pixels are common.
inline ScoreMap random_scores(std::mt19937& rng, int rows, int cols,
                              int distinct_values = 12) {
  std::uniform_int_distribution<int> dist(0, distinct_values - 1);
  ScoreMap s(rows, cols);
  for (auto& v : s.data()) v = static_cast<double>(dist(rng)) * 2.5;
  return s;
}

// Bernoulli ground truth, re-rolled until both classes are present.
inline BinaryEdgeMap random_ground_truth(std::mt19937& rng, int rows,
                                         int cols, double p_edge = 0.3) {
  std::bernoulli_distribution dist(p_edge);
  BinaryEdgeMap gt(rows, cols);
  for (;;) {
    int ones = 0;
    for (auto& b : gt.data()) {
      b = dist(rng) ? 1 : 0;
      ones += b;
    }
    if (ones > 0 && ones < static_cast<int>(gt.size())) return gt;
  }
}

}  // namespace testutil
