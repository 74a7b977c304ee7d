#pragma once

#include <vector>

namespace urllc {

/// Objective values over a one-dimensional parameter grid and the chosen argmax.
struct GridOptimum {
  double best = 0.0;
  std::vector<double> grid;
  std::vector<double> objective;
};

}  // namespace urllc
