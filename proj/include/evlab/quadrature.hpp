#pragma once

#include <vector>

namespace evlab {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule; nodes from Newton iteration on P_n.
const GaussRule& gauss_legendre(int n);

}  // namespace evlab
