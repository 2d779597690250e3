#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "subgauss/params.hpp"

namespace grids {

// 200 off-diagonal pairs from a 15-point log grid on [0.1, 10]^2.
inline std::vector<subgauss::BetaParams> sandwich_pairs() {
  std::vector<double> axis;
  for (int i = 0; i < 15; ++i) axis.push_back(0.1 * std::pow(100.0, i / 14.0));
  std::vector<subgauss::BetaParams> out;
  for (double a : axis) {
    for (double b : axis) {
      if (a != b && out.size() < 200) out.emplace_back(a, b);
    }
  }
  return out;
}

// 50 pairs: every fourth of the sandwich grid.
inline std::vector<subgauss::BetaParams> oracle_pairs() {
  const auto all = sandwich_pairs();
  std::vector<subgauss::BetaParams> out;
  for (std::size_t i = 0; i < all.size(); i += 4) out.push_back(all[i]);
  return out;
}

}  // namespace grids
