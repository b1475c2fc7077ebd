#pragma once

// Random exponential-sum tuples and an all-pairs ratio-testing partition.

#include <cmath>
#include <random>
#include <vector>

#include "nevanlab/exp_poly.hpp"

namespace oracle {

using nevanlab::Complex;
using nevanlab::ExpPolySum;
using nevanlab::UniPoly;
using nevanlab::evaluate;

inline std::vector<ExpPolySum> random_tuple(std::mt19937& rng) {
  std::uniform_int_distribution<int> size(2, 6), pick(0, 3), amp(0, 2), mult(-3, 3);
  const std::vector<UniPoly> pool{UniPoly(), UniPoly({0.0, 1.0}), UniPoly({0.0, Complex(0.0, 1.0)})};
  const std::vector<UniPoly> amps{UniPoly::constant(1.0), UniPoly({1.0, 1.0}), UniPoly({0.0, 0.0, 1.0})};
  std::vector<ExpPolySum> g(size(rng));
  for (auto& h : g) {
    const int k = pick(rng);
    if (k == 3) continue;  // zero component
    int c = mult(rng);
    if (c == 0) c = 1;
    h = ExpPolySum::exponential(pool[k], static_cast<double>(c) * amps[amp(rng)]);
  }
  return g;
}

// All-pairs brute force: i ~ j iff both nonzero and the sampled ratio
// g_i/g_j is the same at several random points.
inline std::vector<std::vector<int>> borel_classes(const std::vector<ExpPolySum>& g) {
  const int n = static_cast<int>(g.size());
  std::vector<Complex> pts{Complex(0.3, 0.1), Complex(-0.7, 0.4), Complex(0.2, -0.9), Complex(1.1, 0.5)};
  auto same = [&](int i, int j) {
    const Complex r0 = evaluate(g[i], pts[0]) / evaluate(g[j], pts[0]);
    for (const auto& z : pts)
      if (std::abs(evaluate(g[i], z) / evaluate(g[j], z) - r0) > 1e-9 * (1.0 + std::abs(r0))) return false;
    return true;
  };
  std::vector<std::vector<int>> classes(1);
  std::vector<int> label(n, -1);
  for (int i = 0; i < n; ++i) {
    if (g[i].is_zero()) {
      classes[0].push_back(i);
      continue;
    }
    for (int j = 0; j < i && label[i] < 0; ++j)
      if (label[j] > 0 && same(i, j)) label[i] = label[j];
    if (label[i] < 0) {
      label[i] = static_cast<int>(classes.size());
      classes.emplace_back();
    }
    classes[label[i]].push_back(i);
  }
  return classes;
}

}  // namespace oracle
