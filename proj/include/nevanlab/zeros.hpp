#pragma once

#include <optional>
#include <vector>

#include "nevanlab/exp_poly.hpp"

namespace nevanlab {

struct DivisorPoint {
  Complex location;
  int multiplicity = 1;
};

/// Distinct points (separation > 1e-8) with positive multiplicities, sorted
/// by (real, imag).
using DivisorOnC = std::vector<DivisorPoint>;

inline constexpr int kMaxProbeMultiplicity = 12;

struct DiskZeros {
  DivisorOnC divisor;
  // The circle actually used, r' in [r, r(1 + 1e-3)].
  double contour_radius = 0.0;
  // Argument-principle count on that circle; equals the multiplicity total.
  int winding = 0;
};

/// Zeros of h in |z| < r' with multiplicities.
/// Throws std::invalid_argument for h == 0 or r <= 0, MultiplicityCapExceeded
/// for a cluster above kMaxProbeMultiplicity, ZeroFindingError when no
/// perturbed contour gives consistent winding numbers.
DiskZeros find_zeros(const ExpPolySum& h, double r);
DivisorOnC zeros_in_disk(const ExpPolySum& h, double r);

/// Winding number of h around the circle, or nullopt when the adaptive phase
/// tracking cannot resolve the contour (a zero on or extremely near it).
std::optional<int> circle_winding(const ExpPolySum& h, Complex center, double radius);

int total_multiplicity(const DivisorOnC& e);

}  // namespace nevanlab
