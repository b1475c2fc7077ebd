#pragma once

#include <vector>

#include "nevanlab/exp_poly.hpp"
#include "nevanlab/poly.hpp"

namespace nevanlab {

/// [f_0 : ... : f_n] with exponential-sum components, reduced on |z| <= radius.
class ProjectiveCurve {
 public:
  enum class Check { reduced, skip };

  // Throws std::invalid_argument if fewer than two components, all are zero,
  // radius <= 0, some amplitude degree exceeds kMaxAmplitudeDegree, or (with
  // Check::reduced) the components share a zero in the working disk.
  ProjectiveCurve(std::vector<ExpPolySum> components, double radius, Check check = Check::reduced);

  const std::vector<ExpPolySum>& components() const { return components_; }
  int dimension() const { return static_cast<int>(components_.size()) - 1; }
  double radius() const { return radius_; }
  // Every component is a polynomial.
  bool is_rational() const;
  // Every ratio f_i/f_j is constant.
  bool is_constant() const;

 private:
  std::vector<ExpPolySum> components_;
  double radius_;
};

/// log max_i |f_i(z)|, computed from scaled values. Throws nevanlab::Error
/// when every component vanishes at z.
double log_max_norm(const ProjectiveCurve& f, Complex z);

/// P(f_0, ..., f_n) in canonical form.
ExpPolySum compose_with_curve(const HomogeneousPolynomial& p, const ProjectiveCurve& f);
ExpPolySum compose_with_curve(const HomogeneousPolynomial& p, const std::vector<ExpPolySum>& f);

}  // namespace nevanlab
