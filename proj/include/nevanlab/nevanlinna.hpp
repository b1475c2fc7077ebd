#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "nevanlab/curve.hpp"
#include "nevanlab/poly.hpp"
#include "nevanlab/zeros.hpp"

namespace nevanlab {

inline constexpr int kInfiniteLevel = std::numeric_limits<int>::max();

/// (1/2π)∫ g(r e^{iθ}) dθ by trapezoid node doubling from 64 to 2^20 nodes,
/// stopping once successive estimates differ by < max(1e-7, 1e-7|I|).
/// Throws QuadratureError at the node cap.
double circle_average(const std::function<double(Complex)>& g, double r);

/// N^{[level]}(r, E) in closed form. Throws std::invalid_argument for r <= 1
/// or level < 1.
double truncated_counting(const DivisorOnC& e, double r, int level);

/// T_f(r) = (1/2π)∫ log ||f(r e^{iθ})||_max dθ.
double order_function(const ProjectiveCurve& f, double r);

/// N^{[level]}_f(r, D). Throws ImageInDivisor when D∘f ≡ 0.
double counting_function(const ProjectiveCurve& f, const HomogeneousPolynomial& d, double r, int level);

/// m_f(r, D). The radius is nudged outward by factors of (1 + 1e-5) while a
/// zero of D∘f lies within 1e-6 of the circle.
double proximity(const ProjectiveCurve& f, const HomogeneousPolynomial& d, double r);

/// proximity + N (untruncated) - deg(D)·T per grid point.
std::vector<double> fmt_residual(const ProjectiveCurve& f, const HomogeneousPolynomial& d,
                                 const std::vector<double>& r_grid);

/// 1 - max over the top quartile of the grid of N^{[level]}/(d T), clamped to
/// [0, 1]. Requires max(r_grid) >= 10; throws nevanlab::Error when T is below
/// 1e-9 at the largest radius.
double defect(const ProjectiveCurve& f, const HomogeneousPolynomial& d, int level,
              const std::vector<double>& r_grid);

struct NevanlinnaProfile {
  std::vector<double> r;  // radii actually used (after contour nudging)
  std::vector<double> T;
  std::vector<double> N_trunc;
  std::vector<double> N_full;
  std::vector<double> prox;
  std::vector<double> residual;
  int level = kInfiniteLevel;
  int degree = 0;
  std::string curve_id;
  std::string divisor_id;
};

NevanlinnaProfile compute_profile(const ProjectiveCurve& f, const HomogeneousPolynomial& d, int level,
                                  const std::vector<double>& r_grid, int jobs = 0);

std::vector<double> order_profile(const ProjectiveCurve& f, const std::vector<double>& r_grid, int jobs = 0);

/// N^{[level]}_f(r, D) on the grid from one zero search at 1.05·max(r_grid).
std::vector<double> counting_profile(const ProjectiveCurve& f, const HomogeneousPolynomial& d, int level,
                                     const std::vector<double>& r_grid);

/// S(r) = a·log(1 + T) + b·log r + c. Rational curves use c alone.
struct SlackModel {
  double log_T_coeff = 20.0;
  double log_r_coeff = 0.05;
  double constant = 5.0;
  bool constant_only = false;

  static SlackModel rational() { return {0.0, 0.0, 5.0, true}; }
  double operator()(double T, double r) const;
};

enum class GridSpacing { logarithmic, linear };

/// count points from rmin to rmax inclusive. Requires 1 < rmin < rmax, count >= 2.
std::vector<double> make_grid(double rmin, double rmax, int count, GridSpacing spacing = GridSpacing::logarithmic);

}  // namespace nevanlab
