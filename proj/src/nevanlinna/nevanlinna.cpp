#include "nevanlab/nevanlinna.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nevanlab/errors.hpp"
#include "nevanlab/parallel.hpp"

namespace nevanlab {

namespace {

constexpr int kFirstNodes = 64;
constexpr int kNodeCap = 1 << 20;
constexpr double kQuadTol = 1e-7;
constexpr double kNearBand = 0.05;
constexpr double kZeroSearchFactor = 1.05;
constexpr double kClearance = 1e-6;

void require_radius(const ProjectiveCurve& f, double r) {
  if (!(r > 1.0)) throw std::invalid_argument("radius must exceed 1, got " + std::to_string(r));
  if (r > f.radius() * (1.0 + 1e-9))
    throw std::invalid_argument("radius " + std::to_string(r) + " exceeds the curve's working radius " +
                                std::to_string(f.radius()));
}

ExpPolySum divisor_pullback(const ProjectiveCurve& f, const HomogeneousPolynomial& d) {
  ExpPolySum h = compose_with_curve(d, f);
  if (h.is_zero()) throw ImageInDivisor("the curve lies inside the divisor: D∘f vanishes identically");
  return h;
}

double nudge_radius(const DivisorOnC& zeros, double r) {
  for (int it = 0; it < 200; ++it) {
    const bool close = std::any_of(zeros.begin(), zeros.end(), [r](const DivisorPoint& p) {
      return std::abs(std::abs(p.location) - r) < kClearance;
    });
    if (!close) return r;
    r *= 1.0 + 1e-5;
  }
  return r;
}

// m_f(r, D) given the zeros of h = D∘f out to at least (1 + kNearBand) r.
double proximity_with_zeros(const ProjectiveCurve& f, const ExpPolySum& h, const HomogeneousPolynomial& d,
                            double r, const DivisorOnC& zeros) {
  std::vector<DivisorPoint> near;
  double correction = 0.0;
  for (const auto& p : zeros) {
    if (std::abs(std::abs(p.location) - r) < kNearBand * r) {
      near.push_back(p);
      correction += p.multiplicity * std::log(std::max(r, std::abs(p.location)));
    }
  }
  const double deg = d.degree();
  const double log_q = std::log(max_coeff_norm(d));
  auto integrand = [&](Complex z) {
    double v = deg * log_max_norm(f, z) + log_q - evaluate_scaled(h, z).log_abs();
    for (const auto& p : near) v += p.multiplicity * std::log(std::abs(z - p.location));
    return v;
  };
  return circle_average(integrand, r) - correction;
}

}  // namespace

double circle_average(const std::function<double(Complex)>& g, double r) {
  auto node = [&](long k, long n) { return g(std::polar(r, 2.0 * std::numbers::pi * k / n)); };
  long n = kFirstNodes;
  double sum = 0.0;
  for (long k = 0; k < n; ++k) sum += node(k, n);
  double estimate = sum / n;
  int quiet = 0;
  while (n < kNodeCap) {
    // New nodes are the odd multiples of the halved spacing.
    double extra = 0.0;
    for (long k = 1; k < 2 * n; k += 2) extra += node(k, 2 * n);
    sum += extra;
    n *= 2;
    const double next = sum / n;
    const double change = std::abs(next - estimate);
    estimate = next;
    if (!std::isfinite(estimate)) throw QuadratureError("non-finite integrand on |z| = " + std::to_string(r));
    if (change < std::max(kQuadTol, kQuadTol * std::abs(estimate))) {
      if (++quiet >= 2) return estimate;
    } else {
      quiet = 0;
    }
  }
  throw QuadratureError("trapezoid rule did not converge on |z| = " + std::to_string(r) + " with " +
                        std::to_string(kNodeCap) + " nodes");
}

double truncated_counting(const DivisorOnC& e, double r, int level) {
  if (!(r > 1.0)) throw std::invalid_argument("truncated_counting needs r > 1");
  if (level < 1) throw std::invalid_argument("truncation level must be positive");
  const double log_r = std::log(r);
  double total = 0.0;
  for (const auto& p : e) {
    const double a = std::abs(p.location);
    if (a >= r) continue;
    const double weight = std::min(level, p.multiplicity);
    total += weight * (a <= 1.0 ? log_r : log_r - std::log(a));
  }
  return total;
}

double order_function(const ProjectiveCurve& f, double r) {
  require_radius(f, r);
  return circle_average([&f](Complex z) { return log_max_norm(f, z); }, r);
}

double counting_function(const ProjectiveCurve& f, const HomogeneousPolynomial& d, double r, int level) {
  require_radius(f, r);
  const ExpPolySum h = divisor_pullback(f, d);
  return truncated_counting(zeros_in_disk(h, r), r, level);
}

double proximity(const ProjectiveCurve& f, const HomogeneousPolynomial& d, double r) {
  require_radius(f, r);
  const ExpPolySum h = divisor_pullback(f, d);
  const DivisorOnC zeros = zeros_in_disk(h, kZeroSearchFactor * r);
  const double rr = nudge_radius(zeros, r);
  return proximity_with_zeros(f, h, d, rr, zeros);
}

std::vector<double> order_profile(const ProjectiveCurve& f, const std::vector<double>& r_grid, int jobs) {
  std::vector<double> out(r_grid.size());
  parallel_for(r_grid.size(), jobs, [&](std::size_t i) { out[i] = order_function(f, r_grid[i]); });
  return out;
}

std::vector<double> counting_profile(const ProjectiveCurve& f, const HomogeneousPolynomial& d, int level,
                                     const std::vector<double>& r_grid) {
  if (r_grid.empty()) return {};
  const double rmax = *std::max_element(r_grid.begin(), r_grid.end());
  require_radius(f, rmax);
  const ExpPolySum h = divisor_pullback(f, d);
  const DivisorOnC zeros = zeros_in_disk(h, rmax);
  std::vector<double> out;
  out.reserve(r_grid.size());
  for (double r : r_grid) out.push_back(truncated_counting(zeros, r, level));
  return out;
}

NevanlinnaProfile compute_profile(const ProjectiveCurve& f, const HomogeneousPolynomial& d, int level,
                                  const std::vector<double>& r_grid, int jobs) {
  NevanlinnaProfile prof;
  prof.level = level;
  prof.degree = d.degree();
  if (r_grid.empty()) return prof;
  const double rmax = *std::max_element(r_grid.begin(), r_grid.end());
  require_radius(f, rmax);
  const ExpPolySum h = divisor_pullback(f, d);
  const DivisorOnC zeros = zeros_in_disk(h, kZeroSearchFactor * rmax);

  const std::size_t n = r_grid.size();
  prof.r.resize(n);
  prof.T.resize(n);
  prof.N_trunc.resize(n);
  prof.N_full.resize(n);
  prof.prox.resize(n);
  prof.residual.resize(n);
  parallel_for(n, jobs, [&](std::size_t i) {
    // Nudging can push the last radius a hair past the working radius.
    const double r = std::min(nudge_radius(zeros, r_grid[i]), f.radius());
    prof.r[i] = r;
    prof.T[i] = circle_average([&f](Complex z) { return log_max_norm(f, z); }, r);
    prof.N_trunc[i] = truncated_counting(zeros, r, level);
    prof.N_full[i] = truncated_counting(zeros, r, kInfiniteLevel);
    prof.prox[i] = proximity_with_zeros(f, h, d, r, zeros);
    prof.residual[i] = prof.prox[i] + prof.N_full[i] - prof.degree * prof.T[i];
  });
  return prof;
}

std::vector<double> fmt_residual(const ProjectiveCurve& f, const HomogeneousPolynomial& d,
                                 const std::vector<double>& r_grid) {
  return compute_profile(f, d, kInfiniteLevel, r_grid).residual;
}

double defect(const ProjectiveCurve& f, const HomogeneousPolynomial& d, int level,
              const std::vector<double>& r_grid) {
  if (r_grid.empty() || *std::max_element(r_grid.begin(), r_grid.end()) < 10.0)
    throw std::invalid_argument("defect needs a grid reaching r >= 10");
  std::vector<double> grid = r_grid;
  std::sort(grid.begin(), grid.end());
  const std::size_t top = (grid.size() + 3) / 4;
  std::vector<double> tail(grid.end() - static_cast<long>(top), grid.end());
  const auto T = order_profile(f, tail);
  if (T.back() < 1e-9) throw Error("order function vanishes at the largest radius (constant curve)");
  const auto N = counting_profile(f, d, level, tail);
  double worst = 0.0;
  for (std::size_t i = 0; i < tail.size(); ++i) worst = std::max(worst, N[i] / (d.degree() * T[i]));
  return std::clamp(1.0 - worst, 0.0, 1.0);
}

double SlackModel::operator()(double T, double r) const {
  if (constant_only) return constant;
  return log_T_coeff * std::log1p(std::max(T, 0.0)) + log_r_coeff * std::log(r) + constant;
}

std::vector<double> make_grid(double rmin, double rmax, int count, GridSpacing spacing) {
  if (!(rmin > 1.0)) throw std::invalid_argument("grid minimum must exceed 1");
  if (!(rmax > rmin)) throw std::invalid_argument("grid maximum must exceed the minimum");
  if (count < 2) throw std::invalid_argument("grid needs at least two points");
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    g[i] = spacing == GridSpacing::logarithmic ? rmin * std::pow(rmax / rmin, t) : rmin + (rmax - rmin) * t;
  }
  g.back() = rmax;
  return g;
}

}  // namespace nevanlab
