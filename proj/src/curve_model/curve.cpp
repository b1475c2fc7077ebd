#include "nevanlab/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "exp_poly_builder.hpp"
#include "nevanlab/errors.hpp"
#include "nevanlab/zeros.hpp"

namespace nevanlab {

namespace {

bool nowhere_zero(const ExpPolySum& h) {
  return h.terms().size() == 1 && h.terms().front().p.degree() == 0;
}

void check_reduced(const std::vector<ExpPolySum>& comps, double radius) {
  std::vector<const ExpPolySum*> nonzero;
  for (const auto& c : comps) {
    if (c.is_zero()) continue;
    if (nowhere_zero(c)) return;
    nonzero.push_back(&c);
  }
  // Pick the component with the fewest zeros in the disk.
  const ExpPolySum* best = nullptr;
  int best_w = std::numeric_limits<int>::max();
  for (const auto* c : nonzero) {
    auto w = circle_winding(*c, 0.0, radius * (1.0 + 3.7e-4));
    if (w && *w == 0) return;
    if (w && *w < best_w) {
      best_w = *w;
      best = c;
    }
  }
  if (best == nullptr) best = nonzero.front();
  const auto zeros = find_zeros(*best, radius);
  for (const auto& pt : zeros.divisor) {
    if (std::abs(pt.location) > radius) continue;
    bool common = true;
    for (const auto* c : nonzero) {
      if (c == best) continue;
      const double v = evaluate_scaled(*c, pt.location).log_abs();
      const double size = log_term_magnitude(*c, pt.location);
      if (v > size + std::log(1e-7)) {
        common = false;
        break;
      }
    }
    if (common)
      throw std::invalid_argument("curve is not reduced: components share a zero near (" +
                                  std::to_string(pt.location.real()) + ", " +
                                  std::to_string(pt.location.imag()) + ")");
  }
}

}  // namespace

ProjectiveCurve::ProjectiveCurve(std::vector<ExpPolySum> components, double radius, Check check)
    : components_(std::move(components)), radius_(radius) {
  if (components_.size() < 2) throw std::invalid_argument("a projective curve needs at least two components");
  if (!(radius > 0.0)) throw std::invalid_argument("working radius must be positive");
  if (std::all_of(components_.begin(), components_.end(), [](const ExpPolySum& h) { return h.is_zero(); }))
    throw std::invalid_argument("all curve components are identically zero");
  for (const auto& c : components_)
    if (c.amplitude_degree() > kMaxAmplitudeDegree)
      throw std::invalid_argument("component amplitude degree " + std::to_string(c.amplitude_degree()) +
                                  " exceeds " + std::to_string(kMaxAmplitudeDegree));
  if (check == Check::reduced) check_reduced(components_, radius_);
}

bool ProjectiveCurve::is_rational() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const ExpPolySum& h) { return h.is_polynomial(); });
}

bool ProjectiveCurve::is_constant() const {
  const ExpPolySum* ref = nullptr;
  for (const auto& c : components_) {
    if (c.is_zero()) continue;
    if (ref == nullptr) {
      ref = &c;
      continue;
    }
    if (!ratio_is_constant(c, *ref)) return false;
  }
  return true;
}

double log_max_norm(const ProjectiveCurve& f, Complex z) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& c : f.components()) best = std::max(best, evaluate_scaled(c, z).log_abs());
  if (!std::isfinite(best)) throw Error("all curve components vanish at the evaluation point");
  return best;
}

ExpPolySum compose_with_curve(const HomogeneousPolynomial& p, const std::vector<ExpPolySum>& f) {
  const int nv = p.num_vars();
  if (static_cast<int>(f.size()) != nv)
    throw std::invalid_argument("polynomial has " + std::to_string(nv) + " variables but the curve has " +
                                std::to_string(f.size()) + " components");
  // powers[i][k] = f_i^k, built lazily.
  std::vector<std::vector<ExpPolyBuilder>> powers(nv);
  for (int i = 0; i < nv; ++i) powers[i].emplace_back(ExpPolySum::constant(1.0));
  auto power = [&](int i, int k) -> const ExpPolyBuilder& {
    while (static_cast<int>(powers[i].size()) <= k)
      powers[i].push_back(powers[i].back().times(ExpPolyBuilder(f[i])));
    return powers[i][k];
  };

  ExpPolyBuilder acc;
  for (const auto& [e, c] : p.terms()) {
    ExpPolyBuilder term = power(0, e[0]);
    for (int i = 1; i < nv; ++i)
      if (e[i] > 0) term = term.times(power(i, e[i]));
    acc.add(term, c);
  }
  return acc.finish();
}

ExpPolySum compose_with_curve(const HomogeneousPolynomial& p, const ProjectiveCurve& f) {
  return compose_with_curve(p, f.components());
}

}  // namespace nevanlab
