#include "nevanlab/borel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "nevanlab/zeros.hpp"

namespace nevanlab {

HomogeneousPolynomial PiMap::divisor() const {
  if (components.empty()) throw std::invalid_argument("empty map");
  HomogeneousPolynomial acc(components.front().num_vars(), degree);
  for (const auto& c : components) acc = acc + c;
  return acc;
}

PiMap build_pi_map(const std::vector<HomogeneousPolynomial>& q, const std::vector<int>& deltas, int d) {
  if (q.empty() || q.size() != deltas.size())
    throw std::invalid_argument("need one delta per polynomial and at least one polynomial");
  const int nv = static_cast<int>(q.size());
  const int n = nv - 1;
  PiMap pi;
  pi.degree = d;
  pi.deltas = deltas;
  int delta_sum = 0;
  for (int i = 0; i < nv; ++i) {
    if (q[i].num_vars() != nv)
      throw std::invalid_argument("Q_" + std::to_string(i) + " has " + std::to_string(q[i].num_vars()) +
                                  " variables, expected " + std::to_string(nv));
    if (q[i].is_zero()) throw std::invalid_argument("Q_" + std::to_string(i) + " is identically zero");
    if (deltas[i] < 0 || deltas[i] > d)
      throw std::invalid_argument("delta_" + std::to_string(i) + " outside [0, d]");
    if (q[i].degree() != deltas[i])
      throw std::invalid_argument("deg Q_" + std::to_string(i) + " = " + std::to_string(q[i].degree()) +
                                  " but delta_" + std::to_string(i) + " = " + std::to_string(deltas[i]));
    delta_sum += deltas[i];
    pi.components.push_back(pow(HomogeneousPolynomial::variable(nv, i), d - deltas[i]) * q[i]);
  }
  pi.below_threshold = d <= n * (n + 1) + delta_sum;
  return pi;
}

ProjectiveCurve pushforward(const PiMap& pi, const ProjectiveCurve& f) {
  if (f.components().size() != pi.components.size())
    throw std::invalid_argument("curve has " + std::to_string(f.components().size()) +
                                " components but the map expects " + std::to_string(pi.components.size()));
  std::vector<ExpPolySum> g;
  for (const auto& c : pi.components) g.push_back(compose_with_curve(c, f));
  if (std::all_of(g.begin(), g.end(), [](const ExpPolySum& h) { return h.is_zero(); }))
    throw std::invalid_argument("pushforward: every component of the image vanishes identically");
  return ProjectiveCurve(std::move(g), f.radius(), ProjectiveCurve::Check::skip);
}

BorelPartition borel_partition(const std::vector<ExpPolySum>& g) {
  if (g.empty()) throw std::invalid_argument("borel_partition of an empty list");
  BorelPartition part;
  part.classes.emplace_back();
  for (int i = 0; i < static_cast<int>(g.size()); ++i) {
    if (g[i].is_zero()) {
      part.classes[0].push_back(i);
      continue;
    }
    bool placed = false;
    for (std::size_t s = 1; s < part.classes.size() && !placed; ++s) {
      if (ratio_is_constant(g[i], g[part.classes[s].front()])) {
        part.classes[s].push_back(i);
        placed = true;
      }
    }
    if (!placed) part.classes.push_back({i});
  }

  part.class_sums.assign(part.classes.size(), 0.0);
  std::vector<Complex> nonzero_sums;
  std::vector<int> nonzero_classes;
  for (std::size_t s = 1; s < part.classes.size(); ++s) {
    const auto& cls = part.classes[s];
    for (int i : cls)
      for (int j : cls) part.constants[{i, j}] = i == j ? Complex(1.0) : *ratio_is_constant(g[i], g[j]);
    const int rep = cls.front();
    double cmax = 0.0;
    Complex b = 0.0;
    for (int j : cls) {
      const Complex c = part.constants[{j, rep}];
      b += c;
      cmax = std::max(cmax, std::abs(c));
    }
    part.class_sums[s] = b;
    if (std::abs(b) > 1e-10 * cmax) nonzero_classes.push_back(static_cast<int>(s));
  }
  if (nonzero_classes.size() == 1) part.exceptional_class = nonzero_classes.front();
  return part;
}

namespace {

bool class_sum_vanishes(const BorelPartition& p, std::size_t s) {
  double cmax = 0.0;
  const int rep = p.classes[s].front();
  for (int j : p.classes[s]) cmax = std::max(cmax, std::abs(p.constants.at({j, rep})));
  return std::abs(p.class_sums[s]) <= 1e-10 * cmax;
}

}  // namespace

BorelReport verify_borel_conclusions(const std::vector<ExpPolySum>& g, const BorelPartition& partition,
                                     BorelCase which, double radius) {
  std::vector<int> seen;
  for (const auto& cls : partition.classes) seen.insert(seen.end(), cls.begin(), cls.end());
  std::sort(seen.begin(), seen.end());
  if (partition.classes.empty() || seen.size() != g.size() ||
      std::adjacent_find(seen.begin(), seen.end()) != seen.end() ||
      (!seen.empty() && (seen.front() != 0 || seen.back() != static_cast<int>(g.size()) - 1)))
    throw std::invalid_argument("partition does not match the component list");
  for (std::size_t s = 1; s < partition.classes.size(); ++s)
    if (partition.classes[s].empty()) throw std::invalid_argument("partition has an empty nonzero class");

  BorelReport rep;
  rep.radius = radius;

  std::vector<int> zeros;
  for (int i = 0; i < static_cast<int>(g.size()); ++i)
    if (g[i].is_zero()) zeros.push_back(i);
  std::vector<int> i0 = partition.classes[0];
  std::sort(i0.begin(), i0.end());
  rep.clause_i = zeros == i0;

  int small = 0;
  for (std::size_t s = 1; s < partition.classes.size(); ++s)
    if (partition.classes[s].size() < 2) ++small;
  rep.clause_ii = which == BorelCase::logarithmic ? small <= 1 : small == 0;

  rep.clause_iii = true;
  for (std::size_t s = 1; s < partition.classes.size() && rep.clause_iii; ++s) {
    for (int i : partition.classes[s]) {
      for (int j : partition.classes[s]) {
        auto it = partition.constants.find({i, j});
        auto c = g[j].is_zero() ? std::nullopt : ratio_is_constant(g[i], g[j]);
        if (it == partition.constants.end() || !c || std::abs(*c - it->second) > 1e-9 * std::abs(it->second)) {
          rep.clause_iii = false;
        }
      }
    }
  }

  int nonvanishing = 0;
  for (std::size_t s = 1; s < partition.classes.size(); ++s)
    if (!class_sum_vanishes(partition, s)) ++nonvanishing;
  rep.clause_iv = which == BorelCase::logarithmic ? nonvanishing == 1 : nonvanishing == 0;

  ExpPolySum sum;
  for (const auto& h : g) sum = sum + h;
  rep.sum = sum;
  if (which == BorelCase::compact) {
    rep.hypothesis = sum.is_zero() ? Hypothesis::certified_global : Hypothesis::failed;
  } else if (sum.is_zero()) {
    rep.hypothesis = Hypothesis::failed;
  } else if (sum.terms().size() == 1 && sum.terms().front().p.degree() == 0) {
    rep.hypothesis = Hypothesis::certified_global;
  } else {
    rep.hypothesis = find_zeros(sum, radius).winding == 0 ? Hypothesis::verified_to_radius : Hypothesis::failed;
  }
  return rep;
}

std::string to_string(Hypothesis h) {
  switch (h) {
    case Hypothesis::certified_global:
      return "certified_global";
    case Hypothesis::verified_to_radius:
      return "verified_to_radius";
    case Hypothesis::failed:
      return "failed";
  }
  return "failed";
}

int span_dimension(const std::vector<ExpPolySum>& g, int samples, double radius, std::uint64_t seed) {
  const int cols = static_cast<int>(g.size());
  if (cols == 0) throw std::invalid_argument("span_dimension of an empty list");
  if (samples < 2 * cols)
    throw std::invalid_argument("span_dimension needs at least " + std::to_string(2 * cols) + " samples");
  const double rho = std::min(3.0, radius);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::MatrixXcd m(samples, cols);
  for (int row = 0; row < samples; ++row) {
    const Complex z = std::polar(rho * std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng));
    std::vector<ScaledValue> v(cols);
    double top = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < cols; ++c) {
      v[c] = evaluate_scaled(g[c], z);
      if (v[c].mantissa != 0.0) top = std::max(top, v[c].log_scale + std::log(std::abs(v[c].mantissa)));
    }
    for (int c = 0; c < cols; ++c) {
      m(row, c) = v[c].mantissa == 0.0 ? Complex(0.0)
                                       : v[c].mantissa * std::exp(v[c].log_scale - top);
    }
  }
  for (int c = 0; c < cols; ++c) {
    const double nrm = m.col(c).norm();
    if (nrm > 0.0) m.col(c) /= nrm;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return -1;
  int rank = 0;
  for (int k = 0; k < sv.size(); ++k)
    if (sv(k) > 1e-8 * sv(0)) ++rank;
  return rank - 1;
}

RemarkWitness build_remark_witness(int d, Complex e1, Complex e2, double radius) {
  if (d < 3) throw std::invalid_argument("the witness construction needs d >= 3");
  const int nv = 4;
  auto z = [](int i) { return HomogeneousPolynomial::variable(4, i); };
  const HomogeneousPolynomial q0 = pow(z(0), 2) + (e1 * e1) * pow(z(1), 2) + (e2 * e2) * pow(z(2), 2);
  const HomogeneousPolynomial one = HomogeneousPolynomial::constant(nv, 1.0);
  PiMap pi = build_pi_map({q0, one, one, one}, {2, 0, 0, 0}, d);
  const Complex eps = std::polar(1.0, std::numbers::pi / d);
  const ExpPolySum psi = ExpPolySum::polynomial(UniPoly::monomial(1.0, 2));
  ProjectiveCurve f({ExpPolySum(), ExpPolySum::exponential(UniPoly::identity()), psi, eps * psi}, radius);
  return {std::move(pi), std::move(f)};
}

}  // namespace nevanlab
