#include "nevanlab/zeros.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>

#include "nevanlab/errors.hpp"

namespace nevanlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kNodeCap = 1 << 16;
constexpr int kContourRetries = 9;
constexpr double kContourStep = 1.25e-4;
constexpr double kRootBoxInflate = 1.0021;
constexpr double kNewtonTol = 1e-12;
constexpr int kNewtonIters = 60;
constexpr double kNewtonStallTol = 1e-8;
constexpr double kClusterWidth = 1e-7;
constexpr double kProbeThreshold = 1e-8;
constexpr double kMergeDistance = 1e-8;
constexpr double kContourClearance = 1e-6;
constexpr std::array<double, 4> kSplitFractions = {0.5137, 0.4783, 0.5419, 0.4561};

struct SplitFailure {};

// h with precomputed derivatives of p and q.
class Evaluator {
 public:
  explicit Evaluator(const ExpPolySum& h) {
    for (const auto& t : h.terms()) terms_.push_back({t.p, t.p.derivative(), t.q, t.q.derivative()});
  }

  ScaledJet jet(Complex z) const {
    double s = -std::numeric_limits<double>::infinity();
    qz_.resize(terms_.size());
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      qz_[i] = terms_[i].q(z);
      s = std::max(s, qz_[i].real());
    }
    Complex v = 0.0, dv = 0.0;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto& t = terms_[i];
      const Complex e = std::exp(qz_[i] - s);
      const Complex pz = t.p(z);
      v += pz * e;
      dv += (t.dp(z) + pz * t.dq(z)) * e;
    }
    return {v, dv, s};
  }

  // Value at z rescaled to the fixed exponent `scale`.
  Complex value_at_scale(Complex z, double scale) const {
    Complex v = 0.0;
    for (const auto& t : terms_) v += t.p(z) * std::exp(t.q(z) - scale);
    return v;
  }

  double max_exponent(Complex z) const {
    double s = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms_) s = std::max(s, t.q(z).real());
    return s;
  }

 private:
  struct Term {
    UniPoly p, dp, q, dq;
  };
  std::vector<Term> terms_;
  mutable std::vector<Complex> qz_;
};

struct Node {
  Complex z;
  Complex v;
  double dlog;
};

// Adaptive phase tracking along a parametrized path.
class PhaseTracer {
 public:
  PhaseTracer(const Evaluator& ev, std::function<Complex(double)> path) : ev_(ev), path_(std::move(path)) {}

  std::optional<double> run(double t0, double t1, int initial) {
    std::vector<std::pair<double, Node>> nodes;
    for (int i = 0; i <= initial; ++i) {
      const double t = t0 + (t1 - t0) * i / initial;
      auto n = sample(t);
      if (!n) return std::nullopt;
      nodes.emplace_back(t, *n);
    }
    double total = 0.0;
    for (int i = 0; i < initial; ++i) {
      auto d = refine(nodes[i].first, nodes[i].second, nodes[i + 1].first, nodes[i + 1].second, 0);
      if (!d) return std::nullopt;
      total += *d;
    }
    return total;
  }

 private:
  std::optional<Node> sample(double t) {
    if (++used_ > kNodeCap) return std::nullopt;
    const Complex z = path_(t);
    const auto j = ev_.jet(z);
    if (j.value == 0.0 || !std::isfinite(std::abs(j.value))) return std::nullopt;
    return Node{z, j.value, std::abs(j.deriv / j.value)};
  }

  std::optional<double> refine(double ta, const Node& a, double tb, const Node& b, int depth) {
    const double d = std::arg(b.v * std::conj(a.v));
    const double len = std::abs(b.z - a.z);
    if (std::abs(d) < kPi / 2 && len * std::max(a.dlog, b.dlog) < 1.0) return d;
    if (depth > 60 || len < 1e-13 * (1.0 + std::abs(a.z))) return std::nullopt;
    const double tm = 0.5 * (ta + tb);
    auto m = sample(tm);
    if (!m) return std::nullopt;
    auto left = refine(ta, a, tm, *m, depth + 1);
    if (!left) return std::nullopt;
    auto right = refine(tm, *m, tb, b, depth + 1);
    if (!right) return std::nullopt;
    return *left + *right;
  }

  const Evaluator& ev_;
  std::function<Complex(double)> path_;
  int used_ = 0;
};

std::optional<int> to_winding(std::optional<double> phase) {
  if (!phase) return std::nullopt;
  const double w = *phase / (2.0 * kPi);
  const double k = std::round(w);
  if (std::abs(w - k) > 0.2) return std::nullopt;
  return static_cast<int>(k);
}

std::optional<int> winding_on_circle(const Evaluator& ev, Complex c, double rho) {
  PhaseTracer tr(ev, [c, rho](double t) { return c + std::polar(rho, t); });
  return to_winding(tr.run(0.0, 2.0 * kPi, 64));
}

struct Box {
  double x0, x1, y0, y1;
  int winding;
  Complex centre() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  double width() const { return std::max(x1 - x0, y1 - y0); }
};

class QuadtreeSolver {
 public:
  explicit QuadtreeSolver(const Evaluator& ev) : ev_(ev) {}

  std::optional<int> box_winding(double x0, double x1, double y0, double y1) {
    const std::array<Complex, 4> c = {Complex{x0, y0}, Complex{x1, y0}, Complex{x1, y1}, Complex{x0, y1}};
    double total = 0.0;
    for (int k = 0; k < 4; ++k) {
      auto e = edge(c[k], c[(k + 1) % 4]);
      if (!e) return std::nullopt;
      total += *e;
    }
    return to_winding(total);
  }

  // Throws SplitFailure when the windings cannot be made consistent.
  DivisorOnC solve(Box root) {
    DivisorOnC found;
    std::vector<Box> stack{root};
    while (!stack.empty()) {
      Box b = stack.back();
      stack.pop_back();
      if (b.winding == 0) continue;
      if (b.winding < 0) throw SplitFailure{};
      if (b.winding == 1) {
        if (auto z = newton(b)) {
          found.push_back({*z, 1});
          continue;
        }
        if (b.width() < 1e-12 * (1.0 + std::abs(b.centre()))) {
          found.push_back({b.centre(), 1});
          continue;
        }
      } else {
        const double floor = kClusterWidth * std::max(1.0, std::abs(b.centre()));
        if (b.width() <= floor) {
          accept_cluster(found, b.centre(), b.winding);
          continue;
        }
        if (auto z = cluster(b)) {
          accept_cluster(found, *z, b.winding);
          continue;
        }
      }
      split(b, stack);
    }
    return found;
  }

 private:
  std::optional<double> edge(Complex a, Complex b) {
    const auto key = std::make_tuple(a.real(), a.imag(), b.real(), b.imag());
    const auto rkey = std::make_tuple(b.real(), b.imag(), a.real(), a.imag());
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    if (auto it = cache_.find(rkey); it != cache_.end()) {
      if (!it->second) return std::nullopt;
      return -*it->second;
    }
    PhaseTracer tr(ev_, [a, b](double t) { return a + (b - a) * t; });
    auto r = tr.run(0.0, 1.0, 4);
    cache_.emplace(key, r);
    return r;
  }

  void accept_cluster(DivisorOnC& found, Complex z, int k) {
    if (k > kMaxProbeMultiplicity)
      throw MultiplicityCapExceeded("zero cluster of multiplicity " + std::to_string(k) + " near (" +
                                    std::to_string(z.real()) + ", " + std::to_string(z.imag()) +
                                    ") exceeds the probe cap " + std::to_string(kMaxProbeMultiplicity));
    found.push_back({z, k});
  }

  std::optional<Complex> newton(const Box& b) {
    Complex z = b.centre();
    bool converged = false;
    // with heavy cancellation the iterates jitter at the noise floor instead
    // of reaching kNewtonTol; keep the iterate after the smallest step
    double best_step = std::numeric_limits<double>::infinity();
    Complex best = z;
    for (int it = 0; it < kNewtonIters; ++it) {
      const auto j = ev_.jet(z);
      if (j.value == 0.0) {
        converged = true;
        break;
      }
      if (j.deriv == 0.0) return std::nullopt;
      const Complex step = j.value / j.deriv;
      z -= step;
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
      const double scale = std::max(1.0, std::abs(z));
      if (std::abs(step) < kNewtonTol * scale) {
        converged = true;
        break;
      }
      if (std::abs(step) < best_step) {
        best_step = std::abs(step);
        best = z;
      }
    }
    if (!converged) {
      if (best_step > kNewtonStallTol * std::max(1.0, std::abs(best))) return std::nullopt;
      z = best;
    }
    const double tol = 1e-10 * (1.0 + std::abs(z));
    if (z.real() < b.x0 - tol || z.real() > b.x1 + tol || z.imag() < b.y0 - tol || z.imag() > b.y1 + tol)
      return std::nullopt;
    return z;
  }

  // Centroid of a tight cluster whose derivative probe confirms a single
  // point of multiplicity b.winding.
  std::optional<Complex> cluster(const Box& b) {
    const Complex c = b.centre();
    const double rho = 0.75 * b.width();
    auto w = winding_on_circle(ev_, c, rho);
    if (!w || *w != b.winding) return std::nullopt;

    constexpr int kNodes = 256;
    Complex count = 0.0, moment = 0.0;
    for (int j = 0; j < kNodes; ++j) {
      const Complex u = std::polar(1.0, 2.0 * kPi * j / kNodes);
      const Complex z = c + rho * u;
      const auto jet = ev_.jet(z);
      if (jet.value == 0.0) return std::nullopt;
      const Complex g = jet.deriv / jet.value * rho * u;
      count += g;
      moment += z * g;
    }
    count /= static_cast<double>(kNodes);
    moment /= static_cast<double>(kNodes);
    if (std::abs(count - static_cast<double>(b.winding)) > 1e-2) return std::nullopt;
    const Complex z0 = moment / static_cast<double>(b.winding);

    if (probe_multiplicity(z0, 0.5 * b.width(), b.winding) != b.winding) return std::nullopt;
    return z0;
  }

  // Smallest k <= kmax whose scaled Taylor coefficient at z0 clears the probe
  // threshold relative to the largest of orders 0..kmax.
  int probe_multiplicity(Complex z0, double rho, int kmax) {
    constexpr int kNodes = 64;
    std::array<Complex, kNodes> pts;
    double scale = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < kNodes; ++j) {
      pts[j] = z0 + std::polar(rho, 2.0 * kPi * j / kNodes);
      scale = std::max(scale, ev_.max_exponent(pts[j]));
    }
    std::array<Complex, kNodes> vals;
    for (int j = 0; j < kNodes; ++j) vals[j] = ev_.value_at_scale(pts[j], scale);
    std::vector<double> a(kmax + 1);
    for (int k = 0; k <= kmax; ++k) {
      Complex acc = 0.0;
      for (int j = 0; j < kNodes; ++j) acc += vals[j] * std::polar(1.0, -2.0 * kPi * j * k / kNodes);
      a[k] = std::abs(acc) / kNodes;
    }
    const double top = *std::max_element(a.begin(), a.end());
    for (int k = 0; k <= kmax; ++k)
      if (a[k] > kProbeThreshold * top) return k;
    return kmax;
  }

  void split(const Box& b, std::vector<Box>& stack) {
    for (double fx : kSplitFractions) {
      const double fy = 1.0 - fx + 0.0071;
      const double xm = b.x0 + fx * (b.x1 - b.x0);
      const double ym = b.y0 + fy * (b.y1 - b.y0);
      const std::array<std::array<double, 4>, 4> kids = {{{b.x0, xm, b.y0, ym},
                                                          {xm, b.x1, b.y0, ym},
                                                          {b.x0, xm, ym, b.y1},
                                                          {xm, b.x1, ym, b.y1}}};
      std::array<int, 4> w{};
      bool ok = true;
      int sum = 0;
      for (int k = 0; k < 4 && ok; ++k) {
        auto wk = box_winding(kids[k][0], kids[k][1], kids[k][2], kids[k][3]);
        if (!wk || *wk < 0) {
          ok = false;
          break;
        }
        w[k] = *wk;
        sum += *wk;
      }
      if (!ok || sum != b.winding) continue;
      for (int k = 0; k < 4; ++k)
        if (w[k] > 0) stack.push_back({kids[k][0], kids[k][1], kids[k][2], kids[k][3], w[k]});
      return;
    }
    throw SplitFailure{};
  }

  const Evaluator& ev_;
  std::map<std::tuple<double, double, double, double>, std::optional<double>> cache_;
};

DivisorOnC merge_and_sort(DivisorOnC pts) {
  std::sort(pts.begin(), pts.end(), [](const DivisorPoint& a, const DivisorPoint& b) {
    return std::make_pair(a.location.real(), a.location.imag()) <
           std::make_pair(b.location.real(), b.location.imag());
  });
  DivisorOnC out;
  for (const auto& p : pts) {
    bool merged = false;
    for (auto& q : out) {
      if (std::abs(q.location - p.location) <= kMergeDistance) {
        q.multiplicity += p.multiplicity;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(p);
  }
  return out;
}

}  // namespace

std::optional<int> circle_winding(const ExpPolySum& h, Complex center, double radius) {
  if (h.is_zero()) throw std::invalid_argument("winding number of the zero function");
  Evaluator ev(h);
  return winding_on_circle(ev, center, radius);
}

DiskZeros find_zeros(const ExpPolySum& h, double r) {
  if (h.is_zero()) throw std::invalid_argument("zeros_in_disk: function is identically zero");
  if (!(r > 0.0)) throw std::invalid_argument("zeros_in_disk: radius must be positive");
  const Evaluator ev(h);

  std::string last_problem = "no attempt made";
  for (int attempt = 0; attempt < kContourRetries; ++attempt) {
    const double rp = r * (1.0 + kContourStep * attempt);
    auto w = winding_on_circle(ev, 0.0, rp);
    if (!w) {
      last_problem = "phase tracking failed on the circle";
      continue;
    }
    if (*w == 0) return {{}, rp, 0};

    QuadtreeSolver solver(ev);
    const double half = rp * kRootBoxInflate;
    auto root_w = solver.box_winding(-half, half, -half, half);
    if (!root_w || *root_w < *w) {
      last_problem = "root box winding inconsistent with the circle";
      continue;
    }
    DivisorOnC pts;
    try {
      pts = solver.solve({-half, half, -half, half, *root_w});
    } catch (const SplitFailure&) {
      last_problem = "quadtree children windings inconsistent";
      continue;
    }
    std::erase_if(pts, [rp](const DivisorPoint& p) { return std::abs(p.location) >= rp; });
    pts = merge_and_sort(std::move(pts));
    const bool near_contour = std::any_of(pts.begin(), pts.end(), [rp](const DivisorPoint& p) {
      return std::abs(std::abs(p.location) - rp) < kContourClearance;
    });
    if (near_contour) {
      last_problem = "zero within 1e-6 of the contour";
      continue;
    }
    if (total_multiplicity(pts) != *w) {
      last_problem = "found " + std::to_string(total_multiplicity(pts)) + " zeros but winding is " +
                     std::to_string(*w);
      continue;
    }
    return {std::move(pts), rp, *w};
  }
  throw ZeroFindingError("zeros_in_disk(r = " + std::to_string(r) + "): " + last_problem +
                         " after every contour perturbation");
}

DivisorOnC zeros_in_disk(const ExpPolySum& h, double r) { return find_zeros(h, r).divisor; }

int total_multiplicity(const DivisorOnC& e) {
  int n = 0;
  for (const auto& p : e) n += p.multiplicity;
  return n;
}

}  // namespace nevanlab
