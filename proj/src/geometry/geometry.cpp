#include "nevanlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "elimination.hpp"
#include "nevanlab/errors.hpp"
#include "nevanlab/parallel.hpp"

namespace nevanlab {

namespace {

HomogeneousPolynomial z(int i) { return HomogeneousPolynomial::variable(4, i); }

// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> s(k);
  std::iota(s.begin(), s.end(), 0);
  if (k > n) return out;
  while (true) {
    out.push_back(s);
    int i = k - 1;
    while (i >= 0 && s[i] == n - k + i) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

// Σ |c| ∏ max(|x_i|, floor)^{e_i}. floor = 1 keeps the scale meaningful near
// the origin, where every term of a high-multiplicity point vanishes together.
double term_scale(const AffinePolynomial& p, std::span<const Complex> x, double floor = 0.0) {
  double s = 0.0;
  for (const auto& [e, c] : p.terms()) {
    double t = std::abs(c);
    for (std::size_t i = 0; i < x.size(); ++i) t *= std::pow(std::max(std::abs(x[i]), floor), e[i]);
    s += t;
  }
  return s;
}

}  // namespace

std::vector<HomogeneousPolynomial> theorem_a_components(int d, Complex a0, Complex a1, Complex a2, Complex a3) {
  if (d < 4) throw std::invalid_argument("the surface needs d >= 4");
  const Complex a[4] = {a0, a1, a2, a3};
  for (int i = 0; i < 4; ++i)
    if (a[i] == 0.0) throw std::invalid_argument("a" + std::to_string(i) + " must be nonzero");
  return {pow(z(0), d), pow(z(1), d - 2) * (pow(z(1), 2) + a0 * pow(z(0), 2)),
          pow(z(2), d - 2) * (pow(z(2), 2) + a1 * pow(z(0), 2)),
          pow(z(3), d - 2) * (a2 * pow(z(1), 2) + a3 * pow(z(2), 2) + pow(z(3), 2))};
}

HomogeneousPolynomial build_theorem_a_surface(int d, Complex a0, Complex a1, Complex a2, Complex a3) {
  const auto c = theorem_a_components(d, a0, a1, a2, a3);
  if (!theorem_a_degree_in_range(d))
    std::cerr << "warning: d = " << d << " is below 19; smoothness and hyperbolicity are not guaranteed\n";
  return c[0] + c[1] + c[2] + c[3];
}

// ---------------------------------------------------------------- Fermat-Waring

namespace {

__int128 bareiss_det(std::vector<std::vector<__int128>> a) {
  const std::size_t n = a.size();
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[r], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace

FermatWaringData build_fermat_waring(int n, int m, int d, std::uint64_t seed, BuildMode mode) {
  if (n < 1 || m < n + 1 || d < 1) throw std::invalid_argument("need n >= 1, m >= n + 1 and d >= 1");
  if (mode == BuildMode::theorem && (m < 3 * n - 1 || d < m * m - m + 1))
    throw std::invalid_argument("theorem mode needs m >= 3n - 1 and d >= m^2 - m + 1 (got n=" + std::to_string(n) +
                                ", m=" + std::to_string(m) + ", d=" + std::to_string(d) + ")");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-10, 10);
  const auto subs = subsets(m, n + 1);
  for (int attempt = 1; attempt <= 100; ++attempt) {
    std::vector<std::vector<int>> rows(m, std::vector<int>(n + 1));
    for (auto& row : rows)
      for (auto& v : row) v = coef(rng);
    bool ok = true;
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& s : subs) {
      std::vector<std::vector<__int128>> mat;
      double norms = 1.0;
      for (int i : s) {
        mat.emplace_back(rows[i].begin(), rows[i].end());
        double sq = 0.0;
        for (int v : rows[i]) sq += static_cast<double>(v) * v;
        norms *= std::sqrt(sq);
      }
      const __int128 det = bareiss_det(mat);
      if (det == 0) {
        ok = false;
        break;
      }
      worst = std::min(worst, std::abs(static_cast<double>(det)) / norms);
    }
    if (!ok) continue;
    FermatWaringData out;
    out.n = n;
    out.m = m;
    out.d = d;
    out.seed = seed;
    out.mode = mode;
    out.attempts = attempt;
    out.min_normalized_minor = worst;
    out.D = HomogeneousPolynomial(n + 1, d);
    for (const auto& row : rows) {
      std::vector<Complex> c(row.begin(), row.end());
      out.forms.push_back(HomogeneousPolynomial::linear_form(c));
      out.D = out.D + pow(out.forms.back(), d);
    }
    return out;
  }
  throw Error("no generic set of forms found after 100 samples (seed " + std::to_string(seed) + ")");
}

std::string to_string(Decision d) {
  switch (d) {
    case Decision::yes:
      return "yes";
    case Decision::no:
      return "no";
    case Decision::undecided:
      return "undecided";
  }
  return "undecided";
}

// ---------------------------------------------------------------- common zeros

namespace {

struct ZeroSearch {
  Decision empty = Decision::undecided;
  std::vector<Complex> witness;  // homogeneous coordinates when empty == no
  bool witness_exact = false;
  std::string detail;
};

elim::IntPoly dehomogenize_int(const elim::IntPoly& p, int var) {
  elim::IntPoly out{p.num_vars - 1, {}};
  for (const auto& [e, c] : p.terms) {
    Exponent r;
    for (int i = 0; i < p.num_vars; ++i)
      if (i != var) r.push_back(e[i]);
    out.terms[r] = c;
  }
  return out;
}

// Gauss-Newton least squares from random starts; returns an affine point
// where every polynomial is small relative to its term scale.
std::optional<std::vector<Complex>> numeric_common_zero(const std::vector<AffinePolynomial>& sys, int k,
                                                        std::uint64_t seed) {
  if (k == 0) return std::nullopt;
  std::vector<std::vector<AffinePolynomial>> jac(sys.size());
  for (std::size_t i = 0; i < sys.size(); ++i)
    for (int v = 0; v < k; ++v) jac[i].push_back(partial_derivative(sys[i], v));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const int starts = 60;
  for (int s = 0; s < starts; ++s) {
    Eigen::VectorXcd x(k);
    for (int v = 0; v < k; ++v) x(v) = s == 0 ? Complex(0.0) : Complex(u(rng), u(rng));
    for (int it = 0; it < 60; ++it) {
      std::span<const Complex> pt(x.data(), k);
      Eigen::VectorXcd f(sys.size());
      Eigen::MatrixXcd j(sys.size(), k);
      for (std::size_t i = 0; i < sys.size(); ++i) {
        f(i) = eval(sys[i], pt);
        for (int v = 0; v < k; ++v) j(i, v) = eval(jac[i][v], pt);
      }
      const Eigen::VectorXcd step = j.completeOrthogonalDecomposition().solve(-f);
      if (!step.allFinite()) break;
      x += step;
      if (step.norm() < 1e-14 * (1.0 + x.norm()) || x.norm() > 1e8) break;
    }
    if (!x.allFinite() || x.norm() > 1e6) continue;
    std::span<const Complex> pt(x.data(), k);
    bool ok = true;
    for (const auto& p : sys)
      if (std::abs(eval(p, pt)) > 1e-10 * term_scale(p, pt, 1.0)) ok = false;
    if (ok) return std::vector<Complex>(x.data(), x.data() + k);
  }
  return std::nullopt;
}

bool exact_check(const std::vector<elim::IntPoly>& sys, const std::vector<Complex>& x) {
  std::vector<std::pair<long long, long long>> g;
  for (Complex v : x) {
    const double re = std::round(v.real()), im = std::round(v.imag());
    if (std::abs(v.real() - re) > 1e-8 || std::abs(v.imag() - im) > 1e-8 || std::abs(v) > 1e6) return false;
    g.emplace_back(static_cast<long long>(re), static_cast<long long>(im));
  }
  for (const auto& p : sys) {
    auto v = elim::eval_exact(p, g);
    if (!v || v->first != 0 || v->second != 0) return false;
  }
  return true;
}

// Does the homogeneous system have a common zero in P^{nv-1}?
ZeroSearch projective_common_zero(const std::vector<HomogeneousPolynomial>& sys, int jobs = 0) {
  ZeroSearch out;
  if (sys.empty()) throw std::invalid_argument("empty system");
  const int nv = sys.front().num_vars();
  std::vector<elim::IntPoly> ints;
  for (const auto& p : sys) {
    if (p.num_vars() != nv) throw std::invalid_argument("polynomials live in different spaces");
    auto ip = elim::to_gaussian_integers(AffinePolynomial(nv, p.terms()));
    if (!ip) {
      out.detail = "coefficients are not Gaussian rationals with small denominators";
      return out;
    }
    ints.push_back(std::move(*ip));
  }

  struct Chart {
    bool certified = false;
    bool overflow = false;
    std::optional<std::vector<Complex>> witness;
    bool exact = false;
  };
  std::vector<Chart> charts(nv);
  parallel_for(static_cast<std::size_t>(nv), jobs, [&](std::size_t k) {
    std::vector<elim::IntPoly> local;
    for (const auto& p : ints) local.push_back(dehomogenize_int(p, static_cast<int>(k)));
    const int vars = nv - 1;
    std::vector<int> order(vars);
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::vector<int>> orders{order};
    if (vars > 1) orders.emplace_back(order.rbegin(), order.rend());
    for (int prime = 0; prime < 2 && !charts[k].certified; ++prime) {
      const elim::Field f = elim::field(prime);
      std::vector<elim::ModPoly> reduced;
      for (const auto& p : local) reduced.push_back(elim::reduce(p, f));
      for (const auto& ord : orders) {
        try {
          if (elim::eliminate(reduced, ord, f) == elim::Outcome::empty) {
            charts[k].certified = true;
            break;
          }
        } catch (const DegreeOverflow&) {
          charts[k].overflow = true;
        }
      }
    }
    if (charts[k].certified) return;
    std::vector<AffinePolynomial> numeric;
    for (const auto& p : sys) numeric.push_back(dehomogenize(p, static_cast<int>(k)));
    auto w = numeric_common_zero(numeric, vars, 7 + k);
    if (w) {
      charts[k].exact = exact_check(local, *w);
      w->insert(w->begin() + static_cast<long>(k), Complex(1.0));
      charts[k].witness = std::move(w);
    }
  });

  bool all = true, overflow = false;
  for (int k = 0; k < nv; ++k) {
    if (charts[k].witness) {
      out.empty = Decision::no;
      out.witness = *charts[k].witness;
      out.witness_exact = charts[k].exact;
      out.detail = std::string("common zero found in chart z") + std::to_string(k) + " = 1" +
                   (charts[k].exact ? " (verified exactly)" : " (numerical)");
      return out;
    }
    all = all && charts[k].certified;
    overflow = overflow || charts[k].overflow;
  }
  if (all) {
    out.empty = Decision::yes;
    out.detail = "no common zero over the algebraic closure of F_p on every chart";
  } else {
    out.detail = overflow ? "elimination degree overflow" : "elimination inconclusive and no numerical common zero";
  }
  return out;
}

}  // namespace

GeneralPosition check_general_position(const std::vector<HomogeneousPolynomial>& family, int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (static_cast<int>(family.size()) < n + 1)
    throw std::invalid_argument("general position needs at least n + 1 = " + std::to_string(n + 1) + " members");
  for (const auto& p : family)
    if (p.num_vars() != n + 1)
      throw std::invalid_argument("every member must have " + std::to_string(n + 1) + " variables");
  GeneralPosition res;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].is_zero() || family[i].degree() == 0) {
      if (family[i].is_zero()) {
        res.verdict = Decision::no;
        res.subset = {static_cast<int>(i)};
        res.witness.assign(n + 1, 0.0);
        res.witness[0] = 1.0;
        res.detail = "member " + std::to_string(i) + " is identically zero";
        return res;
      }
    }
  }
  const auto subs = subsets(static_cast<int>(family.size()), n + 1);
  const bool linear = std::all_of(family.begin(), family.end(), [](const auto& p) { return p.degree() == 1; });

  if (linear) {
    for (const auto& s : subs) {
      Eigen::MatrixXcd mat(n + 1, n + 1);
      double norms = 1.0;
      for (int r = 0; r <= n; ++r) {
        for (int c = 0; c <= n; ++c) {
          Exponent e(n + 1, 0);
          e[c] = 1;
          mat(r, c) = family[s[r]].coefficient(e);
        }
        norms *= mat.row(r).norm();
      }
      if (std::abs(mat.determinant()) <= 1e-9 * norms) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(mat, Eigen::ComputeFullV);
        const Eigen::VectorXcd v = svd.matrixV().col(n);
        res.verdict = Decision::no;
        res.subset = s;
        res.witness.assign(v.data(), v.data() + n + 1);
        res.detail = "linearly dependent subset";
        return res;
      }
    }
    res.verdict = Decision::yes;
    res.detail = "every subset has full rank";
    return res;
  }

  if (n > 3) {
    res.detail = "elimination supported for n <= 3 only";
    return res;
  }
  std::vector<ZeroSearch> found(subs.size());
  parallel_for(subs.size(), 0, [&](std::size_t i) {
    std::vector<HomogeneousPolynomial> sys;
    for (int k : subs[i]) sys.push_back(family[k]);
    found[i] = projective_common_zero(sys, 1);
  });
  bool undecided = false;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (found[i].empty == Decision::no) {
      res.verdict = Decision::no;
      res.subset = subs[i];
      res.witness = found[i].witness;
      res.detail = found[i].detail;
      return res;
    }
    if (found[i].empty == Decision::undecided && !undecided) {
      undecided = true;
      res.subset = subs[i];
      res.detail = found[i].detail;
    }
  }
  if (undecided) return res;
  res.verdict = Decision::yes;
  res.detail = "every subset certified by elimination";
  return res;
}

// ---------------------------------------------------------------- smoothness

namespace {

struct HypersurfaceJet {
  AffinePolynomial p;
  std::vector<AffinePolynomial> grad;
  std::vector<std::vector<AffinePolynomial>> hess;
  int nv;

  explicit HypersurfaceJet(const HomogeneousPolynomial& h)
      : p(h.num_vars(), h.terms()), nv(h.num_vars()) {
    for (int i = 0; i < nv; ++i) grad.push_back(partial_derivative(p, i));
    hess.resize(nv);
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < nv; ++j) hess[i].push_back(partial_derivative(grad[i], j));
  }

  Eigen::VectorXcd gradient(const Eigen::VectorXcd& x) const {
    Eigen::VectorXcd g(nv);
    for (int i = 0; i < nv; ++i) g(i) = eval(grad[i], std::span<const Complex>(x.data(), nv));
    return g;
  }
  Eigen::MatrixXcd hessian(const Eigen::VectorXcd& x) const {
    Eigen::MatrixXcd h(nv, nv);
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < nv; ++j) h(i, j) = eval(hess[i][j], std::span<const Complex>(x.data(), nv));
    return h;
  }
  Complex value(const Eigen::VectorXcd& x) const { return eval(p, std::span<const Complex>(x.data(), nv)); }
  double scale(const Eigen::VectorXcd& x) const { return term_scale(p, std::span<const Complex>(x.data(), nv)); }
};

// Pulls a unit vector back onto P = 0 (minimal-norm Newton, renormalized).
bool project(const HypersurfaceJet& jet, Eigen::VectorXcd& x) {
  for (int it = 0; it < 60; ++it) {
    const Complex v = jet.value(x);
    if (std::abs(v) <= 1e-14 * std::max(jet.scale(x), 1e-300)) return true;
    const Eigen::VectorXcd g = jet.gradient(x);
    const double gg = g.squaredNorm();
    if (gg == 0.0 || !std::isfinite(gg)) return false;
    x -= (v / gg) * g.conjugate();
    x.normalize();
  }
  return std::abs(jet.value(x)) <= 1e-10 * std::max(jet.scale(x), 1e-300);
}

struct StartResult {
  double min_grad = std::numeric_limits<double>::infinity();
  Eigen::VectorXcd argmin;
  bool converged = false;
};

StartResult minimize_gradient(const HypersurfaceJet& jet, std::uint64_t seed) {
  StartResult res;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd x(jet.nv);
  for (int tries = 0; tries < 20; ++tries) {
    for (int i = 0; i < jet.nv; ++i) x(i) = Complex(gauss(rng), gauss(rng));
    x.normalize();
    if (project(jet, x)) break;
    if (tries == 19) return res;
  }
  auto record = [&](const Eigen::VectorXcd& y, double gnorm) {
    if (gnorm < res.min_grad) {
      res.min_grad = gnorm;
      res.argmin = y;
    }
  };
  Eigen::VectorXcd g = jet.gradient(x);
  double phi = g.squaredNorm();
  record(x, std::sqrt(phi));
  double t = 1.0;
  for (int it = 0; it < 300; ++it) {
    // descent direction for |g|^2, projected onto the tangent space of the
    // sphere slice (orthogonal to conj(g) and to x)
    Eigen::VectorXcd dir = -(jet.hessian(x).conjugate() * g);
    const Eigen::VectorXcd nrm = g.conjugate();
    dir -= (nrm.dot(dir) / nrm.squaredNorm()) * nrm;
    dir -= x.dot(dir) * x;
    const double dn = dir.norm();
    if (!(dn > 1e-13 * std::max(phi, 1e-300))) {
      res.converged = true;
      return res;
    }
    dir /= dn;
    bool accepted = false;
    for (int half = 0; half < 40; ++half, t *= 0.5) {
      Eigen::VectorXcd y = x + t * dir;
      y.normalize();
      if (!project(jet, y)) continue;
      const Eigen::VectorXcd gy = jet.gradient(y);
      const double py = gy.squaredNorm();
      if (py < phi - 1e-4 * t * dn) {
        const bool tiny = phi - py <= 1e-12 * phi;
        x = y;
        g = gy;
        phi = py;
        record(x, std::sqrt(phi));
        accepted = true;
        t = std::min(1.0, 4.0 * t);
        if (tiny) {
          res.converged = true;
          return res;
        }
        break;
      }
    }
    if (!accepted) {
      res.converged = true;
      return res;
    }
  }
  return res;
}

}  // namespace

SmoothnessCertificate smoothness_check(const HomogeneousPolynomial& p, SmoothnessMode mode, std::uint64_t seed,
                                       int starts) {
  if (p.is_zero() || p.degree() < 1) throw std::invalid_argument("smoothness_check needs a nonconstant polynomial");
  if (p.num_vars() < 2) throw std::invalid_argument("smoothness_check needs at least two variables");
  SmoothnessCertificate cert;
  cert.mode = mode;
  cert.seed = seed;
  if (mode == SmoothnessMode::exact) {
    if (p.degree() > kExactSmoothnessMaxDegree)
      throw DegreeOverflow("exact smoothness is limited to degree " + std::to_string(kExactSmoothnessMaxDegree));
    std::vector<HomogeneousPolynomial> partials;
    for (int i = 0; i < p.num_vars(); ++i) partials.push_back(partial_derivative(p, i));
    const ZeroSearch zs = projective_common_zero(partials);
    cert.smooth = zs.empty;
    cert.witness = zs.witness;
    cert.detail = zs.detail;
    if (zs.empty == Decision::no) cert.min_gradient_norm = 0.0;
    return cert;
  }

  if (starts < 1) throw std::invalid_argument("need at least one start");
  cert.heuristic = true;
  cert.starts = starts;
  const HypersurfaceJet jet(p);
  std::vector<StartResult> runs(starts);
  parallel_for(static_cast<std::size_t>(starts), 0,
               [&](std::size_t i) { runs[i] = minimize_gradient(jet, seed * 1000003ULL + i); });
  cert.min_gradient_norm = std::numeric_limits<double>::infinity();
  for (const auto& r : runs) {
    cert.start_converged.push_back(r.converged);
    if (r.converged) ++cert.converged;
    if (r.min_grad < cert.min_gradient_norm) {
      cert.min_gradient_norm = r.min_grad;
      cert.witness.assign(r.argmin.data(), r.argmin.data() + r.argmin.size());
    }
  }
  if (!std::isfinite(cert.min_gradient_norm)) {
    cert.detail = "no start reached the hypersurface";
    cert.witness.clear();
    return cert;
  }
  if (cert.min_gradient_norm > kGradientThreshold) {
    cert.smooth = Decision::yes;
    cert.detail = "heuristic: no singularity found above threshold 1e-6";
    cert.witness.clear();
  } else {
    cert.smooth = Decision::no;
    cert.detail = "heuristic: gradient norm below 1e-6 near the reported point";
  }
  return cert;
}

TheoremASearch search_theorem_a(int d, std::uint64_t seed, SmoothnessMode mode, int max_tries) {
  TheoremASearch out;
  out.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, 9);
  const int values[10] = {-5, -4, -3, -2, -1, 1, 2, 3, 4, 5};
  for (int t = 0; t < max_tries; ++t) {
    std::array<int, 4> a;
    for (int& v : a) v = values[pick(rng)];
    out.tried = t + 1;
    out.a = a;
    const auto comps = theorem_a_components(d, a[0], a[1], a[2], a[3]);
    out.components = check_general_position(comps, 3);
    if (out.components.verdict != Decision::yes) continue;
    out.smoothness = smoothness_check(comps[0] + comps[1] + comps[2] + comps[3], mode, seed);
    if (out.smoothness.smooth == Decision::yes) {
      out.found = true;
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------- plane curves

std::string to_string(GenusStatus s) {
  switch (s) {
    case GenusStatus::ok:
      return "ok";
    case GenusStatus::unsupported:
      return "unsupported";
    case GenusStatus::undetermined:
      return "undetermined";
  }
  return "undetermined";
}

namespace {

UniPoly trimmed(const UniPoly& p, double rel) {
  std::vector<Complex> c = p.coeffs();
  double top = 0.0;
  for (Complex v : c) top = std::max(top, std::abs(v));
  while (!c.empty() && std::abs(c.back()) <= rel * top) c.pop_back();
  return UniPoly(std::move(c));
}

// Roots plus centroids of clusters (multiple roots come back as rings).
std::vector<Complex> root_candidates(const UniPoly& p) {
  const auto roots = find_roots(trimmed(p, 1e-10));
  std::vector<Complex> out;
  auto add = [&](Complex z) {
    if (std::none_of(out.begin(), out.end(), [&](Complex w) { return std::abs(w - z) <= 1e-10 * (1 + std::abs(z)); }))
      out.push_back(z);
  };
  const std::size_t n = roots.size();
  std::vector<int> label(n);
  std::iota(label.begin(), label.end(), 0);
  std::function<int(int)> find = [&](int i) { return label[i] == i ? i : label[i] = find(label[i]); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(roots[i] - roots[j]) <= 0.05 * (1 + std::abs(roots[i]))) label[find(i)] = find(j);
  std::map<int, std::pair<Complex, int>> sums;
  for (std::size_t i = 0; i < n; ++i) {
    auto& s = sums[find(i)];
    s.first += roots[i];
    s.second += 1;
  }
  for (const auto& [k, s] : sums) add(s.first / static_cast<double>(s.second));
  for (Complex r : roots) add(r);
  return out;
}

struct Local {
  int multiplicity = 0;
  int tangents = 0;
  bool ordinary = false;
  std::vector<std::array<Complex, 2>> directions;
};

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Multiplicity and tangent cone of g (two variables) at pt.
Local local_analysis(const AffinePolynomial& g, std::array<Complex, 2> pt) {
  const int d = g.total_degree();
  std::vector<std::vector<Complex>> c(d + 1, std::vector<Complex>(d + 1, 0.0));
  std::vector<std::vector<double>> s(d + 1, std::vector<double>(d + 1, 0.0));
  for (const auto& [e, v] : g.terms()) {
    for (int i = 0; i <= e[0]; ++i)
      for (int j = 0; j <= e[1]; ++j) {
        const Complex t = v * binom(e[0], i) * binom(e[1], j) * std::pow(pt[0], e[0] - i) * std::pow(pt[1], e[1] - j);
        c[i][j] += t;
        s[i][j] += std::abs(v) * binom(e[0], i) * binom(e[1], j) *
                   std::pow(std::max(std::abs(pt[0]), 1.0), e[0] - i) * std::pow(std::max(std::abs(pt[1]), 1.0), e[1] - j);
      }
  }
  auto is_zero = [&](int i, int j) { return std::abs(c[i][j]) <= 1e-7 * s[i][j]; };
  Local out;
  int r = 0;
  for (; r <= d; ++r) {
    bool any = false;
    for (int i = 0; i <= r; ++i)
      if (!is_zero(i, r - i)) any = true;
    if (any) break;
  }
  out.multiplicity = r;
  if (r < 2) return out;
  // binary form L(s, t) = Σ c_{i, r-i} s^i t^{r-i}; factor as t^k ∏ (s - ρ t)
  std::vector<Complex> u(r + 1, 0.0);
  for (int i = 0; i <= r; ++i) u[i] = is_zero(i, r - i) ? Complex(0.0) : c[i][r - i];
  UniPoly up(u);
  const int at_t_zero = r - up.degree();
  const auto rho = find_roots(up);
  int distinct = at_t_zero > 0 ? 1 : 0;
  if (at_t_zero > 0) out.directions.push_back({Complex(1.0), Complex(0.0)});
  double top = 1.0;
  for (Complex v : rho) top = std::max(top, std::abs(v));
  bool repeated = at_t_zero > 1;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    bool dup = false;
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(rho[i] - rho[j]) <= 1e-3 * top) dup = true;
    if (dup) {
      repeated = true;
    } else {
      ++distinct;
      out.directions.push_back({rho[i], Complex(1.0)});
    }
  }
  out.tangents = distinct;
  out.ordinary = !repeated && distinct == r;
  return out;
}

// g vanishes along the whole line pt + λ dir?
bool contains_line(const AffinePolynomial& g, std::array<Complex, 2> pt, std::array<Complex, 2> dir) {
  for (Complex lambda : {Complex(0.37, 0.11), Complex(-1.3, 0.7), Complex(2.1, -1.9)}) {
    const std::array<Complex, 2> q{pt[0] + lambda * dir[0], pt[1] + lambda * dir[1]};
    if (std::abs(eval(g, q)) > 1e-8 * term_scale(g, q, 1.0)) return false;
  }
  return true;
}

std::optional<UniPoly> eliminated(const AffinePolynomial& a, const AffinePolynomial& b) {
  const bool ay = a.degree_in(1) > 0, by = b.degree_in(1) > 0;
  if (a.is_zero() || b.is_zero()) return std::nullopt;
  if (!ay) return restrict_bivariate(a, 0, 0.0);
  if (!by) return restrict_bivariate(b, 0, 0.0);
  AffinePolynomial r = resultant_bivariate(a, b, 1);
  if (r.is_zero()) return std::nullopt;
  return restrict_bivariate(r, 0, 0.0);
}

void polish(const AffinePolynomial& fx, const AffinePolynomial& fy, const std::array<AffinePolynomial, 3>& h,
            std::array<Complex, 2>& p) {
  auto resid = [&](const std::array<Complex, 2>& q) { return std::abs(eval(fx, q)) + std::abs(eval(fy, q)); };
  double cur = resid(p);
  for (int it = 0; it < 120 && cur > 0.0; ++it) {
    const Complex a = eval(h[0], p), b = eval(h[1], p), c = eval(h[2], p);
    const Complex det = a * c - b * b;
    if (std::abs(det) == 0.0) return;
    const Complex u = eval(fx, p), v = eval(fy, p);
    const std::array<Complex, 2> q{p[0] - (c * u - b * v) / det, p[1] - (a * v - b * u) / det};
    const double nr = resid(q);
    if (!(nr < cur)) return;
    p = q;
    cur = nr;
  }
}

}  // namespace

GenusReport plane_curve_genus(const AffinePolynomial& f) {
  if (f.num_vars() != 2) throw std::invalid_argument("plane_curve_genus needs a polynomial in X, Y");
  if (f.is_zero()) throw std::invalid_argument("the zero polynomial does not define a curve");
  GenusReport rep;
  const int d = f.total_degree();
  rep.degree = d;
  if (d < 1) throw std::invalid_argument("a nonzero constant does not define a curve");

  const AffinePolynomial fx = partial_derivative(f, 0), fy = partial_derivative(f, 1);
  if (d >= 2) {
    if (f.degree_in(0) == 0 || f.degree_in(1) == 0) {
      rep.detail = "polynomial in one variable only: a union of lines";
      return rep;
    }
    if (resultant_bivariate(f, fy, 1).is_zero() || resultant_bivariate(f, fx, 0).is_zero()) {
      rep.detail = "repeated factor detected (resultant with a partial vanishes)";
      return rep;
    }
  }

  std::vector<PlaneSingularity> sing;
  bool non_ordinary = false, line_component = false;
  auto record = [&](const AffinePolynomial& g, std::array<Complex, 2> local, std::array<Complex, 3> proj,
                    bool infinity) {
    const Local la = local_analysis(g, local);
    if (la.multiplicity < 2) return;
    // compare projective points after normalizing by the largest entry
    auto norm = [](std::array<Complex, 3> p) {
      std::size_t k = 0;
      for (std::size_t i = 1; i < 3; ++i)
        if (std::abs(p[i]) > std::abs(p[k])) k = i;
      const Complex piv = p[k];
      for (auto& v : p) v /= piv;
      return p;
    };
    const auto b = norm(proj);
    for (const auto& s : sing) {
      const auto a = norm(s.point);
      double diff = 0.0;
      for (int i = 0; i < 3; ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
      if (diff <= 1e-6) return;
    }
    for (const auto& dir : la.directions)
      if (contains_line(g, local, dir)) line_component = true;
    if (!la.ordinary) non_ordinary = true;
    sing.push_back({proj, la.multiplicity, la.tangents, la.ordinary, infinity});
  };

  // affine part
  if (d >= 2) {
    const std::array<AffinePolynomial, 3> hess{partial_derivative(fx, 0), partial_derivative(fx, 1),
                                               partial_derivative(fy, 1)};
    std::optional<UniPoly> rx;
    const std::pair<const AffinePolynomial*, const AffinePolynomial*> pairs[3] = {{&fx, &fy}, {&f, &fy}, {&f, &fx}};
    for (const auto& [a, b] : pairs) {
      rx = eliminated(*a, *b);
      if (rx) break;
    }
    if (!rx) {
      rep.detail = "elimination of the singular locus failed (common factor)";
      return rep;
    }
    for (Complex x0 : root_candidates(*rx)) {
      UniPoly fiber;
      for (const AffinePolynomial* g : {&fy, &fx, &f}) {
        fiber = trimmed(restrict_bivariate(*g, 1, x0), 1e-8);
        if (fiber.degree() >= 1) break;
      }
      if (fiber.degree() < 1) continue;
      for (Complex y0 : root_candidates(fiber)) {
        std::array<Complex, 2> p{x0, y0};
        polish(fx, fy, hess, p);
        if (std::abs(eval(f, p)) > 1e-6 * term_scale(f, p, 1.0)) continue;
        record(f, p, {p[0], p[1], Complex(1.0)}, false);
      }
    }
  }

  // line at infinity
  const HomogeneousPolynomial fh = homogenize(f);
  std::vector<Complex> top(d + 1, 0.0);
  for (const auto& [e, c] : f.terms())
    if (e[0] + e[1] == d) top[e[0]] = c;
  const UniPoly dir(top);
  const AffinePolynomial chart_y = dehomogenize(fh, 1);  // variables (X, W)
  for (Complex t : root_candidates(dir)) record(chart_y, {t, Complex(0.0)}, {t, Complex(1.0), Complex(0.0)}, true);
  if (dir.degree() < d) {
    const AffinePolynomial chart_x = dehomogenize(fh, 0);  // variables (Y, W)
    record(chart_x, {Complex(0.0), Complex(0.0)}, {Complex(1.0), Complex(0.0), Complex(0.0)}, true);
  }

  rep.singularities = sing;
  if (line_component) {
    rep.detail = "a tangent line at a singular point is a component";
    return rep;
  }
  if (non_ordinary) {
    rep.status = GenusStatus::unsupported;
    rep.detail = "non-ordinary singularity";
    return rep;
  }
  int g = (d - 1) * (d - 2) / 2;
  for (const auto& s : sing) g -= s.multiplicity * (s.multiplicity - 1) / 2;
  if (g < 0) {
    rep.detail = "negative genus: the curve is reducible";
    return rep;
  }
  rep.status = GenusStatus::ok;
  rep.genus = g;
  rep.detail = sing.empty() ? "smooth" : std::to_string(sing.size()) + " ordinary singular point(s)";
  return rep;
}

// ---------------------------------------------------------------- moduli counts

int grassmann_gamma_codim(int m, int a, int b, int c) {
  if (!(1 <= a && a <= c && c <= m - 1 && 1 <= b && b <= c && c <= a + b))
    throw std::invalid_argument("need 1 <= a <= c <= m-1 and 1 <= b <= c <= a+b (got m=" + std::to_string(m) +
                                ", a=" + std::to_string(a) + ", b=" + std::to_string(b) + ", c=" + std::to_string(c) +
                                ")");
  return (m - c) * (a + b - c);
}

ModuliCheck theorem_b_moduli_check(int n, int m, int r, int kappa0, int m_size) {
  if (n < 1 || m < 1) throw std::invalid_argument("need n, m >= 1");
  if (r < 1 || r > m) throw std::invalid_argument("class count r must lie in [1, m]");
  if (m_size < 0 || m_size > std::min(r, n)) throw std::invalid_argument("|M| must lie in [0, min(r, n)]");
  if (kappa0 < 0) throw std::invalid_argument("kappa_0 must be >= 0");
  ModuliCheck out;
  out.alpha = 2 * (m - n - r + 1);
  out.beta_bound = m - kappa0 - 2 * r + m_size;
  out.ok = out.alpha > out.beta_bound;
  return out;
}

}  // namespace nevanlab
