#include "nevanlab/exp_poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "exp_poly_builder.hpp"
#include "nevanlab/errors.hpp"

namespace nevanlab {

namespace {

constexpr double kOverflowExponent = 700.0;
constexpr double kRatioTolerance = 1e-10;

bool keys_close(const ExpPolyBuilder::QKey& a, const ExpPolyBuilder::QKey& b) {
  double scale = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) scale = std::max({scale, std::abs(a[k]), std::abs(b[k])});
  const double tol = 1e-12 * (1.0 + scale);
  for (std::size_t k = 0; k < a.size(); ++k)
    if (std::abs(a[k] - b[k]) > tol) return false;
  return true;
}

ExpPolyBuilder::QKey key_of(const UniPoly& q) {
  if (q.degree() > kMaxExponentDegree)
    throw DegreeOverflow("exponent polynomial degree " + std::to_string(q.degree()) +
                         " exceeds " + std::to_string(kMaxExponentDegree));
  ExpPolyBuilder::QKey k{};
  for (int i = 0; i <= q.degree(); ++i) k[i] = q.coeff(i);
  return k;
}

int key_degree(const ExpPolyBuilder::QKey& k) {
  for (int i = kMaxExponentDegree; i >= 1; --i)
    if (k[i] != 0.0) return i;
  return 0;
}

bool term_less(const ExpTerm& a, const ExpTerm& b) {
  const int da = std::max(a.q.degree(), 0);
  const int db = std::max(b.q.degree(), 0);
  if (da != db) return da < db;
  for (int k = 1; k <= kMaxExponentDegree; ++k) {
    const double x = a.q.coeff(k).real(), y = b.q.coeff(k).real();
    if (x != y) return x < y;
  }
  for (int k = 1; k <= kMaxExponentDegree; ++k) {
    const double x = a.q.coeff(k).imag(), y = b.q.coeff(k).imag();
    if (x != y) return x < y;
  }
  return false;
}

bool q_close(const UniPoly& a, const UniPoly& b) { return keys_close(key_of(a), key_of(b)); }

}  // namespace

// ------------------------------------------------------------ builder

ExpPolyBuilder::ExpPolyBuilder(const ExpPolySum& h) {
  for (const auto& t : h.terms()) add_term(t.q, t.p);
}

ExpPolyBuilder::Entry& ExpPolyBuilder::slot(const QKey& q) {
  for (auto& e : entries_)
    if (keys_close(e.q, q)) return e;
  entries_.push_back(Entry{q, {}, {}});
  return entries_.back();
}

void ExpPolyBuilder::add_term(const UniPoly& q, const UniPoly& p) {
  if (p.is_zero()) return;
  QKey key = key_of(q);
  const Complex fold = std::exp(key[0]);
  key[0] = 0.0;
  Entry& e = slot(key);
  const auto& pc = p.coeffs();
  if (e.c.size() < pc.size()) {
    e.c.resize(pc.size());
    e.m.resize(pc.size());
  }
  for (std::size_t k = 0; k < pc.size(); ++k) {
    const Complex v = fold * pc[k];
    e.c[k] += v;
    e.m[k] += std::abs(v);
  }
}

void ExpPolyBuilder::add(const ExpPolyBuilder& other, Complex scale) {
  if (scale == 0.0) return;
  const double s = std::abs(scale);
  for (const auto& o : other.entries_) {
    Entry& e = slot(o.q);
    if (e.c.size() < o.c.size()) {
      e.c.resize(o.c.size());
      e.m.resize(o.c.size());
    }
    for (std::size_t k = 0; k < o.c.size(); ++k) {
      e.c[k] += scale * o.c[k];
      e.m[k] += s * o.m[k];
    }
  }
}

ExpPolyBuilder ExpPolyBuilder::times(const ExpPolyBuilder& other) const {
  ExpPolyBuilder out;
  for (const auto& a : entries_) {
    for (const auto& b : other.entries_) {
      if (a.c.empty() || b.c.empty()) continue;
      QKey q{};
      for (std::size_t k = 0; k < q.size(); ++k) q[k] = a.q[k] + b.q[k];
      Entry& e = out.slot(q);
      const std::size_t n = a.c.size() + b.c.size() - 1;
      if (e.c.size() < n) {
        e.c.resize(n);
        e.m.resize(n);
      }
      for (std::size_t i = 0; i < a.c.size(); ++i) {
        for (std::size_t j = 0; j < b.c.size(); ++j) {
          e.c[i + j] += a.c[i] * b.c[j];
          e.m[i + j] += a.m[i] * b.m[j];
        }
      }
    }
  }
  return out;
}

ExpPolySum ExpPolyBuilder::finish() const {
  std::vector<ExpTerm> terms;
  for (const auto& e : entries_) {
    std::vector<Complex> c = e.c;
    for (std::size_t k = 0; k < c.size(); ++k)
      if (std::abs(c[k]) <= kCancellationTolerance * e.m[k]) c[k] = 0.0;
    UniPoly p(std::move(c));
    if (p.is_zero()) continue;
    std::vector<Complex> qc(e.q.begin(), e.q.begin() + key_degree(e.q) + 1);
    terms.push_back(ExpTerm{std::move(p), UniPoly(std::move(qc))});
  }
  std::sort(terms.begin(), terms.end(), term_less);
  return ExpPolySum(ExpPolySum::Canonical{}, std::move(terms));
}

// ------------------------------------------------------------ ExpPolySum

ExpPolySum::ExpPolySum(std::vector<ExpTerm> terms) {
  ExpPolyBuilder b;
  for (const auto& t : terms) b.add_term(t.q, t.p);
  terms_ = b.finish().terms_;
}

ExpPolySum ExpPolySum::constant(Complex c) { return polynomial(UniPoly::constant(c)); }

ExpPolySum ExpPolySum::polynomial(UniPoly p) { return ExpPolySum({ExpTerm{std::move(p), UniPoly()}}); }

ExpPolySum ExpPolySum::exponential(UniPoly q, UniPoly p) {
  return ExpPolySum({ExpTerm{std::move(p), std::move(q)}});
}

int ExpPolySum::amplitude_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.p.degree());
  return d;
}

bool ExpPolySum::is_polynomial() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const ExpTerm& t) { return t.q.degree() <= 0; });
}

ExpPolySum operator+(const ExpPolySum& a, const ExpPolySum& b) {
  ExpPolyBuilder acc(a);
  acc.add(ExpPolyBuilder(b));
  return acc.finish();
}

ExpPolySum operator-(const ExpPolySum& a, const ExpPolySum& b) {
  ExpPolyBuilder acc(a);
  acc.add(ExpPolyBuilder(b), -1.0);
  return acc.finish();
}

ExpPolySum operator*(const ExpPolySum& a, const ExpPolySum& b) {
  return ExpPolyBuilder(a).times(ExpPolyBuilder(b)).finish();
}

ExpPolySum operator*(Complex c, const ExpPolySum& a) {
  ExpPolyBuilder acc;
  acc.add(ExpPolyBuilder(a), c);
  return acc.finish();
}

ExpPolySum pow(const ExpPolySum& h, int k) {
  if (k < 0) throw std::invalid_argument("negative power");
  ExpPolyBuilder result(ExpPolySum::constant(1.0));
  ExpPolyBuilder base(h);
  while (k > 0) {
    if (k & 1) result = result.times(base);
    k >>= 1;
    if (k > 0) base = base.times(base);
  }
  return result.finish();
}

// ------------------------------------------------------------ evaluation

double ScaledValue::log_abs() const {
  const double a = std::abs(mantissa);
  return a == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(a) + log_scale;
}

Complex evaluate(const ExpPolySum& h, Complex z) {
  Complex acc = 0.0;
  for (const auto& t : h.terms()) {
    const Complex qz = t.q(z);
    if (qz.real() > kOverflowExponent)
      throw EvaluationOverflow("Re q(z) = " + std::to_string(qz.real()) + " exceeds 700");
    acc += t.p(z) * std::exp(qz);
  }
  return acc;
}

namespace {

double max_real_exponent(const ExpPolySum& h, Complex z) {
  double s = -std::numeric_limits<double>::infinity();
  for (const auto& t : h.terms()) s = std::max(s, t.q(z).real());
  return std::isfinite(s) ? s : 0.0;
}

}  // namespace

ScaledValue evaluate_scaled(const ExpPolySum& h, Complex z) {
  const double s = max_real_exponent(h, z);
  Complex acc = 0.0;
  for (const auto& t : h.terms()) acc += t.p(z) * std::exp(t.q(z) - s);
  return {acc, s};
}

ScaledJet evaluate_jet(const ExpPolySum& h, Complex z) {
  const double s = max_real_exponent(h, z);
  Complex v = 0.0, dv = 0.0;
  for (const auto& t : h.terms()) {
    const Complex e = std::exp(t.q(z) - s);
    const Complex pz = t.p(z);
    v += pz * e;
    dv += (t.p.derivative()(z) + pz * t.q.derivative()(z)) * e;
  }
  return {v, dv, s};
}

double log_term_magnitude(const ExpPolySum& h, Complex z) {
  const double s = max_real_exponent(h, z);
  double acc = 0.0;
  for (const auto& t : h.terms()) acc += std::abs(t.p(z)) * std::exp(t.q(z).real() - s);
  return acc == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(acc) + s;
}

ExpPolySum derivative(const ExpPolySum& h) {
  ExpPolyBuilder b;
  for (const auto& t : h.terms()) b.add_term(t.q, t.p.derivative() + t.p * t.q.derivative());
  return b.finish();
}

std::optional<Complex> ratio_is_constant(const ExpPolySum& h1, const ExpPolySum& h2) {
  if (h2.is_zero()) throw std::invalid_argument("ratio_is_constant: denominator is identically zero");
  if (h1.is_zero()) return Complex{0.0};
  if (h1.terms().size() != h2.terms().size()) return std::nullopt;

  // Pair up terms by exponent.
  std::vector<const ExpTerm*> partner(h1.terms().size(), nullptr);
  for (std::size_t i = 0; i < h1.terms().size(); ++i) {
    for (const auto& t2 : h2.terms()) {
      if (q_close(h1.terms()[i].q, t2.q)) {
        partner[i] = &t2;
        break;
      }
    }
    if (partner[i] == nullptr) return std::nullopt;
  }

  // Ratio taken at the largest coefficient of h2.
  double best = -1.0, max1 = 0.0;
  Complex c = 0.0;
  for (std::size_t i = 0; i < partner.size(); ++i) {
    const auto& p1 = h1.terms()[i].p;
    const auto& p2 = partner[i]->p;
    for (int k = 0; k <= std::max(p1.degree(), p2.degree()); ++k) {
      max1 = std::max(max1, std::abs(p1.coeff(k)));
      if (std::abs(p2.coeff(k)) > best) {
        best = std::abs(p2.coeff(k));
        c = p1.coeff(k) / p2.coeff(k);
      }
    }
  }
  const double tol = kRatioTolerance * std::max(max1, std::abs(c) * best);
  for (std::size_t i = 0; i < partner.size(); ++i) {
    const auto& p1 = h1.terms()[i].p;
    const auto& p2 = partner[i]->p;
    for (int k = 0; k <= std::max(p1.degree(), p2.degree()); ++k)
      if (std::abs(p1.coeff(k) - c * p2.coeff(k)) > tol) return std::nullopt;
  }
  return c;
}

}  // namespace nevanlab
