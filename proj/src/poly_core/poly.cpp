#include "nevanlab/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "tracked_terms.hpp"

namespace nevanlab {

namespace {

int exponent_sum(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

Complex monomial_value(const Exponent& e, std::span<const Complex> point) {
  Complex v = 1.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] > 0) v *= std::pow(point[i], e[i]);
  }
  return v;
}

TermMap add_maps(const TermMap& a, const TermMap& b, Complex sign) {
  detail::TrackedTerms<Exponent> acc;
  for (const auto& [e, c] : a) acc.add(e, c);
  for (const auto& [e, c] : b) acc.add(e, sign * c);
  return acc.finish<TermMap>(kCancellationTolerance);
}

TermMap mul_maps(const TermMap& a, const TermMap& b, int num_vars) {
  detail::TrackedTerms<Exponent> acc;
  Exponent e(num_vars);
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      for (int i = 0; i < num_vars; ++i) e[i] = ea[i] + eb[i];
      acc.add(e, ca * cb);
    }
  }
  return acc.finish<TermMap>(kCancellationTolerance);
}

TermMap scale_map(const TermMap& a, Complex c) {
  TermMap out;
  if (c == 0.0) return out;
  for (const auto& [e, v] : a) out.emplace(e, c * v);
  return out;
}

TermMap derivative_map(const TermMap& terms, int var) {
  TermMap out;
  for (const auto& [e, c] : terms) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    out.emplace(std::move(d), c * static_cast<double>(e[var]));
  }
  return out;
}

void check_shape(const TermMap& terms, int num_vars) {
  for (const auto& [e, c] : terms) {
    if (static_cast<int>(e.size()) != num_vars)
      throw std::invalid_argument("exponent vector length does not match num_vars");
    for (int k : e)
      if (k < 0) throw std::invalid_argument("negative exponent");
  }
}

TermMap drop_zeros(TermMap terms) {
  std::erase_if(terms, [](const auto& kv) { return kv.second == 0.0; });
  return terms;
}

}  // namespace

// ---------------------------------------------------------------- UniPoly

UniPoly::UniPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

UniPoly UniPoly::constant(Complex c) { return UniPoly({c}); }

UniPoly UniPoly::monomial(Complex c, int power) {
  if (power < 0) throw std::invalid_argument("negative power");
  std::vector<Complex> v(power + 1, 0.0);
  v[power] = c;
  return UniPoly(std::move(v));
}

Complex UniPoly::coeff(int k) const {
  return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : Complex{};
}

Complex UniPoly::operator()(Complex z) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
  return UniPoly(std::move(d));
}

namespace {

UniPoly combine(const UniPoly& a, const UniPoly& b, double sign) {
  const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex x = a.coeff(static_cast<int>(k));
    const Complex y = sign * b.coeff(static_cast<int>(k));
    const Complex s = x + y;
    out[k] = (std::abs(s) <= kCancellationTolerance * (std::abs(x) + std::abs(y))) ? Complex{} : s;
  }
  return UniPoly(std::move(out));
}

}  // namespace

UniPoly operator+(const UniPoly& a, const UniPoly& b) { return combine(a, b, 1.0); }
UniPoly operator-(const UniPoly& a, const UniPoly& b) { return combine(a, b, -1.0); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<Complex> out(x.size() + y.size() - 1);
  std::vector<double> mag(out.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      out[i + j] += x[i] * y[j];
      mag[i + j] += std::abs(x[i]) * std::abs(y[j]);
    }
  }
  for (std::size_t k = 0; k < out.size(); ++k)
    if (std::abs(out[k]) <= kCancellationTolerance * mag[k]) out[k] = 0.0;
  return UniPoly(std::move(out));
}

UniPoly operator*(Complex c, const UniPoly& a) {
  if (c == 0.0) return {};
  std::vector<Complex> out = a.coeffs();
  for (auto& v : out) v *= c;
  return UniPoly(std::move(out));
}

// ---------------------------------------------------- HomogeneousPolynomial

HomogeneousPolynomial::HomogeneousPolynomial(int num_vars, int degree)
    : HomogeneousPolynomial(num_vars, degree, {}) {}

HomogeneousPolynomial::HomogeneousPolynomial(int num_vars, int degree, TermMap terms)
    : num_vars_(num_vars), degree_(degree), terms_(drop_zeros(std::move(terms))) {
  if (num_vars < 1) throw std::invalid_argument("num_vars must be at least 1");
  if (degree < 0) throw std::invalid_argument("degree must be nonnegative");
  check_shape(terms_, num_vars);
  for (const auto& [e, c] : terms_) {
    if (exponent_sum(e) != degree)
      throw std::invalid_argument("term degree does not match declared degree " +
                                  std::to_string(degree));
  }
}

HomogeneousPolynomial HomogeneousPolynomial::variable(int num_vars, int index) {
  if (index < 0 || index >= num_vars) throw std::out_of_range("variable index");
  Exponent e(num_vars, 0);
  e[index] = 1;
  return HomogeneousPolynomial(num_vars, 1, {{e, 1.0}});
}

HomogeneousPolynomial HomogeneousPolynomial::constant(int num_vars, Complex c) {
  return HomogeneousPolynomial(num_vars, 0, {{Exponent(num_vars, 0), c}});
}

HomogeneousPolynomial HomogeneousPolynomial::monomial(Exponent exponent, Complex c) {
  const int nv = static_cast<int>(exponent.size());
  const int deg = exponent_sum(exponent);
  return HomogeneousPolynomial(nv, deg, {{std::move(exponent), c}});
}

HomogeneousPolynomial HomogeneousPolynomial::linear_form(std::span<const Complex> coeffs) {
  const int nv = static_cast<int>(coeffs.size());
  TermMap t;
  for (int i = 0; i < nv; ++i) {
    Exponent e(nv, 0);
    e[i] = 1;
    t.emplace(std::move(e), coeffs[i]);
  }
  return HomogeneousPolynomial(nv, 1, std::move(t));
}

Complex HomogeneousPolynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Complex{} : it->second;
}

HomogeneousPolynomial operator+(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
  if (a.num_vars_ != b.num_vars_ || a.degree_ != b.degree_)
    throw std::invalid_argument("adding homogeneous polynomials of different shape");
  return HomogeneousPolynomial(a.num_vars_, a.degree_, add_maps(a.terms_, b.terms_, 1.0));
}

HomogeneousPolynomial operator-(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
  if (a.num_vars_ != b.num_vars_ || a.degree_ != b.degree_)
    throw std::invalid_argument("subtracting homogeneous polynomials of different shape");
  return HomogeneousPolynomial(a.num_vars_, a.degree_, add_maps(a.terms_, b.terms_, -1.0));
}

HomogeneousPolynomial operator*(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
  if (a.num_vars_ != b.num_vars_)
    throw std::invalid_argument("multiplying polynomials in different variable counts");
  return HomogeneousPolynomial(a.num_vars_, a.degree_ + b.degree_,
                               mul_maps(a.terms_, b.terms_, a.num_vars_));
}

HomogeneousPolynomial operator*(Complex c, const HomogeneousPolynomial& a) {
  return HomogeneousPolynomial(a.num_vars_, a.degree_, scale_map(a.terms_, c));
}

HomogeneousPolynomial pow(const HomogeneousPolynomial& p, int k) {
  if (k < 0) throw std::invalid_argument("negative power");
  HomogeneousPolynomial result = HomogeneousPolynomial::constant(p.num_vars(), 1.0);
  HomogeneousPolynomial base = p;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

// --------------------------------------------------------- AffinePolynomial

AffinePolynomial::AffinePolynomial(int num_vars) : AffinePolynomial(num_vars, {}) {}

AffinePolynomial::AffinePolynomial(int num_vars, TermMap terms)
    : num_vars_(num_vars), terms_(drop_zeros(std::move(terms))) {
  if (num_vars < 1) throw std::invalid_argument("num_vars must be at least 1");
  check_shape(terms_, num_vars);
}

AffinePolynomial AffinePolynomial::variable(int num_vars, int index) {
  if (index < 0 || index >= num_vars) throw std::out_of_range("variable index");
  Exponent e(num_vars, 0);
  e[index] = 1;
  return AffinePolynomial(num_vars, {{e, 1.0}});
}

AffinePolynomial AffinePolynomial::constant(int num_vars, Complex c) {
  return AffinePolynomial(num_vars, {{Exponent(num_vars, 0), c}});
}

Complex AffinePolynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Complex{} : it->second;
}

int AffinePolynomial::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, exponent_sum(e));
  return d;
}

int AffinePolynomial::degree_in(int var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.at(var));
  return d;
}

AffinePolynomial operator+(const AffinePolynomial& a, const AffinePolynomial& b) {
  if (a.num_vars_ != b.num_vars_) throw std::invalid_argument("variable count mismatch");
  return AffinePolynomial(a.num_vars_, add_maps(a.terms_, b.terms_, 1.0));
}

AffinePolynomial operator-(const AffinePolynomial& a, const AffinePolynomial& b) {
  if (a.num_vars_ != b.num_vars_) throw std::invalid_argument("variable count mismatch");
  return AffinePolynomial(a.num_vars_, add_maps(a.terms_, b.terms_, -1.0));
}

AffinePolynomial operator*(const AffinePolynomial& a, const AffinePolynomial& b) {
  if (a.num_vars_ != b.num_vars_) throw std::invalid_argument("variable count mismatch");
  return AffinePolynomial(a.num_vars_, mul_maps(a.terms_, b.terms_, a.num_vars_));
}

AffinePolynomial operator*(Complex c, const AffinePolynomial& a) {
  return AffinePolynomial(a.num_vars_, scale_map(a.terms_, c));
}

AffinePolynomial pow(const AffinePolynomial& p, int k) {
  if (k < 0) throw std::invalid_argument("negative power");
  AffinePolynomial result = AffinePolynomial::constant(p.num_vars(), 1.0);
  AffinePolynomial base = p;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------- free ops

Complex eval(const HomogeneousPolynomial& p, std::span<const Complex> point) {
  if (static_cast<int>(point.size()) != p.num_vars())
    throw std::invalid_argument("point dimension does not match num_vars");
  Complex acc = 0.0;
  for (const auto& [e, c] : p.terms()) acc += c * monomial_value(e, point);
  return acc;
}

Complex eval(const AffinePolynomial& p, std::span<const Complex> point) {
  if (static_cast<int>(point.size()) != p.num_vars())
    throw std::invalid_argument("point dimension does not match num_vars");
  Complex acc = 0.0;
  for (const auto& [e, c] : p.terms()) acc += c * monomial_value(e, point);
  return acc;
}

HomogeneousPolynomial partial_derivative(const HomogeneousPolynomial& p, int var) {
  if (var < 0 || var >= p.num_vars()) throw std::out_of_range("partial_derivative variable index");
  return HomogeneousPolynomial(p.num_vars(), std::max(p.degree() - 1, 0),
                               derivative_map(p.terms(), var));
}

AffinePolynomial partial_derivative(const AffinePolynomial& p, int var) {
  if (var < 0 || var >= p.num_vars()) throw std::out_of_range("partial_derivative variable index");
  return AffinePolynomial(p.num_vars(), derivative_map(p.terms(), var));
}

double max_coeff_norm(const HomogeneousPolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("max_coeff_norm of the zero polynomial");
  double m = 0.0;
  for (const auto& [e, c] : p.terms()) m = std::max(m, std::abs(c));
  return m;
}

AffinePolynomial dehomogenize(const HomogeneousPolynomial& p, int var) {
  if (var < 0 || var >= p.num_vars()) throw std::out_of_range("dehomogenize variable index");
  const int nv = p.num_vars() - 1;
  if (nv == 0) {
    return p.is_zero() ? AffinePolynomial(1) : AffinePolynomial::constant(1, p.terms().begin()->second);
  }
  detail::TrackedTerms<Exponent> acc;
  for (const auto& [e, c] : p.terms()) {
    Exponent r;
    r.reserve(nv);
    for (int i = 0; i < p.num_vars(); ++i)
      if (i != var) r.push_back(e[i]);
    acc.add(r, c);
  }
  return AffinePolynomial(nv, acc.finish<TermMap>(0.0));
}

HomogeneousPolynomial homogenize(const AffinePolynomial& p) {
  const int d = std::max(p.total_degree(), 0);
  TermMap t;
  for (const auto& [e, c] : p.terms()) {
    Exponent h = e;
    h.push_back(d - exponent_sum(e));
    t.emplace(std::move(h), c);
  }
  return HomogeneousPolynomial(p.num_vars() + 1, d, std::move(t));
}

UniPoly restrict_bivariate(const AffinePolynomial& p, int keep, Complex value) {
  if (p.num_vars() != 2) throw std::invalid_argument("restrict_bivariate needs two variables");
  const int other = 1 - keep;
  std::vector<Complex> c(std::max(p.degree_in(keep), 0) + 1, 0.0);
  for (const auto& [e, v] : p.terms()) c[e[keep]] += v * std::pow(value, e[other]);
  return UniPoly(std::move(c));
}

namespace {

// Coefficients of p in `var`, padded to the formal degree, evaluated at the
// other variable = u.
std::vector<Complex> fiber_coeffs(const AffinePolynomial& p, int var, Complex u, int formal) {
  std::vector<Complex> c(formal + 1, 0.0);
  const int other = 1 - var;
  for (const auto& [e, v] : p.terms()) c[e[var]] += v * std::pow(u, e[other]);
  return c;
}

}  // namespace

AffinePolynomial resultant_bivariate(const AffinePolynomial& p, const AffinePolynomial& q, int var) {
  if (p.num_vars() != 2 || q.num_vars() != 2)
    throw std::invalid_argument("resultant_bivariate needs bivariate inputs");
  if (var != 0 && var != 1) throw std::out_of_range("resultant variable must be 0 or 1");
  if (p.is_zero() || q.is_zero())
    throw std::invalid_argument("resultant of an identically zero polynomial");
  const int other = 1 - var;
  const int m = p.degree_in(var);
  const int n = q.degree_in(var);
  const int size = m + n;
  if (size == 0) return AffinePolynomial::constant(2, 1.0);

  const int bound = n * std::max(p.degree_in(other), 0) + m * std::max(q.degree_in(other), 0);
  const int samples = bound + 1;
  std::vector<Complex> values(samples);
  double hadamard_max = 0.0;
  Eigen::MatrixXcd syl(size, size);
  for (int k = 0; k < samples; ++k) {
    const Complex u = std::polar(1.0, 2.0 * std::numbers::pi * k / samples);
    const auto pc = fiber_coeffs(p, var, u, m);
    const auto qc = fiber_coeffs(q, var, u, n);
    syl.setZero();
    for (int r = 0; r < n; ++r)
      for (int j = 0; j <= m; ++j) syl(r, r + j) = pc[m - j];
    for (int r = 0; r < m; ++r)
      for (int j = 0; j <= n; ++j) syl(n + r, r + j) = qc[n - j];
    double h = 1.0;
    for (int r = 0; r < size; ++r) h *= syl.row(r).norm();
    hadamard_max = std::max(hadamard_max, h);
    values[k] = syl.partialPivLu().determinant();
  }

  double value_max = 0.0;
  for (const auto& v : values) value_max = std::max(value_max, std::abs(v));
  if (value_max <= 1e-12 * hadamard_max) return AffinePolynomial(2);

  std::vector<Complex> coeffs(samples);
  for (int j = 0; j < samples; ++j) {
    Complex acc = 0.0;
    for (int k = 0; k < samples; ++k)
      acc += values[k] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j) * k / samples);
    coeffs[j] = acc / static_cast<double>(samples);
  }
  double cmax = 0.0;
  for (const auto& c : coeffs) cmax = std::max(cmax, std::abs(c));
  TermMap t;
  for (int j = 0; j < samples; ++j) {
    if (std::abs(coeffs[j]) <= 1e-11 * cmax) continue;
    Exponent e(2, 0);
    e[other] = j;
    t.emplace(std::move(e), coeffs[j]);
  }
  return AffinePolynomial(2, std::move(t));
}

std::vector<Complex> find_roots(const UniPoly& p) {
  const int n = p.degree();
  if (n <= 0) return {};
  const auto& c = p.coeffs();
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[i] / c[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<Complex> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + n);

  // A few Newton polishing steps, kept only when they reduce |p|.
  const UniPoly dp = p.derivative();
  for (auto& z : roots) {
    for (int it = 0; it < 8; ++it) {
      const Complex f = p(z);
      const Complex df = dp(z);
      if (df == 0.0) break;
      const Complex next = z - f / df;
      if (std::abs(p(next)) >= std::abs(f)) break;
      z = next;
    }
  }
  return roots;
}

}  // namespace nevanlab
