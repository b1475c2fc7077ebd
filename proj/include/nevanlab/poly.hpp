#pragma once

#include <complex>
#include <map>
#include <span>
#include <vector>

namespace nevanlab {

using Complex = std::complex<double>;
using Exponent = std::vector<int>;
using TermMap = std::map<Exponent, Complex>;

// Relative cancellation threshold: a coefficient produced by arithmetic is
// dropped when its modulus is below this fraction of the summed moduli of the
// contributions that produced it.
inline constexpr double kCancellationTolerance = 1e-12;

/// Dense univariate polynomial c[0] + c[1] z + ... with trailing zeros trimmed.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Complex> coeffs);

  static UniPoly constant(Complex c);
  static UniPoly monomial(Complex c, int power);
  static UniPoly identity() { return monomial(1.0, 1); }

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coeff(int k) const;

  Complex operator()(Complex z) const;
  UniPoly derivative() const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(Complex c, const UniPoly& a);
  friend bool operator==(const UniPoly& a, const UniPoly& b) = default;

 private:
  void trim();
  std::vector<Complex> coeffs_;
};

/// Homogeneous polynomial in num_vars variables. Every stored exponent sums
/// to degree() and no stored coefficient is zero.
class HomogeneousPolynomial {
 public:
  // Zero polynomial of the given shape.
  HomogeneousPolynomial(int num_vars, int degree);
  HomogeneousPolynomial(int num_vars, int degree, TermMap terms);

  static HomogeneousPolynomial variable(int num_vars, int index);
  static HomogeneousPolynomial constant(int num_vars, Complex c);
  static HomogeneousPolynomial monomial(Exponent exponent, Complex c = 1.0);
  static HomogeneousPolynomial linear_form(std::span<const Complex> coeffs);

  int num_vars() const { return num_vars_; }
  int degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Complex coefficient(const Exponent& e) const;

  friend HomogeneousPolynomial operator+(const HomogeneousPolynomial& a,
                                         const HomogeneousPolynomial& b);
  friend HomogeneousPolynomial operator-(const HomogeneousPolynomial& a,
                                         const HomogeneousPolynomial& b);
  friend HomogeneousPolynomial operator*(const HomogeneousPolynomial& a,
                                         const HomogeneousPolynomial& b);
  friend HomogeneousPolynomial operator*(Complex c, const HomogeneousPolynomial& a);
  friend bool operator==(const HomogeneousPolynomial&, const HomogeneousPolynomial&) = default;

 private:
  int num_vars_;
  int degree_;
  TermMap terms_;
};

HomogeneousPolynomial pow(const HomogeneousPolynomial& p, int k);

/// Polynomial in num_vars variables with no homogeneity constraint.
class AffinePolynomial {
 public:
  explicit AffinePolynomial(int num_vars);
  AffinePolynomial(int num_vars, TermMap terms);

  static AffinePolynomial variable(int num_vars, int index);
  static AffinePolynomial constant(int num_vars, Complex c);

  int num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Complex coefficient(const Exponent& e) const;
  // -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(int var) const;

  friend AffinePolynomial operator+(const AffinePolynomial& a, const AffinePolynomial& b);
  friend AffinePolynomial operator-(const AffinePolynomial& a, const AffinePolynomial& b);
  friend AffinePolynomial operator*(const AffinePolynomial& a, const AffinePolynomial& b);
  friend AffinePolynomial operator*(Complex c, const AffinePolynomial& a);
  friend bool operator==(const AffinePolynomial&, const AffinePolynomial&) = default;

 private:
  int num_vars_;
  TermMap terms_;
};

AffinePolynomial pow(const AffinePolynomial& p, int k);

Complex eval(const HomogeneousPolynomial& p, std::span<const Complex> point);
Complex eval(const AffinePolynomial& p, std::span<const Complex> point);

HomogeneousPolynomial partial_derivative(const HomogeneousPolynomial& p, int var);
AffinePolynomial partial_derivative(const AffinePolynomial& p, int var);

/// Largest coefficient modulus. Throws for the zero polynomial.
double max_coeff_norm(const HomogeneousPolynomial& p);

/// Sets z_var = 1.
AffinePolynomial dehomogenize(const HomogeneousPolynomial& p, int var);
/// Homogenizes with a new last variable.
HomogeneousPolynomial homogenize(const AffinePolynomial& p);

/// Sylvester resultant of two bivariate polynomials eliminating `var`.
///
/// The convention is Res(P, Q) = det Syl(P, Q) with the deg_var(Q) rows of P
/// coefficients on top, leading coefficient first, using the formal degrees
/// deg_var(P), deg_var(Q). Hence Res(Q, P) = (-1)^{deg P * deg Q} Res(P, Q).
/// The result is a polynomial in the remaining variable (stored in two
/// variables with exponent 0 in `var`). Computed by evaluating the Sylvester
/// determinant (LU with partial pivoting) at roots of unity and interpolating.
AffinePolynomial resultant_bivariate(const AffinePolynomial& p, const AffinePolynomial& q,
                                     int var);

/// Restriction of a bivariate polynomial to a univariate one in `keep` after
/// substituting `value` for the other variable.
UniPoly restrict_bivariate(const AffinePolynomial& p, int keep, Complex value);

/// All complex roots (with repetition) via companion-matrix eigenvalues.
std::vector<Complex> find_roots(const UniPoly& p);

}  // namespace nevanlab
