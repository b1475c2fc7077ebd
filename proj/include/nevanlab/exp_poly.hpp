#pragma once

#include <optional>
#include <vector>

#include "nevanlab/poly.hpp"

namespace nevanlab {

inline constexpr int kMaxExponentDegree = 3;
inline constexpr int kMaxAmplitudeDegree = 64;

/// One summand p(z)·exp(q(z)).
struct ExpTerm {
  UniPoly p;
  UniPoly q;
  friend bool operator==(const ExpTerm&, const ExpTerm&) = default;
};

/// Finite sum Σ p_j(z) exp(q_j(z)) kept in canonical form: every q_j has zero
/// constant term, the q_j are pairwise distinct, no p_j is zero, and terms are
/// ordered by (deg q, Re coefficients, Im coefficients).
class ExpPolySum {
 public:
  ExpPolySum() = default;
  // Canonicalizes. Throws DegreeOverflow if some deg q > kMaxExponentDegree.
  explicit ExpPolySum(std::vector<ExpTerm> terms);

  static ExpPolySum constant(Complex c);
  static ExpPolySum polynomial(UniPoly p);
  // p(z)·exp(q(z)).
  static ExpPolySum exponential(UniPoly q, UniPoly p = UniPoly::constant(1.0));

  const std::vector<ExpTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Largest deg p_j (-1 if zero).
  int amplitude_degree() const;
  // True when every q_j is zero, i.e. the sum is a polynomial.
  bool is_polynomial() const;

  friend ExpPolySum operator+(const ExpPolySum& a, const ExpPolySum& b);
  friend ExpPolySum operator-(const ExpPolySum& a, const ExpPolySum& b);
  friend ExpPolySum operator*(const ExpPolySum& a, const ExpPolySum& b);
  friend ExpPolySum operator*(Complex c, const ExpPolySum& a);
  friend bool operator==(const ExpPolySum&, const ExpPolySum&) = default;

 private:
  struct Canonical {};
  ExpPolySum(Canonical, std::vector<ExpTerm> terms) : terms_(std::move(terms)) {}
  friend class ExpPolyBuilder;
  std::vector<ExpTerm> terms_;
};

ExpPolySum pow(const ExpPolySum& h, int k);

/// Value represented as mantissa * exp(log_scale).
struct ScaledValue {
  Complex mantissa;
  double log_scale = 0.0;
  double log_abs() const;
};

/// h(z) and h'(z) sharing one scale: h = value·e^s, h' = deriv·e^s.
struct ScaledJet {
  Complex value;
  Complex deriv;
  double log_scale = 0.0;
};

/// Direct evaluation. Throws EvaluationOverflow when Re q_j(z) > 700.
Complex evaluate(const ExpPolySum& h, Complex z);
ScaledValue evaluate_scaled(const ExpPolySum& h, Complex z);
ScaledJet evaluate_jet(const ExpPolySum& h, Complex z);
/// Σ |p_j(z)| |exp(q_j(z))| in log scale; the natural size of h near z.
double log_term_magnitude(const ExpPolySum& h, Complex z);

ExpPolySum derivative(const ExpPolySum& h);

/// c with h1 ≡ c·h2 (relative coefficient tolerance 1e-10), or nullopt.
/// Throws std::invalid_argument when h2 is zero.
std::optional<Complex> ratio_is_constant(const ExpPolySum& h1, const ExpPolySum& h2);

}  // namespace nevanlab
