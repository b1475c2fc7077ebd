#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nevanlab/poly.hpp"

namespace nevanlab::elim {

// Prime field F_p with p = 1 mod 4, so that sqrt(-1) exists and Gaussian
// integers reduce to F_p.
struct Field {
  std::uint64_t p;
  std::uint64_t sqrt_minus_one;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }
  std::uint64_t from_int(long long v) const;
};

// The k-th largest prime below 2^31 that is 1 mod 4 (k = 0, 1, 2, ...).
Field field(int k);

using ModTerms = std::map<Exponent, std::uint64_t>;

struct ModPoly {
  int num_vars = 0;
  ModTerms terms;  // no zero coefficients

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const;
  int degree_in(int var) const;
  int total_degree() const;
};

/// Polynomial with Gaussian-integer coefficients (re, im) after scaling.
struct IntPoly {
  int num_vars = 0;
  std::map<Exponent, std::pair<long long, long long>> terms;
};

/// Scales p by the smallest integer s <= 720 that turns every coefficient
/// into a Gaussian integer (tolerance 1e-9 relative); nullopt otherwise.
std::optional<IntPoly> to_gaussian_integers(const AffinePolynomial& p);

ModPoly reduce(const IntPoly& p, const Field& f);

/// Divides out every monomial factor, keeping each variable that divided
/// every term to exponent one: x^3 y (x + y) -> x y (x + y). Same zero set.
ModPoly strip_monomial_powers(const ModPoly& p);

/// Sylvester resultant over F_p eliminating `var`, interpolated on a tensor
/// grid. Throws DegreeOverflow if a degree bound exceeds max_degree.
ModPoly resultant(const ModPoly& a, const ModPoly& b, int var, const Field& f, int max_degree = 10000);

enum class Outcome { empty, possible };

/// Pairwise-resultant elimination over the algebraic closure of F_p, in the
/// given variable order. `empty` is a proof that the system has no common
/// zero over that closure; `possible` proves nothing.
Outcome eliminate(std::vector<ModPoly> system, const std::vector<int>& order, const Field& f,
                  int max_degree = 10000);

/// Exact evaluation of a Gaussian-integer polynomial at a Gaussian-integer
/// point; nullopt on overflow of the 128-bit accumulator bound.
std::optional<std::pair<__int128, __int128>> eval_exact(const IntPoly& p,
                                                        const std::vector<std::pair<long long, long long>>& x);

}  // namespace nevanlab::elim
