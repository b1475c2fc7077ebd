#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nevanlab/poly.hpp"

namespace nevanlab {

/// z0^d + z1^{d-2}(z1^2 + a0 z0^2) + z2^{d-2}(z2^2 + a1 z0^2) + z3^{d-2}(a2 z1^2 + a3 z2^2 + z3^2).
/// Requires d >= 4 and every a_i != 0.
HomogeneousPolynomial build_theorem_a_surface(int d, Complex a0, Complex a1, Complex a2, Complex a3);
/// The four components z0^d, z1^{d-2}(z1^2 + a0 z0^2), ... whose sum is the surface.
std::vector<HomogeneousPolynomial> theorem_a_components(int d, Complex a0, Complex a1, Complex a2, Complex a3);
/// The existence statement is only made for d >= 19.
inline bool theorem_a_degree_in_range(int d) { return d >= 19; }

enum class BuildMode { theorem, explore };

struct FermatWaringData {
  int n = 0, m = 0, d = 0;
  std::vector<HomogeneousPolynomial> forms;
  HomogeneousPolynomial D{1, 0};
  std::uint64_t seed = 0;
  BuildMode mode = BuildMode::theorem;
  int attempts = 0;
  // smallest |det| / product of row norms over the (n+1)-subsets
  double min_normalized_minor = 0.0;
};

/// m integer linear forms in n+1 variables, coefficients uniform in [-10, 10],
/// resampled until every (n+1)-subset is independent; D = Σ h_i^d.
/// Theorem mode requires m >= 3n - 1 and d >= m^2 - m + 1. Throws Error after
/// 100 failed samples.
FermatWaringData build_fermat_waring(int n, int m, int d, std::uint64_t seed, BuildMode mode = BuildMode::theorem);

enum class Decision { yes, no, undecided };
std::string to_string(Decision d);

struct GeneralPosition {
  Decision verdict = Decision::undecided;
  // for `no`: an offending subset and a point of P^n where it vanishes
  std::vector<int> subset;
  std::vector<Complex> witness;
  std::string detail;
};

/// Every (n+1)-subset has only the trivial common zero. Linear families use
/// determinants; otherwise exact elimination over finite fields (n <= 3).
GeneralPosition check_general_position(const std::vector<HomogeneousPolynomial>& family, int n);

enum class SmoothnessMode { exact, probabilistic };

struct SmoothnessCertificate {
  SmoothnessMode mode = SmoothnessMode::exact;
  Decision smooth = Decision::undecided;
  bool heuristic = false;
  std::vector<Complex> witness;  // singular point when smooth == no
  double min_gradient_norm = 0.0;
  int starts = 0;
  int converged = 0;
  std::vector<bool> start_converged;
  std::uint64_t seed = 0;
  std::string detail;
};

inline constexpr int kExactSmoothnessMaxDegree = 8;
inline constexpr double kGradientThreshold = 1e-6;

/// exact: no common projective zero of the partials, proved chart by chart
/// (degree <= 8, else DegreeOverflow). probabilistic: multi-start minimization
/// of |∇P| on the unit-sphere slice of P = 0; never a proof.
SmoothnessCertificate smoothness_check(const HomogeneousPolynomial& p, SmoothnessMode mode, std::uint64_t seed = 42,
                                       int starts = 200);

struct TheoremASearch {
  bool found = false;
  std::array<int, 4> a{};
  std::uint64_t seed = 0;
  int tried = 0;
  SmoothnessCertificate smoothness;
  GeneralPosition components;
};

/// Random nonzero integer a_i in [-5, 5] until the surface passes the
/// smoothness check in `mode` and its components are in general position.
TheoremASearch search_theorem_a(int d, std::uint64_t seed, SmoothnessMode mode, int max_tries = 40);

struct PlaneSingularity {
  std::array<Complex, 3> point;  // [X : Y : W]
  int multiplicity = 0;
  int tangents = 0;
  bool ordinary = false;
  bool at_infinity = false;
};

enum class GenusStatus { ok, unsupported, undetermined };
std::string to_string(GenusStatus s);

struct GenusReport {
  GenusStatus status = GenusStatus::undetermined;
  int degree = 0;
  std::optional<int> genus;
  std::vector<PlaneSingularity> singularities;
  std::string detail;
};

/// Geometric genus of the projective closure of F(X, Y) = 0 when every
/// singular point (affine or at infinity) is ordinary.
GenusReport plane_curve_genus(const AffinePolynomial& f);

/// dim Gr - dim Γ = (m - c)(a + b - c) for 1 <= a <= c <= m-1, 1 <= b <= c <= a+b.
int grassmann_gamma_codim(int m, int a, int b, int c);

struct ModuliCheck {
  int alpha = 0;
  int beta_bound = 0;
  bool ok = false;
};

/// α = 2(m - n - r + 1), β <= m - κ0 - 2r + |M|.
ModuliCheck theorem_b_moduli_check(int n, int m, int r, int kappa0, int m_size);

}  // namespace nevanlab
