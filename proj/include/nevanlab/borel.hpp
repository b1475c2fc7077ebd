#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nevanlab/curve.hpp"
#include "nevanlab/exp_poly.hpp"
#include "nevanlab/poly.hpp"

namespace nevanlab {

/// [z] -> [z_0^{d-δ_0} Q_0 : ... : z_n^{d-δ_n} Q_n].
struct PiMap {
  std::vector<HomogeneousPolynomial> components;
  int degree = 0;
  std::vector<int> deltas;
  // d <= n(n+1) + Σδ_i: outside the range where the estimate has content.
  bool below_threshold = false;

  // Σ_i components[i].
  HomogeneousPolynomial divisor() const;
};

/// Throws std::invalid_argument on length or degree mismatch (deg Q_i != δ_i,
/// δ_i < 0 or δ_i > d).
PiMap build_pi_map(const std::vector<HomogeneousPolynomial>& q, const std::vector<int>& deltas, int d);

/// g = π∘f without the reducedness check. Throws std::invalid_argument when
/// every component of g vanishes identically.
ProjectiveCurve pushforward(const PiMap& pi, const ProjectiveCurve& f);

struct BorelPartition {
  // classes[0] is I_0 (possibly empty); the rest are the nonzero classes in
  // order of their smallest index.
  std::vector<std::vector<int>> classes;
  // c_ij with g_i ≡ c_ij g_j for i, j in the same nonzero class.
  std::map<std::pair<int, int>, Complex> constants;
  // b_s = Σ_{j ∈ I_s} c_{j, i_s} per class (entry 0 unused).
  std::vector<Complex> class_sums;
  // Index into classes of the unique class with b_s != 0, if exactly one.
  std::optional<int> exceptional_class;
};

BorelPartition borel_partition(const std::vector<ExpPolySum>& g);

enum class BorelCase { logarithmic, compact };
enum class Hypothesis { certified_global, verified_to_radius, failed };

struct BorelReport {
  bool clause_i = false;
  bool clause_ii = false;
  bool clause_iii = false;
  bool clause_iv = false;
  Hypothesis hypothesis = Hypothesis::failed;
  double radius = 0.0;
  ExpPolySum sum;
  bool all_clauses() const { return clause_i && clause_ii && clause_iii && clause_iv; }
};

/// Throws std::invalid_argument when the partition does not cover exactly the
/// indices of g.
BorelReport verify_borel_conclusions(const std::vector<ExpPolySum>& g, const BorelPartition& partition,
                                     BorelCase which, double radius);

std::string to_string(Hypothesis h);

/// Projective dimension of the span of the values of g at `samples` random
/// points of the disk of radius min(3, radius): numerical rank - 1.
/// Requires samples >= 2·g.size().
int span_dimension(const std::vector<ExpPolySum>& g, int samples, double radius = 3.0, std::uint64_t seed = 42);

/// The witness of the compact-case construction: the map with components
/// z0^{d-2}(z0^2 + e1^2 z1^2 + e2^2 z2^2), z1^d, z2^d, z3^d and the curve
/// [0 : e^z : z^2 : ε z^2] with ε = exp(iπ/d), so ε^d = -1.
struct RemarkWitness {
  PiMap pi;
  ProjectiveCurve curve;
};
RemarkWitness build_remark_witness(int d, Complex e1, Complex e2, double radius = 5.0);

}  // namespace nevanlab
