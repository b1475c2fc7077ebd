#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nevanlab/curve.hpp"
#include "nevanlab/geometry.hpp"
#include "nevanlab/nevanlinna.hpp"
#include "nevanlab/poly.hpp"

namespace nevanlab {

enum class InequalityId { cartan_eq2, prop21, theorem_b, fmt, defect };
enum class Verdict { pass, fail, degenerate };

std::string to_string(InequalityId id);
std::string to_string(Verdict v);
InequalityId inequality_from_string(const std::string& s);
Verdict verdict_from_string(const std::string& s);

inline constexpr double kPassFraction = 0.9;

struct SmtReport {
  InequalityId id = InequalityId::fmt;
  NevanlinnaProfile profile;
  std::vector<double> r;
  std::vector<double> lhs, rhs, slack;
  double lhs_coefficient = 0.0;
  double pass_fraction = 0.0;
  SlackModel slack_params;
  Verdict verdict = Verdict::degenerate;
  // lhs coefficient <= 0: the inequality holds trivially
  bool vacuous = false;
  std::string note;
  std::optional<double> defect_surrogate;
  std::optional<double> defect_bound;

  // rhs + slack - lhs
  std::vector<double> margin() const;
};

/// Fills pass_fraction and verdict from lhs, rhs and slack.
void finalize(SmtReport& rep);

/// (q - n - 1) T_f(r) <= Σ N^{[n]}_f(r, H_i) + S(r).
/// Throws std::invalid_argument for q < n + 2, non-linear members or members
/// not in general position; ImageInDivisor if f(C) lies in some H_i.
SmtReport run_cartan_check(const ProjectiveCurve& f, const std::vector<HomogeneousPolynomial>& hyperplanes,
                           const std::vector<double>& r_grid, int jobs = 0);

/// [d - (n(n+1) + Σδ)] T_f(r) <= N^{[n]}_f(r, D) + S(r) with D = Σ z_i^{d-δ_i} Q_i.
SmtReport run_prop21_check(const ProjectiveCurve& f, const std::vector<HomogeneousPolynomial>& q,
                           const std::vector<int>& deltas, int d, const std::vector<double>& r_grid, int jobs = 0);

/// (d - m(m-1)) T_f(r) <= N^{[m-1]}_f(r, D) + S(r); also records the defect
/// surrogate against m(m-1)/d when max(r_grid) >= 10.
SmtReport run_theorem_b_check(const FermatWaringData& fw, const ProjectiveCurve& f,
                              const std::vector<double>& r_grid, int jobs = 0);

/// |residual(r) - residual(r_0)| <= 0.05 deg(D) T_f(r_max), no slack.
SmtReport run_fmt_check(const ProjectiveCurve& f, const HomogeneousPolynomial& d, const std::vector<double>& r_grid,
                        int jobs = 0);

/// Pointwise 1 - N^{[level]}/(deg D · T) <= bound + 0.02 on the top quartile
/// of the grid (the radii the defect surrogate uses).
SmtReport run_defect_check(const ProjectiveCurve& f, const HomogeneousPolynomial& d, int level, double bound,
                           const std::vector<double>& r_grid, int jobs = 0);

/// Writes <prefix>.csv (r, lhs, rhs, slack, margin), <prefix>.json and
/// <prefix>.margin.dat (r, margin). Throws std::runtime_error on I/O failure
/// and std::invalid_argument for non-finite values.
void emit_report(const SmtReport& rep, const std::string& prefix);

std::string report_json(const SmtReport& rep, int indent = 2);
SmtReport report_from_json(const std::string& text);
std::string report_csv(const SmtReport& rep);

}  // namespace nevanlab
