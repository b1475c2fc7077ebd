#include "nevanlab/smt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "nevanlab/borel.hpp"
#include "nevanlab/errors.hpp"

namespace nevanlab {

using json = nlohmann::json;

std::string to_string(InequalityId id) {
  switch (id) {
    case InequalityId::cartan_eq2:
      return "cartan_eq2";
    case InequalityId::prop21:
      return "prop21";
    case InequalityId::theorem_b:
      return "theorem_b";
    case InequalityId::fmt:
      return "fmt";
    case InequalityId::defect:
      return "defect";
  }
  return "fmt";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::degenerate:
      return "degenerate";
  }
  return "degenerate";
}

InequalityId inequality_from_string(const std::string& s) {
  for (auto id : {InequalityId::cartan_eq2, InequalityId::prop21, InequalityId::theorem_b, InequalityId::fmt,
                  InequalityId::defect})
    if (to_string(id) == s) return id;
  throw std::invalid_argument("unknown inequality id '" + s + "'");
}

Verdict verdict_from_string(const std::string& s) {
  for (auto v : {Verdict::pass, Verdict::fail, Verdict::degenerate})
    if (to_string(v) == s) return v;
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

std::vector<double> SmtReport::margin() const {
  std::vector<double> m(lhs.size());
  for (std::size_t i = 0; i < lhs.size(); ++i) m[i] = rhs[i] + slack[i] - lhs[i];
  return m;
}

void finalize(SmtReport& rep) {
  if (rep.verdict == Verdict::degenerate && rep.lhs.empty()) {
    rep.pass_fraction = 0.0;
    return;
  }
  if (rep.lhs.size() != rep.rhs.size() || rep.lhs.size() != rep.slack.size())
    throw std::logic_error("report columns differ in length");
  int ok = 0;
  for (std::size_t i = 0; i < rep.lhs.size(); ++i)
    if (rep.lhs[i] <= rep.rhs[i] + rep.slack[i]) ++ok;
  rep.pass_fraction = rep.lhs.empty() ? 0.0 : static_cast<double>(ok) / rep.lhs.size();
  rep.verdict = rep.pass_fraction >= kPassFraction ? Verdict::pass : Verdict::fail;
}

namespace {

SlackModel slack_for(const ProjectiveCurve& f) { return f.is_rational() ? SlackModel::rational() : SlackModel{}; }

void fill_inequality(SmtReport& rep, const std::vector<double>& T, const std::vector<double>& N) {
  rep.lhs.resize(T.size());
  rep.rhs = N;
  rep.slack.resize(T.size());
  for (std::size_t i = 0; i < T.size(); ++i) {
    rep.lhs[i] = rep.lhs_coefficient * T[i];
    rep.slack[i] = rep.slack_params(T[i], rep.r[i]);
  }
  rep.vacuous = rep.lhs_coefficient <= 0.0;
  finalize(rep);
}

SmtReport degenerate(InequalityId id, std::string why, const SlackModel& s) {
  SmtReport rep;
  rep.id = id;
  rep.verdict = Verdict::degenerate;
  rep.slack_params = s;
  rep.note = std::move(why);
  return rep;
}

void require_outside(const ProjectiveCurve& f, const HomogeneousPolynomial& d) {
  if (compose_with_curve(d, f).is_zero()) throw ImageInDivisor("the curve lies inside the divisor");
}

void check_grid(const std::vector<double>& g) {
  if (g.empty()) throw std::invalid_argument("empty radius grid");
  for (double r : g)
    if (!(r > 1.0)) throw std::invalid_argument("grid radii must exceed 1");
}

}  // namespace

SmtReport run_cartan_check(const ProjectiveCurve& f, const std::vector<HomogeneousPolynomial>& hyperplanes,
                           const std::vector<double>& r_grid, int jobs) {
  check_grid(r_grid);
  const int n = f.dimension();
  const int q = static_cast<int>(hyperplanes.size());
  if (q < n + 2) throw std::invalid_argument("need q >= n + 2 = " + std::to_string(n + 2) + " hyperplanes");
  for (const auto& h : hyperplanes)
    if (h.num_vars() != n + 1 || h.degree() != 1 || h.is_zero())
      throw std::invalid_argument("every hyperplane must be a nonzero linear form in " + std::to_string(n + 1) +
                                  " variables");
  const auto gp = check_general_position(hyperplanes, n);
  if (gp.verdict != Decision::yes) throw std::invalid_argument("hyperplanes are not in general position");

  for (const auto& h : hyperplanes) require_outside(f, h);
  const SlackModel s = slack_for(f);
  if (span_dimension(f.components(), 8 * (n + 1), f.radius()) != n)
    return degenerate(InequalityId::cartan_eq2, "curve is linearly degenerate", s);

  SmtReport rep;
  rep.id = InequalityId::cartan_eq2;
  rep.slack_params = s;
  rep.r = r_grid;
  rep.lhs_coefficient = q - n - 1;
  rep.profile.r = r_grid;
  rep.profile.level = n;
  rep.profile.degree = 1;
  rep.profile.T = order_profile(f, r_grid, jobs);
  rep.profile.N_trunc.assign(r_grid.size(), 0.0);
  rep.profile.N_full.assign(r_grid.size(), 0.0);
  for (const auto& h : hyperplanes) {
    const auto nt = counting_profile(f, h, n, r_grid);
    const auto nf = counting_profile(f, h, kInfiniteLevel, r_grid);
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
      rep.profile.N_trunc[i] += nt[i];
      rep.profile.N_full[i] += nf[i];
    }
  }
  fill_inequality(rep, rep.profile.T, rep.profile.N_trunc);
  return rep;
}

SmtReport run_prop21_check(const ProjectiveCurve& f, const std::vector<HomogeneousPolynomial>& q,
                           const std::vector<int>& deltas, int d, const std::vector<double>& r_grid, int jobs) {
  check_grid(r_grid);
  const PiMap pi = build_pi_map(q, deltas, d);
  const int n = static_cast<int>(q.size()) - 1;
  if (f.dimension() != n) throw std::invalid_argument("curve and map live in different projective spaces");
  require_outside(f, pi.divisor());
  const SlackModel s = slack_for(f);
  const auto gp = check_general_position(pi.components, n);
  if (gp.verdict != Decision::yes)
    return degenerate(InequalityId::prop21,
                      "component family not certified in general position (" + to_string(gp.verdict) + ")", s);
  const ProjectiveCurve g = pushforward(pi, f);
  if (span_dimension(g.components(), 8 * (n + 1), f.radius()) != n)
    return degenerate(InequalityId::prop21, "the pushforward has a nontrivial linear relation", s);

  int delta_sum = 0;
  for (int v : deltas) delta_sum += v;
  SmtReport rep;
  rep.id = InequalityId::prop21;
  rep.slack_params = s;
  rep.lhs_coefficient = d - (n * (n + 1) + delta_sum);
  rep.profile = compute_profile(f, pi.divisor(), n, r_grid, jobs);
  rep.r = rep.profile.r;
  fill_inequality(rep, rep.profile.T, rep.profile.N_trunc);
  return rep;
}

SmtReport run_theorem_b_check(const FermatWaringData& fw, const ProjectiveCurve& f,
                              const std::vector<double>& r_grid, int jobs) {
  check_grid(r_grid);
  if (f.dimension() != fw.n) throw std::invalid_argument("curve and hypersurface live in different spaces");
  if (f.is_constant()) throw std::invalid_argument("the curve is constant");
  SmtReport rep;
  rep.id = InequalityId::theorem_b;
  rep.slack_params = slack_for(f);
  rep.lhs_coefficient = fw.d - fw.m * (fw.m - 1);
  rep.profile = compute_profile(f, fw.D, fw.m - 1, r_grid, jobs);
  rep.r = rep.profile.r;
  fill_inequality(rep, rep.profile.T, rep.profile.N_trunc);
  if (rep.vacuous) rep.note = "vacuous: d <= m(m-1)";
  if (*std::max_element(r_grid.begin(), r_grid.end()) >= 10.0) {
    std::vector<double> grid = rep.r;
    std::sort(grid.begin(), grid.end());
    const std::size_t top = (grid.size() + 3) / 4;
    double worst = 0.0;
    for (std::size_t i = 0; i < rep.r.size(); ++i)
      if (rep.r[i] >= grid[grid.size() - top])
        worst = std::max(worst, rep.profile.N_trunc[i] / (fw.d * rep.profile.T[i]));
    rep.defect_surrogate = std::clamp(1.0 - worst, 0.0, 1.0);
    rep.defect_bound = static_cast<double>(fw.m * (fw.m - 1)) / fw.d;
  }
  return rep;
}

SmtReport run_fmt_check(const ProjectiveCurve& f, const HomogeneousPolynomial& d, const std::vector<double>& r_grid,
                        int jobs) {
  check_grid(r_grid);
  SmtReport rep;
  rep.id = InequalityId::fmt;
  rep.slack_params = {0.0, 0.0, 0.0, true};
  rep.profile = compute_profile(f, d, kInfiniteLevel, r_grid, jobs);
  rep.r = rep.profile.r;
  const auto& res = rep.profile.residual;
  const std::size_t last = std::max_element(rep.r.begin(), rep.r.end()) - rep.r.begin();
  const double bound = 0.05 * d.degree() * rep.profile.T[last];
  rep.lhs_coefficient = 1.0;
  for (std::size_t i = 0; i < res.size(); ++i) {
    rep.lhs.push_back(std::abs(res[i] - res.front()));
    rep.rhs.push_back(bound);
    rep.slack.push_back(0.0);
  }
  finalize(rep);
  return rep;
}

SmtReport run_defect_check(const ProjectiveCurve& f, const HomogeneousPolynomial& d, int level, double bound,
                           const std::vector<double>& r_grid, int jobs) {
  check_grid(r_grid);
  std::vector<double> grid = r_grid;
  std::sort(grid.begin(), grid.end());
  const std::size_t top = (grid.size() + 3) / 4;
  const std::vector<double> tail(grid.end() - static_cast<long>(top), grid.end());
  SmtReport rep;
  rep.id = InequalityId::defect;
  rep.slack_params = {0.0, 0.0, 0.02, true};
  rep.profile = compute_profile(f, d, level, tail, jobs);
  rep.r = rep.profile.r;
  if (rep.profile.T.back() < 1e-9) return degenerate(InequalityId::defect, "constant curve", rep.slack_params);
  rep.lhs_coefficient = 1.0;
  for (std::size_t i = 0; i < tail.size(); ++i) {
    rep.lhs.push_back(std::clamp(1.0 - rep.profile.N_trunc[i] / (d.degree() * rep.profile.T[i]), 0.0, 1.0));
    rep.rhs.push_back(bound);
    rep.slack.push_back(0.02);
  }
  finalize(rep);
  return rep;
}

// ---------------------------------------------------------------- output

namespace {

json profile_json(const NevanlinnaProfile& p) {
  return {{"r", p.r},
          {"T", p.T},
          {"N_trunc", p.N_trunc},
          {"N_full", p.N_full},
          {"prox", p.prox},
          {"residual", p.residual},
          {"level", p.level},
          {"degree", p.degree},
          {"curve_id", p.curve_id},
          {"divisor_id", p.divisor_id}};
}

NevanlinnaProfile profile_from(const json& j) {
  NevanlinnaProfile p;
  j.at("r").get_to(p.r);
  j.at("T").get_to(p.T);
  j.at("N_trunc").get_to(p.N_trunc);
  j.at("N_full").get_to(p.N_full);
  j.at("prox").get_to(p.prox);
  j.at("residual").get_to(p.residual);
  j.at("level").get_to(p.level);
  j.at("degree").get_to(p.degree);
  j.at("curve_id").get_to(p.curve_id);
  j.at("divisor_id").get_to(p.divisor_id);
  return p;
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_finite(const SmtReport& rep) {
  auto bad = [](const std::vector<double>& v) {
    return std::any_of(v.begin(), v.end(), [](double x) { return !std::isfinite(x); });
  };
  if (bad(rep.r) || bad(rep.lhs) || bad(rep.rhs) || bad(rep.slack) || !std::isfinite(rep.pass_fraction))
    throw std::invalid_argument("report contains non-finite values");
}

}  // namespace

std::string report_json(const SmtReport& rep, int indent) {
  json j;
  j["inequality"] = to_string(rep.id);
  j["verdict"] = to_string(rep.verdict);
  j["vacuous"] = rep.vacuous;
  j["pass_fraction"] = rep.pass_fraction;
  j["pass_threshold"] = kPassFraction;
  j["lhs_coefficient"] = rep.lhs_coefficient;
  j["slack_params"] = {{"log_T_coeff", rep.slack_params.log_T_coeff},
                       {"log_r_coeff", rep.slack_params.log_r_coeff},
                       {"constant", rep.slack_params.constant},
                       {"constant_only", rep.slack_params.constant_only}};
  j["r"] = rep.r;
  j["lhs"] = rep.lhs;
  j["rhs"] = rep.rhs;
  j["slack"] = rep.slack;
  j["margin"] = rep.margin();
  j["profile"] = profile_json(rep.profile);
  j["note"] = rep.note;
  j["defect_surrogate"] = rep.defect_surrogate ? json(*rep.defect_surrogate) : json(nullptr);
  j["defect_bound"] = rep.defect_bound ? json(*rep.defect_bound) : json(nullptr);
  return j.dump(indent);
}

SmtReport report_from_json(const std::string& text) {
  const json j = json::parse(text);
  SmtReport rep;
  rep.id = inequality_from_string(j.at("inequality").get<std::string>());
  rep.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  j.at("vacuous").get_to(rep.vacuous);
  j.at("pass_fraction").get_to(rep.pass_fraction);
  j.at("lhs_coefficient").get_to(rep.lhs_coefficient);
  const auto& s = j.at("slack_params");
  s.at("log_T_coeff").get_to(rep.slack_params.log_T_coeff);
  s.at("log_r_coeff").get_to(rep.slack_params.log_r_coeff);
  s.at("constant").get_to(rep.slack_params.constant);
  s.at("constant_only").get_to(rep.slack_params.constant_only);
  j.at("r").get_to(rep.r);
  j.at("lhs").get_to(rep.lhs);
  j.at("rhs").get_to(rep.rhs);
  j.at("slack").get_to(rep.slack);
  rep.profile = profile_from(j.at("profile"));
  j.at("note").get_to(rep.note);
  if (!j.at("defect_surrogate").is_null()) rep.defect_surrogate = j["defect_surrogate"].get<double>();
  if (!j.at("defect_bound").is_null()) rep.defect_bound = j["defect_bound"].get<double>();
  return rep;
}

std::string report_csv(const SmtReport& rep) {
  std::ostringstream out;
  out << "r,lhs,rhs,slack,margin\n";
  const auto m = rep.margin();
  for (std::size_t i = 0; i < rep.lhs.size(); ++i)
    out << g17(rep.r[i]) << ',' << g17(rep.lhs[i]) << ',' << g17(rep.rhs[i]) << ',' << g17(rep.slack[i]) << ','
        << g17(m[i]) << '\n';
  return out.str();
}

void emit_report(const SmtReport& rep, const std::string& prefix) {
  require_finite(rep);
  auto write = [](const std::string& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << body;
    if (!f) throw std::runtime_error("write to " + path + " failed");
  };
  write(prefix + ".csv", report_csv(rep));
  write(prefix + ".json", report_json(rep) + "\n");
  std::ostringstream dat;
  dat << "# r margin\n";
  const auto m = rep.margin();
  for (std::size_t i = 0; i < m.size(); ++i) dat << g17(rep.r[i]) << ' ' << g17(m[i]) << '\n';
  write(prefix + ".margin.dat", dat.str());
}

}  // namespace nevanlab
