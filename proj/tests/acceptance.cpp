// One line per acceptance criterion; exit status 1 if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "borel_oracle.hpp"
#include "grassmann_oracle.hpp"
#include "nevanlab/borel.hpp"
#include "nevanlab/geometry.hpp"
#include "nevanlab/nevanlinna.hpp"
#include "nevanlab/smt.hpp"
#include "nevanlab/zeros.hpp"

using namespace nevanlab;

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kPi = std::numbers::pi;

ExpPolySum cst(Complex c) { return ExpPolySum::constant(c); }
ExpPolySum zpow(int k) { return ExpPolySum::polynomial(UniPoly::monomial(1.0, k)); }
ExpPolySum ez(double a, Complex c = 1.0) { return ExpPolySum::exponential(UniPoly({0.0, a}), UniPoly::constant(c)); }
HomogeneousPolynomial var(int nv, int i) { return HomogeneousPolynomial::variable(nv, i); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome c1_order_functions() {
  ProjectiveCurve f({cst(1.0), zpow(1)}, 200.0);
  double worst = 0.0;
  for (double r : {2.0, 5.0, 10.0, 50.0, 100.0}) worst = std::max(worst, std::abs(order_function(f, r) - std::log(r)));
  ProjectiveCurve g({cst(1.0), ez(1.0)}, 20.0);
  double worst_e = 0.0;
  for (double r : {2.0, 5.0, 10.0}) worst_e = std::max(worst_e, std::abs(order_function(g, r) - r / kPi));
  char buf[160];
  std::snprintf(buf, sizeof buf, "max |T - log r| = %.2e, max |T - r/pi| = %.2e", worst, worst_e);
  return {worst <= 1e-6 && worst_e <= 1e-5, buf};
}

Outcome c2_fmt_residual() {
  const auto grid = make_grid(2, 20, 20);
  const auto sum3 = var(3, 0) + var(3, 1) + var(3, 2);
  struct Fixture {
    ProjectiveCurve f;
    HomogeneousPolynomial d;
    bool exact;
  };
  std::vector<Fixture> fx{
      {ProjectiveCurve({cst(1.0), zpow(1)}, 30.0), var(2, 1), true},
      {ProjectiveCurve({cst(1.0), ez(1.0)}, 30.0), var(2, 1), true},
      {ProjectiveCurve({cst(1.0), zpow(1), ez(1.0)}, 30.0), sum3, false},
      {ProjectiveCurve({cst(1.0), zpow(1), zpow(2)}, 30.0), sum3, false},
      {ProjectiveCurve({cst(1.0), ez(1.0), ez(2.0)}, 30.0), sum3, false},
  };
  bool ok = true;
  std::string detail;
  for (std::size_t k = 0; k < fx.size(); ++k) {
    const auto res = fmt_residual(fx[k].f, fx[k].d, grid);
    const auto [lo, hi] = std::minmax_element(res.begin(), res.end());
    const double range = *hi - *lo;
    const double bound = fx[k].exact ? 1e-5 : 0.05 * fx[k].d.degree() * order_function(fx[k].f, 20.0);
    ok = ok && range <= bound;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%.1e/%.1e", k ? ", " : "ranges ", range, bound);
    detail += buf;
  }
  return {ok, detail};
}

Outcome c3_argument_principle() {
  const auto z1 = zeros_in_disk(ez(1.0) - cst(1.0), 7.0);
  const std::array<Complex, 3> expect{Complex(0, -2 * kPi), Complex(0, 0), Complex(0, 2 * kPi)};
  bool ok = z1.size() == 3;
  for (const auto& [z, k] : z1) {
    bool hit = false;
    for (Complex e : expect) hit = hit || std::abs(z - e) <= 1e-9;
    ok = ok && hit && k == 1;
  }
  const auto z2 = zeros_in_disk(ExpPolySum::polynomial(UniPoly({-0.125, 0.75, -1.5, 1.0})), 1.0);
  const bool ok2 = z2.size() == 1 && z2[0].multiplicity == 3 && std::abs(z2[0].location - 0.5) < 1e-6;
  return {ok && ok2, "e^z - 1: " + std::to_string(z1.size()) + " zeros; (z - 1/2)^3: " +
                         (z2.empty() ? std::string("none") : "multiplicity " + std::to_string(z2[0].multiplicity))};
}

Outcome c4_borel() {
  std::mt19937 rng(20240601);
  int agree = 0;
  for (int t = 0; t < 50; ++t) {
    auto g = oracle::random_tuple(rng);
    if (borel_partition(g).classes == oracle::borel_classes(g)) ++agree;
  }
  // canonical fixtures, clause by clause
  std::vector<ExpPolySum> a{ez(1.0), ez(1.0, -1.0), cst(2.0), cst(-1.0)};
  std::vector<ExpPolySum> b{ez(1.0), ez(1.0, -1.0), cst(1.0), cst(-1.0)};
  std::vector<ExpPolySum> c{ez(1.0), ez(2.0), zpow(1)};
  auto ra = verify_borel_conclusions(a, borel_partition(a), BorelCase::logarithmic, 5.0);
  auto rb = verify_borel_conclusions(b, borel_partition(b), BorelCase::compact, 5.0);
  auto rc = verify_borel_conclusions(c, borel_partition(c), BorelCase::logarithmic, 5.0);
  const bool fa = ra.all_clauses() && ra.hypothesis == Hypothesis::certified_global;
  const bool fb = rb.all_clauses() && rb.hypothesis == Hypothesis::certified_global;
  const bool fc = rc.clause_i && !rc.clause_ii && rc.clause_iii && !rc.clause_iv;
  const int fixtures = fa + fb + fc;
  return {agree == 50 && fixtures == 3,
          std::to_string(agree) + "/50 tuples match the oracle, " + std::to_string(fixtures) + "/3 fixtures"};
}

// q integer lines in CP^2 with every 3x3 minor nonzero
std::vector<HomogeneousPolynomial> integer_lines(std::uint32_t seed, int q) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> u(-5, 5);
  while (true) {
    std::vector<std::array<int, 3>> c(q);
    for (auto& row : c)
      for (int& v : row) v = u(rng);
    bool ok = true;
    for (int i = 0; i < q; ++i)
      for (int j = i + 1; j < q; ++j)
        for (int k = j + 1; k < q; ++k) {
          const auto &x = c[i], &y = c[j], &z = c[k];
          const long det = static_cast<long>(x[0]) * (y[1] * z[2] - y[2] * z[1]) -
                           static_cast<long>(x[1]) * (y[0] * z[2] - y[2] * z[0]) +
                           static_cast<long>(x[2]) * (y[0] * z[1] - y[1] * z[0]);
          ok = ok && det != 0;
        }
    if (!ok) continue;
    std::vector<HomogeneousPolynomial> out;
    for (const auto& row : c) out.push_back(HomogeneousPolynomial::linear_form(std::vector<Complex>(row.begin(), row.end())));
    return out;
  }
}

ProjectiveCurve one_z_ez() { return ProjectiveCurve({cst(1.0), zpow(1), ez(1.0)}, 25.0); }

Outcome c5_cartan() {
  auto rep = run_cartan_check(one_z_ez(), integer_lines(3, 4), make_grid(2, 20, 20));
  char buf[96];
  std::snprintf(buf, sizeof buf, "verdict %s, pass fraction %.2f", to_string(rep.verdict).c_str(), rep.pass_fraction);
  return {rep.verdict == Verdict::pass && rep.pass_fraction >= kPassFraction, buf};
}

Outcome c6_theorem_b() {
  auto fw = build_fermat_waring(2, 5, 21, 1);
  auto rep = run_theorem_b_check(fw, one_z_ez(), make_grid(2, 10, 15));
  const double bound = 20.0 / 21.0;
  const bool defect_ok = rep.defect_surrogate && *rep.defect_surrogate <= bound + 0.02 && rep.defect_bound &&
                         std::abs(*rep.defect_bound - bound) < 1e-15;
  char buf[128];
  std::snprintf(buf, sizeof buf, "verdict %s, pass fraction %.2f, defect surrogate %.4f (bound %.4f)",
                to_string(rep.verdict).c_str(), rep.pass_fraction, rep.defect_surrogate.value_or(NAN), bound);
  return {rep.verdict == Verdict::pass && defect_ok, buf};
}

AffinePolynomial X() { return AffinePolynomial::variable(2, 0); }
AffinePolynomial Y() { return AffinePolynomial::variable(2, 1); }
AffinePolynomial k2(Complex c) { return AffinePolynomial::constant(2, c); }

Outcome c7_genus() {
  auto fermat = plane_curve_genus(pow(X(), 5) + pow(Y(), 5) + k2(1.0));
  auto nodal = plane_curve_genus(pow(Y(), 2) - pow(X(), 3) - pow(X(), 2));
  const bool a = fermat.status == GenusStatus::ok && fermat.genus == 6;
  const bool b = nodal.status == GenusStatus::ok && nodal.genus == 0 && nodal.singularities.size() == 1;

  // β + X^3(X^2 + 1) + Y^3(Y^2 + 4). Affine singular points have
  // 5X^4 + 3X^2 = 0 and 5Y^4 + 12Y^2 = 0; the top form X^5 + Y^5 is
  // squarefree, so nothing at infinity. F_XY = 0, so a singular point is a
  // node iff F_XX F_YY != 0.
  const std::vector<Complex> xs{0.0, std::sqrt(Complex(-0.6)), -std::sqrt(Complex(-0.6))};
  const std::vector<Complex> ys{0.0, std::sqrt(Complex(-2.4)), -std::sqrt(Complex(-2.4))};
  auto phi = [](Complex x) { return x * x * x * (x * x + 1.0); };
  auto psi = [](Complex y) { return y * y * y * (y * y + 4.0); };
  // β = 1, and a β putting a node at (i sqrt(3/5), i sqrt(12/5))
  const std::vector<Complex> betas{1.0, -(phi(xs[1]) + psi(ys[1]))};
  bool c = true;
  std::string inst;
  for (Complex beta : betas) {
    int nodes = 0, other = 0;
    for (Complex x : xs)
      for (Complex y : ys) {
        if (std::abs(beta + phi(x) + psi(y)) > 1e-9) continue;
        const Complex hxx = 20.0 * x * x * x + 6.0 * x, hyy = 20.0 * y * y * y + 24.0 * y;
        if (std::abs(hxx * hyy) > 1e-9) ++nodes; else ++other;
      }
    auto F = AffinePolynomial::constant(2, beta) + pow(X(), 3) * (pow(X(), 2) + k2(1.0)) +
             pow(Y(), 3) * (pow(Y(), 2) + k2(4.0));
    auto r = plane_curve_genus(F);
    bool listed = static_cast<int>(r.singularities.size()) == nodes;
    for (const auto& sp : r.singularities) {
      bool hit = false;
      for (Complex x : xs)
        for (Complex y : ys)
          hit = hit || (std::abs(beta + phi(x) + psi(y)) < 1e-9 &&
                        std::abs(sp.point[0] / sp.point[2] - x) + std::abs(sp.point[1] / sp.point[2] - y) < 1e-6);
      listed = listed && hit && sp.multiplicity == 2 && sp.ordinary;
    }
    c = c && other == 0 && r.status == GenusStatus::ok && r.genus && *r.genus >= 2 && *r.genus == 6 - nodes &&
        listed;
    inst += ", instance g = " + (r.genus ? std::to_string(*r.genus) : "?") + " with " +
            std::to_string(r.singularities.size()) + "/" + std::to_string(nodes) + " nodes";
  }
  std::string detail = "fermat g = " + (fermat.genus ? std::to_string(*fermat.genus) : "?") +
                       ", nodal g = " + (nodal.genus ? std::to_string(*nodal.genus) : "?") + inst;
  return {a && b && c, detail};
}

Outcome c8_grassmann() {
  int cases = 0, agree = 0;
  for (int m = 2; m <= 4; ++m)
    for (int a = 1; a <= m - 1; ++a)
      for (int c = a; c <= m - 1; ++c)
        for (int b = 1; b <= c; ++b) {
          if (c > a + b) continue;
          ++cases;
          auto dim = oracle::fitted_dimension(m, a, b, c);
          if (dim && a * (m - a) - *dim == grassmann_gamma_codim(m, a, b, c)) ++agree;
        }
  return {cases > 0 && agree == cases, std::to_string(agree) + "/" + std::to_string(cases) + " tuples agree"};
}

Outcome c9_moduli() {
  int checked = 0, bad = 0;
  for (int n = 1; n <= 6; ++n)
    for (int m = n + 1; m <= 3 * n + 4; ++m)
      for (int r = n; r <= m; ++r) {
        ModuliCheck c;
        try {
          c = theorem_b_moduli_check(n, m, r, 0, n);
        } catch (const std::invalid_argument&) {
          continue;
        }
        ++checked;
        if (c.alpha - c.beta_bound != m - 3 * n + 2 || c.ok != (m >= 3 * n - 1)) ++bad;
      }
  // m = 3n - 2 is the first failure
  bool tight = true;
  for (int n = 2; n <= 6; ++n)
    tight = tight && !theorem_b_moduli_check(n, 3 * n - 2, n, 0, n).ok && theorem_b_moduli_check(n, 3 * n - 1, n, 0, n).ok;
  return {checked > 0 && bad == 0 && tight,
          std::to_string(checked) + " (n, m, r) checked, " + std::to_string(bad) + " mismatches"};
}

Outcome c10_theorem_a() {
  const std::uint64_t seed = 1;
  auto s5 = search_theorem_a(5, seed, SmoothnessMode::exact);
  const bool a = s5.found && s5.smoothness.smooth == Decision::yes && !s5.smoothness.heuristic &&
                 s5.components.verdict == Decision::yes;
  auto s19 = search_theorem_a(19, seed, SmoothnessMode::probabilistic);
  const bool b = s19.found && s19.smoothness.smooth == Decision::yes && s19.smoothness.starts == 200 &&
                 s19.smoothness.min_gradient_norm > kGradientThreshold;
  bool c = true;
  for (int d : {5, 19}) {
    auto w = build_remark_witness(d, 1.0, 2.0);
    auto g = pushforward(w.pi, w.curve);
    auto rep = verify_borel_conclusions(g.components(), borel_partition(g.components()), BorelCase::logarithmic,
                                        w.curve.radius());
    c = c && rep.sum == ExpPolySum::exponential(UniPoly({0.0, static_cast<double>(d)})) &&
        rep.hypothesis == Hypothesis::certified_global && rep.all_clauses();
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "d=5 seed %llu a=(%d,%d,%d,%d); d=19 a=(%d,%d,%d,%d) min |grad| %.2e; witness %s",
                static_cast<unsigned long long>(seed), s5.a[0], s5.a[1], s5.a[2], s5.a[3], s19.a[0], s19.a[1],
                s19.a[2], s19.a[3], s19.smoothness.min_gradient_norm, c ? "ok" : "failed");
  return {a && b && c, buf};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;  // 0: no limit
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, "closed-form order functions", 5, c1_order_functions},
      {2, "FMT residual boundedness", 120, c2_fmt_residual},
      {3, "argument principle exactness", 0, c3_argument_principle},
      {4, "Borel partition oracle", 0, c4_borel},
      {5, "Cartan desk check", 120, c5_cartan},
      {6, "Theorem B desk check", 600, c6_theorem_b},
      {7, "genus reproduction", 0, c7_genus},
      {8, "Grassmannian finite-field oracle", 60, c8_grassmann},
      {9, "Theorem B moduli algebra", 0, c9_moduli},
      {10, "Theorem A pipeline", 0, c10_theorem_a},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      o.pass = false;
      o.detail += " [over time limit]";
    }
    if (!o.pass) ++failed;
    std::printf("criterion %2d %s: %s (%s; %.2f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
