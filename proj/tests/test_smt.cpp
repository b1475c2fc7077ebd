#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "nevanlab/errors.hpp"
#include "nevanlab/geometry.hpp"
#include "nevanlab/smt.hpp"

using namespace nevanlab;

namespace {

ExpPolySum cst(Complex c) { return ExpPolySum::constant(c); }
ExpPolySum zpow(int k) { return ExpPolySum::polynomial(UniPoly::monomial(1.0, k)); }
ExpPolySum ez(double a = 1.0) { return ExpPolySum::exponential(UniPoly::monomial(a, 1)); }

ProjectiveCurve one_z_ez() { return ProjectiveCurve({cst(1.0), zpow(1), ez()}, 25.0); }

HomogeneousPolynomial line(std::vector<Complex> c) { return HomogeneousPolynomial::linear_form(c); }
HomogeneousPolynomial var(int nv, int i) { return HomogeneousPolynomial::variable(nv, i); }

std::vector<HomogeneousPolynomial> random_lines(std::uint32_t seed, int count) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> u(-5, 5);
  while (true) {
    std::vector<HomogeneousPolynomial> out;
    for (int i = 0; i < count; ++i) out.push_back(line({Complex(u(rng)), Complex(u(rng)), Complex(u(rng))}));
    bool zero = false;
    for (const auto& h : out) zero = zero || h.is_zero();
    if (!zero && check_general_position(out, 2).verdict == Decision::yes) return out;
  }
}

std::vector<HomogeneousPolynomial> fermat_q() { return {HomogeneousPolynomial::constant(3, 1.0),
                                                        HomogeneousPolynomial::constant(3, 1.0),
                                                        HomogeneousPolynomial::constant(3, 1.0)}; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cartan, ExponentialCurveFourLines) {
  auto rep = run_cartan_check(one_z_ez(), random_lines(3, 4), make_grid(2, 20, 20));
  EXPECT_EQ(rep.verdict, Verdict::pass) << rep.pass_fraction;
  EXPECT_GE(rep.pass_fraction, kPassFraction);
  EXPECT_DOUBLE_EQ(rep.lhs_coefficient, 1.0);
  ASSERT_EQ(rep.lhs.size(), 20u);
  for (std::size_t i = 0; i < rep.r.size(); ++i) EXPECT_NEAR(rep.lhs[i], rep.profile.T[i], 1e-12);
}

TEST(Cartan, ConstantCurveIsDegenerate) {
  ProjectiveCurve f({cst(1.0), cst(2.0)}, 10.0);
  auto rep = run_cartan_check(f, {var(2, 0), var(2, 1), line({1.0, -1.0})}, make_grid(2, 10, 5));
  EXPECT_EQ(rep.verdict, Verdict::degenerate);
}

TEST(Cartan, OneDimensionalSpecialization) {
  // zeros of e^z - 1 at 2πik; N(r, {z0 - z1}) tracks T = r/π
  ProjectiveCurve f({cst(1.0), ez()}, 25.0);
  const auto grid = make_grid(2, 10, 8);
  auto rep = run_cartan_check(f, {var(2, 0), var(2, 1), line({1.0, -1.0})}, grid);
  EXPECT_EQ(rep.verdict, Verdict::pass);
  for (std::size_t i = 0; i < rep.r.size(); ++i) {
    const double r = rep.r[i];
    double n = std::log(r);  // z = 0
    for (int k = 1; 2 * M_PI * k < r; ++k) n += 2.0 * std::log(r / (2 * M_PI * k));
    EXPECT_NEAR(rep.rhs[i], n, 1e-6) << r;
    EXPECT_NEAR(rep.lhs[i], r / M_PI, 1e-5) << r;
  }
}

TEST(Cartan, RejectsBadInput) {
  auto f = one_z_ez();
  EXPECT_THROW(run_cartan_check(f, random_lines(1, 3), make_grid(2, 5, 3)), std::invalid_argument);
  auto dep = random_lines(1, 3);
  dep.push_back(dep[0] + dep[1]);
  EXPECT_THROW(run_cartan_check(f, dep, make_grid(2, 5, 3)), std::invalid_argument);
  ProjectiveCurve g({cst(1.0), cst(1.0), ez()}, 10.0);
  auto lines = random_lines(2, 3);
  lines.push_back(line({1.0, -1.0, 0.0}));
  EXPECT_THROW(run_cartan_check(g, lines, make_grid(2, 5, 3)), ImageInDivisor);
}

TEST(DiagonalDivisorSmt, FermatCaseDegreeEight) {
  auto rep = run_prop21_check(one_z_ez(), fermat_q(), {0, 0, 0}, 8, make_grid(2, 15, 12));
  EXPECT_EQ(rep.verdict, Verdict::pass);
  EXPECT_DOUBLE_EQ(rep.lhs_coefficient, 2.0);
  EXPECT_FALSE(rep.vacuous);
}

TEST(DiagonalDivisorSmt, ThresholdIsVacuous) {
  auto rep = run_prop21_check(one_z_ez(), fermat_q(), {0, 0, 0}, 6, make_grid(2, 8, 6));
  EXPECT_EQ(rep.verdict, Verdict::pass);
  EXPECT_TRUE(rep.vacuous);
  for (double v : rep.lhs) EXPECT_EQ(v, 0.0);
}

TEST(DiagonalDivisorSmt, ProportionalComponentsDegenerate) {
  ProjectiveCurve f({cst(1.0), zpow(1), zpow(1)}, 10.0);
  auto rep = run_prop21_check(f, fermat_q(), {0, 0, 0}, 8, make_grid(2, 8, 5));
  EXPECT_EQ(rep.verdict, Verdict::degenerate);
}

TEST(TheoremB, FermatWaringDegree21) {
  auto fw = build_fermat_waring(2, 5, 21, 1);
  auto rep = run_theorem_b_check(fw, one_z_ez(), make_grid(2, 10, 15));
  EXPECT_EQ(rep.verdict, Verdict::pass);
  EXPECT_DOUBLE_EQ(rep.lhs_coefficient, 1.0);
  ASSERT_TRUE(rep.defect_surrogate && rep.defect_bound);
  EXPECT_NEAR(*rep.defect_bound, 20.0 / 21.0, 1e-15);
  EXPECT_LE(*rep.defect_surrogate, 20.0 / 21.0 + 0.02);
}

TEST(TheoremB, BelowThresholdIsVacuous) {
  auto fw = build_fermat_waring(2, 5, 20, 4, BuildMode::explore);
  auto rep = run_theorem_b_check(fw, one_z_ez(), make_grid(2, 6, 5));
  EXPECT_TRUE(rep.vacuous);
  EXPECT_EQ(rep.verdict, Verdict::pass);
  auto fw2 = build_fermat_waring(2, 5, 12, 4, BuildMode::explore);
  auto rep2 = run_theorem_b_check(fw2, one_z_ez(), make_grid(2, 6, 5));
  EXPECT_TRUE(rep2.vacuous);
  EXPECT_EQ(rep2.verdict, Verdict::pass);
  for (double v : rep2.lhs) EXPECT_LE(v, 0.0);
}

TEST(TheoremB, RationalCurveConstantSlack) {
  ProjectiveCurve f({cst(1.0), zpow(1), zpow(2)}, 60.0);
  auto fw = build_fermat_waring(2, 5, 21, 1);
  auto rep = run_theorem_b_check(fw, f, make_grid(2, 50, 10));
  EXPECT_TRUE(rep.slack_params.constant_only);
  for (double s : rep.slack) EXPECT_EQ(s, 5.0);
  EXPECT_EQ(rep.verdict, Verdict::pass);
}

TEST(Report, CsvJsonMargin) {
  auto rep = run_fmt_check(one_z_ez(), line({1.0, 1.0, 1.0}), make_grid(2, 20, 9));
  EXPECT_EQ(rep.verdict, Verdict::pass);
  const auto dir = std::filesystem::temp_directory_path() / "nevanlab_test_report";
  std::filesystem::create_directories(dir);
  const std::string prefix = (dir / "fmt").string();
  emit_report(rep, prefix);

  std::ifstream csv(prefix + ".csv");
  std::string header, row;
  std::getline(csv, header);
  EXPECT_EQ(header, "r,lhs,rhs,slack,margin");
  int rows = 0;
  while (std::getline(csv, row)) {
    if (row.empty()) continue;
    double r, l, h, s, m;
    ASSERT_EQ(std::sscanf(row.c_str(), "%lf,%lf,%lf,%lf,%lf", &r, &l, &h, &s, &m), 5);
    EXPECT_NEAR(m, h + s - l, 1e-12);
    ++rows;
  }
  EXPECT_EQ(rows, 9);

  auto back = report_from_json(slurp(prefix + ".json"));
  EXPECT_EQ(back.pass_fraction, rep.pass_fraction);
  EXPECT_EQ(back.verdict, rep.verdict);
  EXPECT_EQ(back.id, InequalityId::fmt);
  EXPECT_EQ(back.r, rep.r);
  EXPECT_EQ(back.lhs, rep.lhs);
  EXPECT_EQ(back.slack_params.constant, rep.slack_params.constant);

  int dat_rows = 0;
  std::ifstream dat(prefix + ".margin.dat");
  while (std::getline(dat, row))
    if (!row.empty() && row[0] != '#') ++dat_rows;
  EXPECT_EQ(dat_rows, 9);
  std::filesystem::remove_all(dir);
}

TEST(Report, RejectsNonFinite) {
  SmtReport rep;
  rep.r = {2.0};
  rep.lhs = {NAN};
  rep.rhs = {0.0};
  rep.slack = {0.0};
  EXPECT_THROW(emit_report(rep, "/tmp/nevanlab_nan"), std::invalid_argument);
}

TEST(Report, PassFractionInvariant) {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    SmtReport rep;
    int ok = 0;
    for (int i = 0; i < 20; ++i) {
      rep.r.push_back(2.0 + i);
      rep.lhs.push_back(u(rng));
      rep.rhs.push_back(u(rng));
      rep.slack.push_back(0.1);
      if (rep.lhs.back() <= rep.rhs.back() + 0.1) ++ok;
    }
    finalize(rep);
    EXPECT_EQ(rep.pass_fraction, ok / 20.0);
    EXPECT_EQ(rep.verdict == Verdict::pass, ok / 20.0 >= kPassFraction);
  }
}

TEST(Invariants, ScalingByNowhereZeroFactor) {
  auto f = one_z_ez();
  ProjectiveCurve g({ez(), zpow(1) * ez(), ez(2.0)}, 25.0);
  const auto grid = make_grid(2, 10, 6);
  const auto tf = order_profile(f, grid);
  const auto tg = order_profile(g, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_NEAR(tf[i], tg[i], 1e-6);
  auto a = run_cartan_check(f, random_lines(3, 4), grid);
  auto b = run_cartan_check(g, random_lines(3, 4), grid);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_NEAR(a.rhs[i], b.rhs[i], 1e-6);
}

TEST(Invariants, CsvDeterminism) {
  const auto grid = make_grid(2, 10, 6);
  auto a = run_cartan_check(one_z_ez(), random_lines(5, 5), grid);
  auto b = run_cartan_check(one_z_ez(), random_lines(5, 5), grid, 1);
  EXPECT_EQ(report_csv(a), report_csv(b));
}
