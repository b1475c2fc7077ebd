// nevanlab: command-line front end.
//
// exit codes: 0 pass / success, 1 fail, 2 degenerate / undecided / numerical
// failure, 3 usage error

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nevanlab/borel.hpp"
#include "nevanlab/errors.hpp"
#include "nevanlab/geometry.hpp"
#include "nevanlab/io.hpp"
#include "nevanlab/nevanlinna.hpp"
#include "nevanlab/parallel.hpp"
#include "nevanlab/smt.hpp"

using namespace nevanlab;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0, kExitFail = 1, kExitUndecided = 2, kExitUsage = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  bool json = false;
  std::string config;
  std::uint64_t seed = 42;
  int jobs = 0;
  std::string out;

  double rmin = std::numeric_limits<double>::quiet_NaN();
  double rmax = std::numeric_limits<double>::quiet_NaN();
  int count = 0;
  std::string spacing = "log";

  std::string curve, divisor, hyperplanes, qfile, poly, family;
  int lines = 0;
  int level = -1;
  int n = 0, m = 0, d = 0, a = 0, b = 0, c = 0;
  std::vector<int> deltas;
  bool explore = false;
  std::string borel_case = "logarithmic";
  double radius = 0.0;
  std::string mode = "exact";
  int starts = 200;
  int theorem_a = 0;
};

std::vector<double> grid_for(const Options& o, bool rational) {
  const double lo = std::isnan(o.rmin) ? 2.0 : o.rmin;
  const double hi = std::isnan(o.rmax) ? (rational ? 50.0 : 10.0) : o.rmax;
  const int count = o.count > 0 ? o.count : 20;
  return make_grid(lo, hi, count, o.spacing == "linear" ? GridSpacing::linear : GridSpacing::logarithmic);
}

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::pass: return kExitPass;
    case Verdict::fail: return kExitFail;
    default: return kExitUndecided;
  }
}

int exit_for(Decision d) {
  switch (d) {
    case Decision::yes: return kExitPass;
    case Decision::no: return kExitFail;
    default: return kExitUndecided;
  }
}

ProjectiveCurve load_curve(const std::string& path, ProjectiveCurve::Check check = ProjectiveCurve::Check::reduced) {
  if (path.empty()) throw UsageError("--curve is required");
  return io::curve_from_json(io::read_file(path), check);
}

std::string prefix_for(const Options& o, const std::string& name) {
  std::filesystem::create_directories(o.out);
  return (std::filesystem::path(o.out) / name).string();
}

int print_report(const Options& o, const SmtReport& rep, const std::string& name) {
  if (!o.out.empty()) emit_report(rep, prefix_for(o, name));
  if (o.json) {
    std::cout << report_json(rep) << "\n";
    return exit_for(rep.verdict);
  }
  std::printf("%s: %s (pass fraction %.3f, lhs coefficient %g)\n", to_string(rep.id).c_str(),
              to_string(rep.verdict).c_str(), rep.pass_fraction, rep.lhs_coefficient);
  std::printf("slack S(r) = %g log(1+T) + %g log r + %g%s\n", rep.slack_params.log_T_coeff,
              rep.slack_params.log_r_coeff, rep.slack_params.constant,
              rep.slack_params.constant_only ? " (constant only)" : "");
  if (!rep.note.empty()) std::printf("note: %s\n", rep.note.c_str());
  if (rep.defect_surrogate)
    std::printf("defect surrogate %.6f, bound %.6f\n", *rep.defect_surrogate, rep.defect_bound.value_or(NAN));
  std::cout << report_csv(rep);
  return exit_for(rep.verdict);
}

std::vector<HomogeneousPolynomial> random_lines(int nv, int q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> u(-5, 5);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<HomogeneousPolynomial> out;
    bool zero = false;
    for (int i = 0; i < q; ++i) {
      std::vector<Complex> c(nv);
      for (auto& v : c) v = u(rng);
      out.push_back(HomogeneousPolynomial::linear_form(c));
      zero = zero || out.back().is_zero();
    }
    if (!zero && check_general_position(out, nv - 1).verdict == Decision::yes) return out;
  }
  throw Error("no general-position lines after 100 samples");
}

int cmd_functionals(const Options& o) {
  const auto f = load_curve(o.curve);
  if (o.divisor.empty()) throw UsageError("--divisor is required");
  const auto d = io::homogeneous_from_json(io::read_file(o.divisor));
  auto p = compute_profile(f, d, o.level < 0 ? kInfiniteLevel : o.level, grid_for(o, f.is_rational()), o.jobs);
  if (!o.out.empty()) {
    const auto pre = prefix_for(o, "functionals");
    io::write_file(pre + ".csv", io::profile_csv(p));
    io::write_file(pre + ".json", io::profile_json(p));
  }
  std::cout << (o.json ? io::profile_json(p) + "\n" : io::profile_csv(p));
  return kExitPass;
}

int cmd_fmt(const Options& o) {
  const auto f = load_curve(o.curve);
  if (o.divisor.empty()) throw UsageError("--divisor is required");
  const auto d = io::homogeneous_from_json(io::read_file(o.divisor));
  return print_report(o, run_fmt_check(f, d, grid_for(o, f.is_rational()), o.jobs), "fmt");
}

int cmd_cartan(const Options& o) {
  const auto f = load_curve(o.curve);
  std::vector<HomogeneousPolynomial> h;
  if (!o.hyperplanes.empty())
    h = io::homogeneous_list_from_json(io::read_file(o.hyperplanes));
  else
    h = random_lines(f.dimension() + 1, o.lines > 0 ? o.lines : f.dimension() + 2, o.seed);
  return print_report(o, run_cartan_check(f, h, grid_for(o, f.is_rational()), o.jobs), "cartan");
}

int cmd_prop21(const Options& o) {
  const auto f = load_curve(o.curve);
  const int n = f.dimension();
  std::vector<int> deltas = o.deltas.empty() ? std::vector<int>(n + 1, 0) : o.deltas;
  std::vector<HomogeneousPolynomial> q;
  if (!o.qfile.empty()) {
    q = io::homogeneous_list_from_json(io::read_file(o.qfile));
  } else {
    for (int v : deltas)
      if (v != 0) throw UsageError("--q is required unless every delta is 0");
    q.assign(n + 1, HomogeneousPolynomial::constant(n + 1, 1.0));
  }
  if (o.d <= 0) throw UsageError("--d is required");
  return print_report(o, run_prop21_check(f, q, deltas, o.d, grid_for(o, f.is_rational()), o.jobs), "prop21");
}

int cmd_theorem_b(const Options& o) {
  const auto f = load_curve(o.curve);
  if (o.n <= 0 || o.m <= 0 || o.d <= 0) throw UsageError("--n, --m and --d are required");
  const auto fw = build_fermat_waring(o.n, o.m, o.d, o.seed, o.explore ? BuildMode::explore : BuildMode::theorem);
  auto rep = run_theorem_b_check(fw, f, grid_for(o, f.is_rational()), o.jobs);
  if (!o.json) {
    std::printf("forms (seed %llu):", static_cast<unsigned long long>(o.seed));
    for (const auto& h : fw.forms) {
      std::printf(" (");
      for (int i = 0; i <= fw.n; ++i) {
        Exponent e(fw.n + 1, 0);
        e[i] = 1;
        std::printf(i ? ", %g" : "%g", h.coefficient(e).real());
      }
      std::printf(")");
    }
    std::printf("\n");
  }
  return print_report(o, rep, "theoremb");
}

int cmd_borel(const Options& o) {
  const auto f = load_curve(o.curve, ProjectiveCurve::Check::skip);
  BorelCase which;
  if (o.borel_case == "logarithmic")
    which = BorelCase::logarithmic;
  else if (o.borel_case == "compact")
    which = BorelCase::compact;
  else
    throw UsageError("--case must be logarithmic or compact");
  const auto part = borel_partition(f.components());
  const auto rep = verify_borel_conclusions(f.components(), part, which, o.radius > 0 ? o.radius : f.radius());
  const std::string doc = io::partition_json(part, rep);
  if (!o.out.empty()) io::write_file(prefix_for(o, "borel") + ".json", doc);
  if (o.json) {
    std::cout << doc << "\n";
  } else {
    std::printf("classes:");
    for (std::size_t s = 0; s < part.classes.size(); ++s) {
      std::printf(" %s{", s == 0 ? "I0=" : "");
      for (std::size_t k = 0; k < part.classes[s].size(); ++k) std::printf(k ? ",%d" : "%d", part.classes[s][k]);
      std::printf("}");
    }
    std::printf("\nclauses: i=%d ii=%d iii=%d iv=%d, hypothesis %s\n", rep.clause_i, rep.clause_ii, rep.clause_iii,
                rep.clause_iv, to_string(rep.hypothesis).c_str());
  }
  if (rep.hypothesis == Hypothesis::failed) return kExitUndecided;
  return rep.all_clauses() ? kExitPass : kExitFail;
}

int cmd_genus(const Options& o) {
  if (o.curve.empty()) throw UsageError("--curve is required");
  const std::string text = io::read_file(o.curve);
  const auto affine = io::affine_from_json(text);
  AffinePolynomial f = affine;
  if (affine.num_vars() == 3)
    f = dehomogenize(io::homogeneous_from_json(text), 2);
  else if (affine.num_vars() != 2)
    throw UsageError("--curve: expected a polynomial in 2 variables (or a form in 3)");
  const auto g = plane_curve_genus(f);
  if (!o.out.empty()) io::write_file(prefix_for(o, "genus") + ".json", io::genus_json(g));
  if (o.json) {
    std::cout << io::genus_json(g) << "\n";
  } else if (g.status == GenusStatus::ok) {
    if (g.singularities.empty()) {
      std::printf("g = %d, smooth\n", *g.genus);
    } else {
      std::printf("g = %d, %zu ordinary singularit%s\n", *g.genus, g.singularities.size(),
                  g.singularities.size() == 1 ? "y" : "ies");
      for (const auto& s : g.singularities)
        std::printf("  [%.6g%+.6gi : %.6g%+.6gi : %.6g%+.6gi] multiplicity %d%s\n", s.point[0].real(),
                    s.point[0].imag(), s.point[1].real(), s.point[1].imag(), s.point[2].real(), s.point[2].imag(),
                    s.multiplicity, s.at_infinity ? " (at infinity)" : "");
    }
  } else {
    std::printf("%s: %s\n", to_string(g.status).c_str(), g.detail.c_str());
  }
  return g.status == GenusStatus::ok ? kExitPass : kExitUndecided;
}

SmoothnessMode parse_mode(const std::string& s) {
  if (s == "exact") return SmoothnessMode::exact;
  if (s == "probabilistic") return SmoothnessMode::probabilistic;
  throw UsageError("--mode must be exact or probabilistic");
}

int cmd_smoothness(const Options& o) {
  const SmoothnessMode mode = parse_mode(o.mode);
  if (o.theorem_a > 0) {
    const auto s = search_theorem_a(o.theorem_a, o.seed, mode);
    json j{{"object", "theorem_a_surface"},
           {"d", o.theorem_a},
           {"found", s.found},
           {"a", s.a},
           {"seed", s.seed},
           {"tried", s.tried},
           {"smoothness", json::parse(io::certificate_json(s.smoothness, "surface"))},
           {"general_position", json::parse(io::certificate_json(s.components, "components"))}};
    if (!o.out.empty()) io::write_file(prefix_for(o, "theorem_a") + ".json", j.dump(2));
    if (o.json) {
      std::cout << j.dump(2) << "\n";
    } else if (s.found) {
      std::printf("d = %d: a = (%d, %d, %d, %d) after %d tries, smooth %s%s, components in general position %s\n",
                  o.theorem_a, s.a[0], s.a[1], s.a[2], s.a[3], s.tried, to_string(s.smoothness.smooth).c_str(),
                  s.smoothness.heuristic ? " (heuristic)" : "", to_string(s.components.verdict).c_str());
      if (s.smoothness.heuristic)
        std::printf("min gradient norm %.3g over %d starts (%d converged)\n", s.smoothness.min_gradient_norm,
                    s.smoothness.starts, s.smoothness.converged);
    } else {
      std::printf("d = %d: no coefficients found in %d tries\n", o.theorem_a, s.tried);
    }
    return s.found ? kExitPass : kExitUndecided;
  }
  if (o.poly.empty()) throw UsageError("--poly or --theorem-a is required");
  const auto p = io::homogeneous_from_json(io::read_file(o.poly));
  const auto c = smoothness_check(p, mode, o.seed, o.starts);
  const std::string doc = io::certificate_json(c, o.poly);
  if (!o.out.empty()) io::write_file(prefix_for(o, "smoothness") + ".json", doc);
  if (o.json) {
    std::cout << doc << "\n";
  } else {
    std::printf("smooth: %s (%s%s)\n", to_string(c.smooth).c_str(), o.mode.c_str(), c.heuristic ? ", heuristic" : "");
    if (mode == SmoothnessMode::probabilistic)
      std::printf("min gradient norm %.3g over %d starts (%d converged)\n", c.min_gradient_norm, c.starts,
                  c.converged);
    if (!c.detail.empty()) std::printf("%s\n", c.detail.c_str());
  }
  return exit_for(c.smooth);
}

int cmd_general_position(const Options& o) {
  if (o.family.empty()) throw UsageError("--family is required");
  const auto fam = io::homogeneous_list_from_json(io::read_file(o.family));
  if (fam.empty()) throw UsageError("--family: empty list");
  const int n = o.n > 0 ? o.n : fam[0].num_vars() - 1;
  const auto g = check_general_position(fam, n);
  const std::string doc = io::certificate_json(g, o.family);
  if (!o.out.empty()) io::write_file(prefix_for(o, "general_position") + ".json", doc);
  if (o.json) {
    std::cout << doc << "\n";
  } else {
    std::printf("general position: %s\n", to_string(g.verdict).c_str());
    if (!g.subset.empty()) {
      std::printf("subset:");
      for (int i : g.subset) std::printf(" %d", i);
      std::printf("\n");
    }
    if (!g.detail.empty()) std::printf("%s\n", g.detail.c_str());
  }
  return exit_for(g.verdict);
}

int cmd_grassmann(const Options& o) {
  const int codim = grassmann_gamma_codim(o.m, o.a, o.b, o.c);
  if (o.json)
    std::cout << json{{"m", o.m}, {"a", o.a}, {"b", o.b}, {"c", o.c}, {"codim", codim}}.dump() << "\n";
  else
    std::printf("%d\n", codim);
  return kExitPass;
}

// Config values become extra command-line arguments for options the command
// line left unset. Unknown keys are usage errors. Relative input paths are
// taken relative to the config file.
std::vector<std::string> config_args(CLI::App& app, CLI::App* sub, const json& cfg,
                                     const std::filesystem::path& base) {
  static const std::vector<std::string> path_keys{"curve", "divisor", "hyperplanes", "q", "poly", "family", "out"};
  std::vector<std::string> extra;
  auto add = [&](const std::string& key, const json& v) {
    CLI::Option* opt = sub ? sub->get_option_no_throw("--" + key) : nullptr;
    if (!opt) opt = app.get_option_no_throw("--" + key);
    if (!opt) throw UsageError("config: unknown field '" + key + "'");
    if (opt->count() > 0) return;
    const std::string flag = "--" + key;
    if (v.is_boolean()) {
      if (opt->get_expected_min() != 0) throw UsageError("config: field '" + key + "' expects a value");
      if (v.get<bool>()) extra.push_back(flag);
      return;
    }
    std::string value;
    if (v.is_string()) {
      value = v.get<std::string>();
      const bool is_path = std::find(path_keys.begin(), path_keys.end(), key) != path_keys.end();
      if (is_path && std::filesystem::path(value).is_relative()) value = (base / value).string();
    } else if (v.is_number()) {
      value = v.dump();
    } else if (v.is_array()) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) throw UsageError("config: field '" + key + "' must hold numbers");
        value += (i ? "," : "") + v[i].dump();
      }
    } else {
      throw UsageError("config: field '" + key + "' has an unsupported type");
    }
    extra.push_back(flag);
    extra.push_back(value);
  };
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    if (it.key() == "command") continue;
    if (it.key() == "grid") {
      if (!it->is_object()) throw UsageError("config: field 'grid' must be an object");
      for (auto g = it->begin(); g != it->end(); ++g) {
        const std::string& k = g.key();
        if (k == "min") add("rmin", *g);
        else if (k == "max") add("rmax", *g);
        else if (k == "count" || k == "spacing") add(k, *g);
        else throw UsageError("config: unknown field 'grid." + k + "'");
      }
      continue;
    }
    add(it.key(), *it);
  }
  return extra;
}

void add_grid(CLI::App* s, Options& o) {
  s->add_option("--rmin", o.rmin, "smallest radius (> 1)");
  s->add_option("--rmax", o.rmax, "largest radius");
  s->add_option("--count", o.count, "grid points (>= 2)");
  s->add_option("--spacing", o.spacing, "log or linear")->check(CLI::IsMember({"log", "linear"}));
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"nevanlab: value distribution experiments for holomorphic curves"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  app.add_flag("--json", o.json, "emit JSON on stdout");
  app.add_option("--config", o.config, "JSON file with option values; flags win");
  auto* seed_opt = app.add_option("--seed", o.seed, "random seed (fallback: NEVANLAB_SEED, then 42)");
  app.add_option("--jobs", o.jobs, "worker cap")->check(CLI::NonNegativeNumber);
  app.add_option("--out", o.out, "directory for report files");

  auto* functionals = app.add_subcommand("functionals", "T, N, m and FMT residual on a grid");
  functionals->add_option("--curve", o.curve, "curve JSON");
  functionals->add_option("--divisor", o.divisor, "polynomial JSON");
  functionals->add_option("--level", o.level, "truncation level (default: none)");
  add_grid(functionals, o);

  auto* fmt = app.add_subcommand("fmt-check", "first main theorem residual stays bounded");
  fmt->add_option("--curve", o.curve, "curve JSON");
  fmt->add_option("--divisor", o.divisor, "polynomial JSON");
  add_grid(fmt, o);

  auto* cartan = app.add_subcommand("cartan-check", "Cartan's second main theorem for hyperplanes");
  cartan->add_option("--curve", o.curve, "curve JSON");
  cartan->add_option("--hyperplanes", o.hyperplanes, "JSON array of linear forms");
  cartan->add_option("--lines", o.lines, "number of random integer lines (default n + 2)");
  add_grid(cartan, o);

  auto* prop21 = app.add_subcommand("prop21-check", "second main theorem for D = Σ z_i^{d-δ_i} Q_i");
  prop21->add_option("--curve", o.curve, "curve JSON");
  prop21->add_option("--d", o.d, "degree of D");
  prop21->add_option("--deltas", o.deltas, "degrees of the Q_i, comma separated")->delimiter(',');
  prop21->add_option("--q", o.qfile, "JSON array of the Q_i (default: all 1)");
  add_grid(prop21, o);

  auto* thb = app.add_subcommand("theoremb-check", "second main theorem for a Fermat-Waring hypersurface");
  thb->add_option("--curve", o.curve, "curve JSON");
  thb->add_option("--n", o.n, "projective dimension");
  thb->add_option("--m", o.m, "number of linear forms");
  thb->add_option("--d", o.d, "degree");
  thb->add_flag("--explore", o.explore, "allow m < 3n - 1 or d <= m(m-1)");
  add_grid(thb, o);

  auto* borel = app.add_subcommand("borel-partition", "partition of Σ g_i = 0 into proportional classes");
  borel->add_option("--curve", o.curve, "curve JSON holding the g_i");
  borel->add_option("--case", o.borel_case, "logarithmic or compact");
  borel->add_option("--radius", o.radius, "radius for the nonvanishing check (default: curve radius)");

  auto* genus = app.add_subcommand("genus", "geometric genus of a plane curve with ordinary singularities");
  genus->add_option("--curve", o.curve, "polynomial JSON in X, Y (or a form in X, Y, W)");

  auto* smooth = app.add_subcommand("smoothness", "smoothness of a projective hypersurface");
  smooth->add_option("--poly", o.poly, "homogeneous polynomial JSON");
  smooth->add_option("--mode", o.mode, "exact or probabilistic");
  smooth->add_option("--starts", o.starts, "starts for the probabilistic mode")->check(CLI::PositiveNumber);
  smooth->add_option("--theorem-a", o.theorem_a, "search coefficients of the degree-d surface family instead");

  auto* gp = app.add_subcommand("general-position", "general position of a family of hypersurfaces");
  gp->add_option("--family", o.family, "JSON array of homogeneous polynomials");
  gp->add_option("--n", o.n, "projective dimension (default: vars - 1)");

  auto* grass = app.add_subcommand("grassmann", "codimension of the incidence set in Gr_{m,a}");
  grass->add_option("--m", o.m, "ambient dimension")->required();
  grass->add_option("--a", o.a, "codimension of V")->required();
  grass->add_option("--b", o.b, "codimension of Q")->required();
  grass->add_option("--c", o.c, "bound on codim(V ∩ Q)")->required();

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
      app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
      if (!o.config.empty()) {
        json cfg;
        try {
          cfg = json::parse(io::read_file(o.config));
        } catch (const json::parse_error& e) {
          throw UsageError(std::string("config: malformed JSON: ") + e.what());
        }
        if (!cfg.is_object()) throw UsageError("config: expected a JSON object");
        auto subs = app.get_subcommands();
        CLI::App* sub = subs.empty() ? nullptr : subs.front();
        if (!sub && cfg.contains("command")) {
          if (!cfg["command"].is_string()) throw UsageError("config: field 'command' must be a string");
          sub = app.get_subcommand_ptr(cfg["command"].get<std::string>()).get();
          args.insert(args.begin(), cfg["command"].get<std::string>());
        }
        const auto extra = config_args(app, sub, cfg, std::filesystem::path(o.config).parent_path());
        if (sub) {
          // subcommand options must follow the subcommand name
          args.insert(args.end(), extra.begin(), extra.end());
        } else {
          args.insert(args.begin(), extra.begin(), extra.end());
        }
        app.clear();
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
      }
    } catch (const CLI::ParseError& e) {
      if (e.get_exit_code() == 0) return app.exit(e);
      app.exit(e);
      return kExitUsage;
    }
    if (seed_opt->count() == 0)
      if (const char* env = std::getenv("NEVANLAB_SEED")) {
        try {
          o.seed = std::stoull(env);
        } catch (const std::exception&) {
          throw UsageError(std::string("NEVANLAB_SEED is not an unsigned integer: ") + env);
        }
      }
    if (o.jobs > 0) set_default_jobs(o.jobs);

    auto subs = app.get_subcommands();
    if (subs.empty()) {
      std::cerr << app.help();
      return kExitUsage;
    }
    const std::string name = subs.front()->get_name();
    if (name == "functionals") return cmd_functionals(o);
    if (name == "fmt-check") return cmd_fmt(o);
    if (name == "cartan-check") return cmd_cartan(o);
    if (name == "prop21-check") return cmd_prop21(o);
    if (name == "theoremb-check") return cmd_theorem_b(o);
    if (name == "borel-partition") return cmd_borel(o);
    if (name == "genus") return cmd_genus(o);
    if (name == "smoothness") return cmd_smoothness(o);
    if (name == "general-position") return cmd_general_position(o);
    if (name == "grassmann") return cmd_grassmann(o);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUndecided;
  }
}
