#include "nevanlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace nevanlab::io {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw std::invalid_argument(where + ": " + what);
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) bad(where, "expected a number");
  return j.get<double>();
}

Complex complex_value(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_array() || j.size() != 2) bad(where, "expected a number or an [re, im] pair");
  return {number(j[0], where + "[0]"), number(j[1], where + "[1]")};
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) bad(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) bad(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

std::string at(const std::string& where, const char* key) { return where.empty() ? key : where + "." + key; }

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) bad(at(where, it.key().c_str()), "unknown field");
  }
}

std::pair<int, TermMap> terms_from(const json& j, const std::string& where) {
  reject_unknown(j, {"vars", "terms"}, where);
  const json& v = field(j, "vars", where);
  if (!v.is_number_integer() || v.get<int>() < 1) bad(at(where, "vars"), "expected a positive integer");
  const int nv = v.get<int>();
  const json& ts = field(j, "terms", where);
  if (!ts.is_array()) bad(at(where, "terms"), "expected an array");
  TermMap terms;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string w = at(where, "terms") + "[" + std::to_string(i) + "]";
    reject_unknown(ts[i], {"exp", "re", "im"}, w);
    const json& e = field(ts[i], "exp", w);
    if (!e.is_array() || static_cast<int>(e.size()) != nv)
      bad(w + ".exp", "expected an array of " + std::to_string(nv) + " exponents");
    Exponent ex;
    for (const auto& x : e) {
      if (!x.is_number_integer() || x.get<int>() < 0) bad(w + ".exp", "exponents must be nonnegative integers");
      ex.push_back(x.get<int>());
    }
    const double re = ts[i].contains("re") ? number(ts[i]["re"], w + ".re") : 0.0;
    const double im = ts[i].contains("im") ? number(ts[i]["im"], w + ".im") : 0.0;
    terms[ex] += Complex(re, im);
  }
  return {nv, terms};
}

json terms_json(int nv, const TermMap& terms) {
  json ts = json::array();
  for (const auto& [e, c] : terms) ts.push_back({{"exp", e}, {"re", c.real()}, {"im", c.imag()}});
  return {{"vars", nv}, {"terms", ts}};
}

HomogeneousPolynomial homogeneous_from(const json& j, const std::string& where) {
  auto [nv, terms] = terms_from(j, where);
  int deg = -1;
  for (const auto& [e, c] : terms) {
    if (c == 0.0) continue;
    int s = 0;
    for (int x : e) s += x;
    if (deg >= 0 && s != deg) bad(at(where, "terms"), "terms of different total degree in a homogeneous polynomial");
    deg = s;
  }
  return HomogeneousPolynomial(nv, std::max(deg, 0), terms);
}

json doubles(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

std::vector<double> doubles_from(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

json point_json(const std::vector<Complex>& v) {
  json a = json::array();
  for (Complex c : v) a.push_back(complex_json(c));
  return a;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

AffinePolynomial affine_from_json(const std::string& text) {
  auto [nv, terms] = terms_from(parse(text), "");
  return AffinePolynomial(nv, terms);
}

HomogeneousPolynomial homogeneous_from_json(const std::string& text) { return homogeneous_from(parse(text), ""); }

std::vector<HomogeneousPolynomial> homogeneous_list_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_array()) bad("(top level)", "expected an array of polynomials");
  std::vector<HomogeneousPolynomial> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(homogeneous_from(j[i], "[" + std::to_string(i) + "]"));
  return out;
}

std::string to_json(const HomogeneousPolynomial& p) { return terms_json(p.num_vars(), p.terms()).dump(); }
std::string to_json(const AffinePolynomial& p) { return terms_json(p.num_vars(), p.terms()).dump(); }

ProjectiveCurve curve_from_json(const std::string& text, ProjectiveCurve::Check check) {
  const json j = parse(text);
  reject_unknown(j, {"components", "radius"}, "");
  const json& comps = field(j, "components", "");
  if (!comps.is_array()) bad("components", "expected an array");
  const double radius = number(field(j, "radius", ""), "radius");
  std::vector<ExpPolySum> out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string w = "components[" + std::to_string(i) + "]";
    reject_unknown(comps[i], {"terms"}, w);
    const json& ts = field(comps[i], "terms", w);
    if (!ts.is_array()) bad(w + ".terms", "expected an array");
    std::vector<ExpTerm> terms;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const std::string tw = w + ".terms[" + std::to_string(k) + "]";
      reject_unknown(ts[k], {"p", "q"}, tw);
      auto poly = [&](const char* key) {
        std::vector<Complex> c;
        if (!ts[k].contains(key)) return c;
        const json& a = ts[k][key];
        if (!a.is_array()) bad(tw + "." + key, "expected an array of coefficients");
        for (std::size_t l = 0; l < a.size(); ++l)
          c.push_back(complex_value(a[l], tw + "." + key + "[" + std::to_string(l) + "]"));
        return c;
      };
      auto p = poly("p");
      if (p.empty()) bad(tw + ".p", "missing");
      terms.push_back({UniPoly(p), UniPoly(poly("q"))});
    }
    out.emplace_back(std::move(terms));
  }
  return ProjectiveCurve(std::move(out), radius, check);
}

std::string to_json(const ProjectiveCurve& f) {
  json comps = json::array();
  for (const auto& h : f.components()) {
    json ts = json::array();
    for (const auto& t : h.terms()) {
      json p = json::array(), q = json::array();
      for (Complex c : t.p.coeffs()) p.push_back(complex_json(c));
      for (Complex c : t.q.coeffs()) q.push_back(complex_json(c));
      ts.push_back({{"p", p}, {"q", q}});
    }
    comps.push_back({{"terms", ts}});
  }
  return json{{"components", comps}, {"radius", f.radius()}}.dump();
}

std::string profile_csv(const NevanlinnaProfile& p) {
  std::string out = "r,T,N_trunc,prox,residual\n";
  char buf[160];
  for (std::size_t i = 0; i < p.r.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", p.r[i], p.T[i], p.N_trunc[i], p.prox[i],
                  p.residual[i]);
    out += buf;
  }
  return out;
}

std::string profile_json(const NevanlinnaProfile& p) {
  json meta{{"curve", p.curve_id},
            {"divisor", p.divisor_id},
            {"degree", p.degree},
            {"level", p.level == kInfiniteLevel ? json(nullptr) : json(p.level)}};
  json j{{"meta", meta},     {"r", doubles(p.r)},       {"T", doubles(p.T)},
         {"N_trunc", doubles(p.N_trunc)}, {"N_full", doubles(p.N_full)}, {"prox", doubles(p.prox)},
         {"residual", doubles(p.residual)}};
  return j.dump(2);
}

NevanlinnaProfile profile_from_json(const std::string& text) {
  const json j = parse(text);
  NevanlinnaProfile p;
  const json& meta = field(j, "meta", "");
  p.curve_id = meta.value("curve", "");
  p.divisor_id = meta.value("divisor", "");
  p.degree = meta.value("degree", 0);
  p.level = meta.contains("level") && !meta["level"].is_null() ? meta["level"].get<int>() : kInfiniteLevel;
  p.r = doubles_from(field(j, "r", ""), "r");
  p.T = doubles_from(field(j, "T", ""), "T");
  p.N_trunc = doubles_from(field(j, "N_trunc", ""), "N_trunc");
  p.N_full = doubles_from(field(j, "N_full", ""), "N_full");
  p.prox = doubles_from(field(j, "prox", ""), "prox");
  p.residual = doubles_from(field(j, "residual", ""), "residual");
  return p;
}

std::string partition_json(const BorelPartition& part, const BorelReport& rep) {
  json constants = json::array();
  for (const auto& [ij, c] : part.constants)
    constants.push_back({{"i", ij.first}, {"j", ij.second}, {"c", complex_json(c)}});
  json sums = json::array();
  for (Complex b : part.class_sums) sums.push_back(complex_json(b));
  json j{{"classes", part.classes},
         {"constants", constants},
         {"class_sums", sums},
         {"exceptional", part.exceptional_class ? json(*part.exceptional_class) : json(nullptr)},
         {"clauses", {{"i", rep.clause_i}, {"ii", rep.clause_ii}, {"iii", rep.clause_iii}, {"iv", rep.clause_iv}}},
         {"hypothesis", to_string(rep.hypothesis)},
         {"radius", rep.radius}};
  return j.dump(2);
}

std::string certificate_json(const SmoothnessCertificate& c, const std::string& object) {
  json j{{"object", object},
         {"mode", c.mode == SmoothnessMode::exact ? "exact" : "probabilistic"},
         {"verdict", to_string(c.smooth)},
         {"heuristic", c.heuristic},
         {"witnesses", c.witness.empty() ? json::array() : json::array({point_json(c.witness)})},
         {"seed", c.seed},
         {"detail", c.detail}};
  if (c.mode == SmoothnessMode::probabilistic) {
    j["min_gradient_norm"] = c.min_gradient_norm;
    j["starts"] = c.starts;
    j["converged"] = c.converged;
  }
  return j.dump(2);
}

std::string certificate_json(const GeneralPosition& g, const std::string& object) {
  json j{{"object", object},
         {"mode", "exact"},
         {"verdict", to_string(g.verdict)},
         {"witnesses", g.witness.empty() ? json::array() : json::array({point_json(g.witness)})},
         {"subset", g.subset},
         {"seed", nullptr},
         {"detail", g.detail}};
  return j.dump(2);
}

std::string genus_json(const GenusReport& g) {
  json sing = json::array();
  for (const auto& s : g.singularities)
    sing.push_back({{"point", point_json({s.point.begin(), s.point.end()})},
                    {"multiplicity", s.multiplicity},
                    {"tangents", s.tangents},
                    {"ordinary", s.ordinary},
                    {"at_infinity", s.at_infinity}});
  json j{{"status", to_string(g.status)},
         {"degree", g.degree},
         {"genus", g.genus ? json(*g.genus) : json(nullptr)},
         {"singularities", sing},
         {"detail", g.detail}};
  return j.dump(2);
}

}  // namespace nevanlab::io
