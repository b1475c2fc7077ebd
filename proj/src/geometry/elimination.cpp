#include "elimination.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "nevanlab/errors.hpp"

namespace nevanlab::elim {

std::uint64_t Field::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t Field::from_int(long long v) const {
  const long long m = static_cast<long long>(p);
  long long r = v % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL})
    if (n % q == 0) return n == q;
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  const Field f{n, 0};
  // bases 2, 3, 5, 7 are deterministic below 3.2e9
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL}) {
    std::uint64_t x = f.pow(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int k = 1; k < s && composite; ++k) {
      x = f.mul(x, x);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace

Field field(int k) {
  static std::mutex mu;
  static std::vector<Field> cache;
  std::lock_guard<std::mutex> lock(mu);
  std::uint64_t next = cache.empty() ? (1ULL << 31) - 1 : cache.back().p - 1;
  while (static_cast<int>(cache.size()) <= k) {
    while (!(next % 4 == 1 && is_prime(next))) --next;
    Field f{next, 0};
    for (std::uint64_t g = 2;; ++g) {
      if (f.pow(g, (next - 1) / 2) == next - 1) {
        f.sqrt_minus_one = f.pow(g, (next - 1) / 4);
        break;
      }
    }
    cache.push_back(f);
    --next;
  }
  return cache[k];
}

bool ModPoly::is_constant() const {
  if (terms.size() != 1) return terms.empty();
  const auto& e = terms.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
}

int ModPoly::degree_in(int var) const {
  int d = -1;
  for (const auto& [e, c] : terms) d = std::max(d, e[var]);
  return d;
}

int ModPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms) {
    int s = 0;
    for (int v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

std::optional<IntPoly> to_gaussian_integers(const AffinePolynomial& p) {
  for (long long s = 1; s <= 720; ++s) {
    IntPoly out{p.num_vars(), {}};
    bool ok = true;
    for (const auto& [e, c] : p.terms()) {
      const Complex v = static_cast<double>(s) * c;
      const double re = std::round(v.real()), im = std::round(v.imag());
      const double tol = 1e-9 * std::max(1.0, std::abs(v));
      if (std::abs(v.real() - re) > tol || std::abs(v.imag() - im) > tol || std::abs(v) > 1e15) {
        ok = false;
        break;
      }
      out.terms[e] = {static_cast<long long>(re), static_cast<long long>(im)};
    }
    if (ok) return out;
  }
  return std::nullopt;
}

ModPoly reduce(const IntPoly& p, const Field& f) {
  ModPoly out{p.num_vars, {}};
  for (const auto& [e, c] : p.terms) {
    const std::uint64_t v = f.add(f.from_int(c.first), f.mul(f.sqrt_minus_one, f.from_int(c.second)));
    if (v) out.terms[e] = v;
  }
  return out;
}

ModPoly strip_monomial_powers(const ModPoly& p) {
  if (p.terms.empty()) return p;
  std::vector<int> lo(p.num_vars, std::numeric_limits<int>::max());
  for (const auto& [e, c] : p.terms)
    for (int i = 0; i < p.num_vars; ++i) lo[i] = std::min(lo[i], e[i]);
  ModPoly out{p.num_vars, {}};
  for (const auto& [e, c] : p.terms) {
    Exponent r = e;
    for (int i = 0; i < p.num_vars; ++i)
      if (lo[i] > 1) r[i] -= lo[i] - 1;
    out.terms[r] = c;
  }
  return out;
}

namespace {

std::uint64_t det_mod(std::vector<std::vector<std::uint64_t>>& a, const Field& f) {
  const std::size_t n = a.size();
  std::uint64_t det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = f.sub(0, det);
    }
    det = f.mul(det, a[col][col]);
    const std::uint64_t inv = f.inv(a[col][col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      const std::uint64_t factor = f.mul(a[r][col], inv);
      for (std::size_t k = col; k < n; ++k) a[r][k] = f.sub(a[r][k], f.mul(factor, a[col][k]));
    }
  }
  return det;
}

// Monomial coefficients of the polynomial through (k, vals[k]), k = 0..L-1.
void interpolate_in_place(std::vector<std::uint64_t>& vals, const std::vector<std::uint64_t>& inv_small,
                          const Field& f) {
  const std::size_t L = vals.size();
  // divided differences on nodes 0..L-1: denominators are k - j, j < k
  for (std::size_t level = 1; level < L; ++level)
    for (std::size_t k = L - 1; k >= level; --k) {
      vals[k] = f.mul(f.sub(vals[k], vals[k - 1]), inv_small[level]);
      if (k == level) break;
    }
  // Newton form to monomial form
  std::vector<std::uint64_t> c(L, 0);
  c[0] = vals[L - 1];
  std::size_t deg = 0;
  for (std::size_t k = L - 1; k-- > 0;) {
    // c <- c * (x - k) + vals[k]
    const std::uint64_t node = static_cast<std::uint64_t>(k) % f.p;
    for (std::size_t j = deg + 1; j-- > 0;) {
      const std::uint64_t shifted = c[j];
      c[j + 1] = f.add(c[j + 1], shifted);
      c[j] = f.sub(0, f.mul(shifted, node));
    }
    ++deg;
    c[0] = f.add(c[0], vals[k]);
  }
  vals = std::move(c);
}

}  // namespace

ModPoly resultant(const ModPoly& a, const ModPoly& b, int var, const Field& f, int max_degree) {
  const int nv = a.num_vars;
  const int m = a.degree_in(var), n = b.degree_in(var);
  if (m < 1 || n < 1) throw std::invalid_argument("resultant: both polynomials must involve the variable");
  const int ta = a.total_degree(), tb = b.total_degree();

  std::vector<int> axes;
  std::vector<int> bound;
  for (int r = 0; r < nv; ++r) {
    if (r == var) continue;
    const int da = std::max(a.degree_in(r), 0), db = std::max(b.degree_in(r), 0);
    const long long sylvester = static_cast<long long>(n) * da + static_cast<long long>(m) * db;
    const long long bezout = static_cast<long long>(ta) * tb;
    const long long bd = std::min(sylvester, bezout);
    if (bd > max_degree) throw DegreeOverflow("resultant degree bound " + std::to_string(bd) + " exceeds cap");
    axes.push_back(r);
    bound.push_back(static_cast<int>(bd));
  }
  long long total = 1;
  for (int bd : bound) {
    total *= bd + 1;
    if (total > 4'000'000) throw DegreeOverflow("resultant interpolation grid too large");
  }

  int max_len = 1;
  for (int bd : bound) max_len = std::max(max_len, bd + 1);
  std::vector<std::uint64_t> inv_small(max_len + 1, 1);
  for (int k = 1; k <= max_len; ++k) inv_small[k] = f.inv(static_cast<std::uint64_t>(k));

  // power tables per axis: pw[axis][node][k]
  std::vector<std::vector<std::vector<std::uint64_t>>> pw(axes.size());
  for (std::size_t ax = 0; ax < axes.size(); ++ax) {
    const int top = std::max(a.degree_in(axes[ax]), b.degree_in(axes[ax]));
    pw[ax].assign(bound[ax] + 1, std::vector<std::uint64_t>(std::max(top, 0) + 1, 1));
    for (int node = 0; node <= bound[ax]; ++node)
      for (int k = 1; k <= top; ++k) pw[ax][node][k] = f.mul(pw[ax][node][k - 1], static_cast<std::uint64_t>(node));
  }

  auto fiber = [&](const ModPoly& p, int formal, const std::vector<int>& idx) {
    std::vector<std::uint64_t> c(formal + 1, 0);
    for (const auto& [e, v] : p.terms) {
      std::uint64_t t = v;
      for (std::size_t ax = 0; ax < axes.size() && t; ++ax) t = f.mul(t, pw[ax][idx[ax]][e[axes[ax]]]);
      c[e[var]] = f.add(c[e[var]], t);
    }
    return c;
  };

  const int size = m + n;
  std::vector<std::uint64_t> values(static_cast<std::size_t>(total));
  std::vector<int> idx(axes.size(), 0);
  for (long long flat = 0; flat < total; ++flat) {
    const auto ca = fiber(a, m, idx), cb = fiber(b, n, idx);
    std::vector<std::vector<std::uint64_t>> syl(size, std::vector<std::uint64_t>(size, 0));
    for (int row = 0; row < n; ++row)
      for (int k = 0; k <= m; ++k) syl[row][row + k] = ca[m - k];
    for (int row = 0; row < m; ++row)
      for (int k = 0; k <= n; ++k) syl[n + row][row + k] = cb[n - k];
    values[flat] = det_mod(syl, f);
    // row-major increment, last axis fastest
    for (std::size_t ax = axes.size(); ax-- > 0;) {
      if (++idx[ax] <= bound[ax]) break;
      idx[ax] = 0;
    }
  }

  // interpolate along each axis in turn
  long long stride = 1;
  for (std::size_t ax = axes.size(); ax-- > 0;) {
    const long long len = bound[ax] + 1;
    const long long block = stride * len;
    std::vector<std::uint64_t> line(len);
    for (long long outer = 0; outer < total; outer += block)
      for (long long inner = 0; inner < stride; ++inner) {
        for (long long k = 0; k < len; ++k) line[k] = values[outer + inner + k * stride];
        interpolate_in_place(line, inv_small, f);
        for (long long k = 0; k < len; ++k) values[outer + inner + k * stride] = line[k];
      }
    stride = block;
  }

  ModPoly out{nv, {}};
  std::fill(idx.begin(), idx.end(), 0);
  for (long long flat = 0; flat < total; ++flat) {
    if (values[flat]) {
      Exponent e(nv, 0);
      for (std::size_t ax = 0; ax < axes.size(); ++ax) e[axes[ax]] = idx[ax];
      out.terms[e] = values[flat];
    }
    for (std::size_t ax = axes.size(); ax-- > 0;) {
      if (++idx[ax] <= bound[ax]) break;
      idx[ax] = 0;
    }
  }
  return out;
}

namespace {

using Uni = std::vector<std::uint64_t>;

void trim(Uni& u) {
  while (!u.empty() && u.back() == 0) u.pop_back();
}

Uni as_univariate(const ModPoly& p, int var) {
  Uni u(std::max(p.degree_in(var), 0) + 1, 0);
  for (const auto& [e, c] : p.terms) u[e[var]] = c;
  trim(u);
  return u;
}

Uni gcd(Uni a, Uni b, const Field& f) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    const std::uint64_t inv = f.inv(b.back());
    while (a.size() >= b.size()) {
      const std::uint64_t q = f.mul(a.back(), inv);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] = f.sub(a[shift + k], f.mul(q, b[k]));
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a;
}

ModPoly monic(ModPoly p, const Field& f) {
  if (p.terms.empty()) return p;
  const std::uint64_t inv = f.inv(p.terms.begin()->second);
  for (auto& [e, c] : p.terms) c = f.mul(c, inv);
  return p;
}

}  // namespace

Outcome eliminate(std::vector<ModPoly> system, const std::vector<int>& order, const Field& f, int max_degree) {
  std::size_t level = 0;
  while (true) {
    std::vector<ModPoly> clean;
    for (auto& p : system) {
      if (p.is_zero()) continue;
      if (p.is_constant()) return Outcome::empty;
      ModPoly q = monic(strip_monomial_powers(p), f);
      if (std::none_of(clean.begin(), clean.end(), [&](const ModPoly& c) { return c.terms == q.terms; }))
        clean.push_back(std::move(q));
    }
    if (clean.empty() || level >= order.size()) return Outcome::possible;
    const int v = order[level];
    std::vector<ModPoly> with, without;
    for (auto& p : clean) (p.degree_in(v) > 0 ? with : without).push_back(std::move(p));

    const std::size_t remaining = order.size() - level - 1;
    if (with.size() <= 1) {
      if (without.empty()) return Outcome::possible;
      system = std::move(without);
      ++level;
      continue;
    }
    if (remaining == 0) {
      Uni g;
      for (const auto& p : with) {
        g = g.empty() ? as_univariate(p, v) : gcd(g, as_univariate(p, v), f);
        if (g.size() == 1) return Outcome::empty;
      }
      return Outcome::possible;
    }
    if (remaining == 1) {
      // last step: gcd of univariate resultants, stopping as soon as it is constant
      const int u = order[level + 1];
      Uni g;
      bool have = false;
      auto fold = [&](const ModPoly& p) {
        const Uni w = as_univariate(p, u);
        if (w.empty()) return false;
        g = have ? gcd(g, w, f) : w;
        have = true;
        return g.size() == 1;
      };
      for (const auto& p : without)
        if (fold(p)) return Outcome::empty;
      for (std::size_t i = 0; i < with.size(); ++i)
        for (std::size_t j = i + 1; j < with.size(); ++j)
          if (fold(resultant(with[i], with[j], v, f, max_degree))) return Outcome::empty;
      return Outcome::possible;
    }
    std::vector<ModPoly> next = std::move(without);
    for (std::size_t i = 0; i < with.size(); ++i)
      for (std::size_t j = i + 1; j < with.size(); ++j) {
        ModPoly r = resultant(with[i], with[j], v, f, max_degree);
        if (!r.is_zero()) next.push_back(std::move(r));
      }
    system = std::move(next);
    ++level;
  }
}

std::optional<std::pair<__int128, __int128>> eval_exact(const IntPoly& p,
                                                        const std::vector<std::pair<long long, long long>>& x) {
  long double bound = 0.0L;
  for (const auto& [e, c] : p.terms) {
    long double t = std::hypot(static_cast<long double>(c.first), static_cast<long double>(c.second));
    for (std::size_t i = 0; i < x.size(); ++i)
      t *= std::pow(std::hypot(static_cast<long double>(x[i].first), static_cast<long double>(x[i].second)) + 1.0L,
                    static_cast<long double>(e[i]));
    bound += t;
  }
  if (bound > 1e36L) return std::nullopt;
  __int128 re = 0, im = 0;
  for (const auto& [e, c] : p.terms) {
    __int128 tr = c.first, ti = c.second;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (int k = 0; k < e[i]; ++k) {
        const __int128 nr = tr * x[i].first - ti * x[i].second;
        const __int128 ni = tr * x[i].second + ti * x[i].first;
        tr = nr;
        ti = ni;
      }
    re += tr;
    im += ti;
  }
  return std::make_pair(re, im);
}

}  // namespace nevanlab::elim
