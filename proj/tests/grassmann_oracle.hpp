#pragma once

// Brute-force dimension count for {V in Gr_{m,a} : dim V ∩ Q >= m - c} over
// F_q, Q = 0_b x F_q^{m-b}. Every subspace is enumerated by its reduced row
// echelon form; membership is decided by rank computations mod q.
//
// The pivot pattern of an echelon form fixes an affine cell of q^e points.
// The set's dimension is the largest e among cells that contain members; e is
// read off the per-cell member count at q = 2 and q = 3 and must be the same
// integer for both.

#include <cmath>
#include <optional>
#include <vector>

namespace oracle {

inline int rank_mod(std::vector<std::vector<int>> a, int q) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (a[r][c] % q) piv = r;
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    int inv = 1;
    while ((a[rank][c] * inv) % q != 1) ++inv;
    for (int& v : a[rank]) v = (v * inv) % q;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const int f = a[r][c];
      for (int k = 0; k < cols; ++k) a[r][k] = ((a[r][k] - f * a[rank][k]) % q + q) % q;
    }
    ++rank;
  }
  return rank;
}

struct CellCount {
  int free_entries = 0;
  long long members = 0;
};

// Per pivot pattern: number of free entries and member count.
inline std::vector<CellCount> count_cells(int m, int a, int b, int c, int q) {
  const int k = m - a;  // dim V
  std::vector<CellCount> out;
  std::vector<int> piv(k);
  for (int i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    std::vector<std::pair<int, int>> free;
    for (int r = 0; r < k; ++r)
      for (int col = piv[r] + 1; col < m; ++col) {
        bool is_piv = false;
        for (int p : piv) is_piv = is_piv || p == col;
        if (!is_piv) free.emplace_back(r, col);
      }
    CellCount cell{static_cast<int>(free.size()), 0};
    long long total = 1;
    for (std::size_t i = 0; i < free.size(); ++i) total *= q;
    for (long long code = 0; code < total; ++code) {
      std::vector<std::vector<int>> v(k, std::vector<int>(m, 0));
      for (int r = 0; r < k; ++r) v[r][piv[r]] = 1;
      long long x = code;
      for (const auto& [r, col] : free) {
        v[r][col] = static_cast<int>(x % q);
        x /= q;
      }
      auto stacked = v;
      for (int col = b; col < m; ++col) {
        std::vector<int> e(m, 0);
        e[col] = 1;
        stacked.push_back(e);
      }
      const int meet = k + (m - b) - rank_mod(stacked, q);
      if (meet >= m - c) ++cell.members;
    }
    out.push_back(cell);
    int i = k - 1;
    while (i >= 0 && piv[i] == m - k + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

// Dimension of the set, or nullopt when the counts at q = 2, 3 are not pure
// powers with a common exponent (which would make the fit meaningless).
inline std::optional<int> fitted_dimension(int m, int a, int b, int c) {
  const auto c2 = count_cells(m, a, b, c, 2);
  const auto c3 = count_cells(m, a, b, c, 3);
  int best = -1;
  for (std::size_t i = 0; i < c2.size(); ++i) {
    if (c2[i].members == 0 && c3[i].members == 0) continue;
    if (c2[i].members == 0 || c3[i].members == 0) return std::nullopt;
    const double e2 = std::log(static_cast<double>(c2[i].members)) / std::log(2.0);
    const double e3 = std::log(static_cast<double>(c3[i].members)) / std::log(3.0);
    const long r2 = std::lround(e2), r3 = std::lround(e3);
    if (std::abs(e2 - r2) > 1e-9 || std::abs(e3 - r3) > 1e-9 || r2 != r3) return std::nullopt;
    best = std::max(best, static_cast<int>(r2));
  }
  if (best < 0) return std::nullopt;
  return best;
}

}  // namespace oracle
